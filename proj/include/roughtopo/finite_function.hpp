#pragma once

#include <map>
#include <string>
#include <vector>

#include "roughtopo/subset.hpp"

namespace roughtopo {

/// Total map between two finite universes.
class FiniteFunction {
public:
    FiniteFunction() = default;

    FiniteFunction(Universe domain, Universe codomain, std::vector<std::size_t> images)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images))
    {
        if (images_.size() != domain_.size()) {
            throw PreconditionError("function must assign an image to every domain element");
        }
        for (auto y : images_) {
            if (y >= codomain_.size()) {
                throw PreconditionError("function image outside codomain");
            }
        }
    }

    /// Builds from label pairs; every domain label must appear exactly once.
    static FiniteFunction from_labels(Universe domain, Universe codomain,
                                      const std::map<std::string, std::string>& map)
    {
        std::vector<std::size_t> images(domain.size(), 0);
        std::vector<bool> seen(domain.size(), false);
        for (const auto& [x, y] : map) {
            const auto i = domain.index(x);
            images[i] = codomain.index(y);
            seen[i] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (!seen[i]) {
                throw PreconditionError("function has no image for '" + domain.label(i) + "'");
            }
        }
        return {std::move(domain), std::move(codomain), std::move(images)};
    }

    static FiniteFunction identity(const Universe& u)
    {
        std::vector<std::size_t> images(u.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
            images[i] = i;
        }
        return {u, u, std::move(images)};
    }

    static FiniteFunction constant(const Universe& domain, const Universe& codomain, std::size_t y)
    {
        return {domain, codomain, std::vector<std::size_t>(domain.size(), y)};
    }

    [[nodiscard]] const Universe& domain() const { return domain_; }
    [[nodiscard]] const Universe& codomain() const { return codomain_; }
    [[nodiscard]] const std::vector<std::size_t>& images() const { return images_; }
    [[nodiscard]] std::size_t operator()(std::size_t x) const { return images_.at(x); }

    [[nodiscard]] SubsetMask image(SubsetMask a) const
    {
        domain_.check(a);
        SubsetMask out = codomain_.empty_set();
        for (auto x : a.elements()) {
            out |= codomain_.singleton(images_[x]);
        }
        return out;
    }

    [[nodiscard]] SubsetMask preimage(SubsetMask b) const
    {
        codomain_.check(b);
        SubsetMask::Bits out = 0;
        for (std::size_t x = 0; x < images_.size(); ++x) {
            if (b.contains(images_[x])) {
                out |= SubsetMask::Bits{1} << x;
            }
        }
        return {out, domain_.size()};
    }

    [[nodiscard]] bool injective() const
    {
        std::vector<bool> hit(codomain_.size(), false);
        for (auto y : images_) {
            if (hit[y]) {
                return false;
            }
            hit[y] = true;
        }
        return true;
    }

    /// (this ∘ g)(z) = this(g(z)).
    [[nodiscard]] FiniteFunction after(const FiniteFunction& g) const
    {
        if (!(g.codomain() == domain_)) {
            throw PreconditionError("composition: codomain of the inner map differs from the domain");
        }
        std::vector<std::size_t> images(g.domain().size());
        for (std::size_t z = 0; z < images.size(); ++z) {
            images[z] = images_[g(z)];
        }
        return {g.domain(), codomain_, std::move(images)};
    }

private:
    Universe domain_;
    Universe codomain_;
    std::vector<std::size_t> images_;
};

}  // namespace roughtopo

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roughtopo/finite_function.hpp"
#include "roughtopo/subset.hpp"

namespace roughtopo {

enum class GenerationMode { subbase, base_union, rectangles, preimages };

inline std::string_view to_string(GenerationMode m)
{
    switch (m) {
    case GenerationMode::subbase: return "subbase";
    case GenerationMode::base_union: return "base-union";
    case GenerationMode::rectangles: return "rectangles";
    case GenerationMode::preimages: return "preimages";
    }
    return "?";
}

inline GenerationMode parse_generation_mode(std::string_view s)
{
    if (s == "subbase") return GenerationMode::subbase;
    if (s == "base-union") return GenerationMode::base_union;
    if (s == "rectangles") return GenerationMode::rectangles;
    if (s == "preimages") return GenerationMode::preimages;
    throw PreconditionError("unknown generation mode '" + std::string(s) + "'");
}

/// Outcome of a topology-axiom check. `witness` is the first set the family is missing.
struct TopologyCheck {
    bool ok = true;
    std::optional<SubsetMask> witness;
    std::string reason;

    explicit operator bool() const { return ok; }
};

inline TopologyCheck is_topology(const Universe& u, const SetFamily& family)
{
    if (family.width() != u.size()) {
        throw PreconditionError("family is over a universe of size " + std::to_string(family.width())
                                + ", expected " + std::to_string(u.size()));
    }
    const auto& m = family.members();
    if (!family.contains(u.empty_set())) {
        return {false, u.empty_set(), "missing the empty set"};
    }
    if (!family.contains(u.full_set())) {
        return {false, u.full_set(), "missing the universe"};
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (auto x = m[i] & m[j]; !family.contains(x)) {
                return {false, x, "not closed under intersection: " + u.format(m[i]) + " ∩ " + u.format(m[j])};
            }
        }
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (auto x = m[i] | m[j]; !family.contains(x)) {
                return {false, x, "not closed under union: " + u.format(m[i]) + " ∪ " + u.format(m[j])};
            }
        }
    }
    return {};
}

/// A finite space. Interior and closure are derived from the open family;
/// an unchecked instance may hold a family that fails the axioms.
class Topology {
public:
    Topology() = default;

    static Topology make(Universe u, SetFamily opens)
    {
        if (auto c = is_topology(u, opens); !c) {
            throw PreconditionError("not a topology: " + c.reason + " (missing " + u.format(*c.witness) + ")");
        }
        return Topology(std::move(u), std::move(opens), true);
    }

    static Topology unchecked(Universe u, SetFamily opens)
    {
        if (opens.width() != u.size()) {
            throw PreconditionError("family is over a different universe");
        }
        const bool ok = static_cast<bool>(is_topology(u, opens));
        return Topology(std::move(u), std::move(opens), ok);
    }

    static Topology discrete(Universe u)
    {
        auto all = powerset(u.size());
        return Topology(std::move(u), std::move(all), true);
    }

    static Topology indiscrete(Universe u)
    {
        SetFamily f(u.size(), {u.empty_set(), u.full_set()});
        return Topology(std::move(u), std::move(f), true);
    }

    [[nodiscard]] const Universe& universe() const { return universe_; }
    [[nodiscard]] const SetFamily& opens() const { return opens_; }
    [[nodiscard]] std::size_t size() const { return universe_.size(); }
    /// True when the open family satisfies the topology axioms.
    [[nodiscard]] bool valid() const { return valid_; }

    [[nodiscard]] bool is_open(SubsetMask a) const { return opens_.contains(a); }
    [[nodiscard]] bool is_closed(SubsetMask a) const { return opens_.contains(a.complement()); }

    /// Largest open subset of a.
    [[nodiscard]] SubsetMask interior(SubsetMask a) const
    {
        universe_.check(a);
        SubsetMask out = universe_.empty_set();
        for (const auto& g : opens_) {
            if (g.subset_of(a)) {
                out |= g;
            }
        }
        return out;
    }

    /// Smallest closed superset of a.
    [[nodiscard]] SubsetMask closure(SubsetMask a) const { return interior(a.complement()).complement(); }

    [[nodiscard]] SetFamily closed_sets() const { return opens_.complements(); }

    bool operator==(const Topology& o) const { return universe_ == o.universe_ && opens_ == o.opens_; }

private:
    Topology(Universe u, SetFamily opens, bool valid)
        : universe_(std::move(u)), opens_(std::move(opens)), valid_(valid)
    {
    }

    Universe universe_;
    SetFamily opens_;
    bool valid_ = false;
};

/// A generated family plus whether it satisfies the topology axioms.
struct GeneratedFamily {
    Universe universe;
    SetFamily family;
    GenerationMode mode;
    TopologyCheck check;

    [[nodiscard]] Topology topology() const { return Topology::make(universe, family); }
    [[nodiscard]] Topology as_space() const { return Topology::unchecked(universe, family); }
};

namespace detail {

inline SetFamily with_bounds(SetFamily f, const Universe& u)
{
    f.insert(u.empty_set());
    f.insert(u.full_set());
    return f;
}

inline SetFamily subbase_closure(const Universe& u, const SetFamily& seeds)
{
    auto inter = intersection_closure(seeds);
    return with_bounds(union_closure(inter), u);
}

}  // namespace detail

/// subbase: finite intersections then unions; base-union: unions only.
/// Both add ∅ and U. Rectangles belong to product_topology and preimages
/// to generate_topology_from_preimages.
inline GeneratedFamily generate_topology(const Universe& u, const SetFamily& seeds, GenerationMode mode)
{
    if (seeds.width() != u.size()) {
        throw PreconditionError("seed family is over a different universe");
    }
    SetFamily fam;
    switch (mode) {
    case GenerationMode::subbase:
        fam = detail::subbase_closure(u, seeds);
        break;
    case GenerationMode::base_union:
        fam = detail::with_bounds(union_closure(seeds), u);
        break;
    case GenerationMode::rectangles:
        throw PreconditionError("rectangles mode applies to product_topology only");
    case GenerationMode::preimages:
        throw PreconditionError("preimages mode needs functions; use generate_topology_from_preimages");
    }
    auto check = is_topology(u, fam);
    return {u, std::move(fam), mode, std::move(check)};
}

/// Topology on X generated by the subbase ∪_i {f_i⁻¹(G) : G ∈ τ_i}.
inline GeneratedFamily generate_topology_from_preimages(const Universe& x,
                                                        std::span<const FiniteFunction> functions,
                                                        std::span<const Topology> codomains)
{
    if (functions.size() != codomains.size()) {
        throw PreconditionError("preimages mode needs one codomain topology per function");
    }
    SetFamily seeds(x.size());
    for (std::size_t i = 0; i < functions.size(); ++i) {
        if (!(functions[i].domain() == x) || !(functions[i].codomain() == codomains[i].universe())) {
            throw PreconditionError("function " + std::to_string(i) + " does not map X into its codomain space");
        }
        for (const auto& g : codomains[i].opens()) {
            seeds.insert(functions[i].preimage(g));
        }
    }
    auto fam = detail::subbase_closure(x, seeds);
    auto check = is_topology(x, fam);
    return {x, std::move(fam), GenerationMode::preimages, std::move(check)};
}

// ---- products -------------------------------------------------------------

/// Universe of pairs "(x,y)", pair (i, j) at index i·|U2| + j.
inline Universe product_universe(const Universe& u1, const Universe& u2)
{
    if (u1.size() * u2.size() > kMaxUniverse) {
        throw CapacityError("product universe has " + std::to_string(u1.size() * u2.size())
                            + " elements; at most 64 are supported");
    }
    std::vector<std::string> labels;
    labels.reserve(u1.size() * u2.size());
    for (const auto& a : u1.labels()) {
        for (const auto& b : u2.labels()) {
            labels.push_back("(" + a + "," + b + ")");
        }
    }
    return Universe(std::move(labels));
}

inline std::size_t product_index(std::size_t i, std::size_t j, std::size_t n2) { return i * n2 + j; }

/// G × H as a subset of the product universe.
inline SubsetMask rectangle(SubsetMask g, SubsetMask h)
{
    const std::size_t n2 = h.width();
    SubsetMask::Bits bits = 0;
    for (auto i : g.elements()) {
        for (auto j : h.elements()) {
            bits |= SubsetMask::Bits{1} << product_index(i, j, n2);
        }
    }
    return {bits, g.width() * n2};
}

/// rectangles: the literal family {G×H}; subbase: the topology it generates.
inline GeneratedFamily product_topology(const Topology& t1, const Topology& t2, GenerationMode mode)
{
    auto u = product_universe(t1.universe(), t2.universe());
    SetFamily rects(u.size());
    for (const auto& g : t1.opens()) {
        for (const auto& h : t2.opens()) {
            rects.insert(rectangle(g, h));
        }
    }
    switch (mode) {
    case GenerationMode::rectangles: {
        auto check = is_topology(u, rects);
        return {std::move(u), std::move(rects), mode, std::move(check)};
    }
    case GenerationMode::subbase:
        return generate_topology(u, rects, GenerationMode::subbase);
    default:
        throw PreconditionError("product_topology supports rectangles and subbase modes");
    }
}

// ---- subspaces ------------------------------------------------------------

/// Re-indexes the elements of a ∩ q onto 0..|q|-1.
inline SubsetMask compress(SubsetMask a, SubsetMask q)
{
    SubsetMask::Bits out = 0;
    std::size_t k = 0;
    for (auto i : q.elements()) {
        if (a.contains(i)) {
            out |= SubsetMask::Bits{1} << k;
        }
        ++k;
    }
    return {out, q.count()};
}

/// Inverse of compress: lifts a subset of the subspace back into the parent universe.
inline SubsetMask expand(SubsetMask a, SubsetMask q)
{
    SubsetMask::Bits out = 0;
    std::size_t k = 0;
    for (auto i : q.elements()) {
        if (a.contains(k)) {
            out |= SubsetMask::Bits{1} << i;
        }
        ++k;
    }
    return {out, q.width()};
}

/// Topology {G ∩ Q : G ∈ τ} on the elements of Q (relabelled in index order).
inline Topology subspace_topology(const Topology& t, SubsetMask q)
{
    t.universe().check(q);
    std::vector<std::string> labels;
    for (auto i : q.elements()) {
        labels.push_back(t.universe().label(i));
    }
    SetFamily opens(q.count());
    for (const auto& g : t.opens()) {
        opens.insert(compress(g, q));
    }
    Universe sub(std::move(labels));
    if (t.valid()) {
        return Topology::make(std::move(sub), std::move(opens));
    }
    return Topology::unchecked(std::move(sub), std::move(opens));
}

/// Intersection of all opens containing x (the smallest open neighbourhood).
inline SubsetMask minimal_neighborhood(const Topology& t, std::size_t x)
{
    if (x >= t.size()) {
        throw PreconditionError("point outside the universe");
    }
    SubsetMask out = t.universe().full_set();
    for (const auto& g : t.opens()) {
        if (g.contains(x)) {
            out &= g;
        }
    }
    return out;
}

inline SubsetMask minimal_neighborhood(const Topology& t, std::string_view x)
{
    return minimal_neighborhood(t, t.universe().index(x));
}

// ---- roughness signatures -------------------------------------------------

struct RoughnessSignature {
    SubsetMask interior;
    SubsetMask closure;

    auto operator<=>(const RoughnessSignature&) const = default;
};

struct SignatureClass {
    RoughnessSignature signature;
    std::vector<SubsetMask> members;  // subsets of Q, in the parent universe
};

/// Partitions P(Q) by (interior, closure) taken in the subspace topology on Q.
/// Classes are ordered by signature; members ascending.
inline std::vector<SignatureClass> roughness_signature_classes(const Topology& t, SubsetMask q)
{
    t.universe().check(q);
    require_scan(q.count(), "roughness_signature_classes");
    const auto sub = subspace_topology(t, q);
    std::map<RoughnessSignature, std::vector<SubsetMask>> groups;
    for (const auto& r : powerset(q.count())) {
        RoughnessSignature sig{expand(sub.interior(r), q), expand(sub.closure(r), q)};
        groups[sig].push_back(expand(r, q));
    }
    std::vector<SignatureClass> out;
    out.reserve(groups.size());
    for (auto& [sig, members] : groups) {
        out.push_back({sig, std::move(members)});
    }
    return out;
}

}  // namespace roughtopo

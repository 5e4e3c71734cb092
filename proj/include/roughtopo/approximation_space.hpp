#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roughtopo/finite_function.hpp"
#include "roughtopo/finite_topology.hpp"

namespace roughtopo {

/// Relation between two finite universes; row x holds {y : (x, y) ∈ R}.
class BinaryRelation {
public:
    BinaryRelation() = default;

    BinaryRelation(Universe domain, Universe codomain)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), rows_(domain_.size(), codomain_.empty_set())
    {
    }

    /// Endorelation on one universe.
    explicit BinaryRelation(const Universe& u) : BinaryRelation(u, u) {}

    template <class Pairs>
    static BinaryRelation from_pairs(Universe domain, Universe codomain, const Pairs& pairs)
    {
        BinaryRelation r(std::move(domain), std::move(codomain));
        for (const auto& [x, y] : pairs) {
            r.add(r.domain_.index(x), r.codomain_.index(y));
        }
        return r;
    }

    static BinaryRelation identity(const Universe& u)
    {
        BinaryRelation r(u);
        for (std::size_t i = 0; i < u.size(); ++i) {
            r.add(i, i);
        }
        return r;
    }

    static BinaryRelation graph(const FiniteFunction& f)
    {
        BinaryRelation r(f.domain(), f.codomain());
        for (std::size_t x = 0; x < f.domain().size(); ++x) {
            r.add(x, f(x));
        }
        return r;
    }

    void add(std::size_t x, std::size_t y)
    {
        if (x >= domain_.size() || y >= codomain_.size()) {
            throw PreconditionError("relation pair outside its universes");
        }
        rows_[x] |= codomain_.singleton(y);
    }

    [[nodiscard]] const Universe& domain() const { return domain_; }
    [[nodiscard]] const Universe& codomain() const { return codomain_; }
    [[nodiscard]] bool is_endorelation() const { return domain_ == codomain_; }
    [[nodiscard]] bool holds(std::size_t x, std::size_t y) const { return rows_.at(x).contains(y); }
    [[nodiscard]] SubsetMask row(std::size_t x) const { return rows_.at(x); }

    [[nodiscard]] SubsetMask column(std::size_t y) const
    {
        SubsetMask out = domain_.empty_set();
        for (std::size_t x = 0; x < rows_.size(); ++x) {
            if (rows_[x].contains(y)) {
                out |= domain_.singleton(x);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> pairs() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t x = 0; x < rows_.size(); ++x) {
            for (auto y : rows_[x].elements()) {
                out.emplace_back(x, y);
            }
        }
        return out;
    }

    /// The pairs as a subset of domain × codomain.
    [[nodiscard]] SubsetMask as_product_subset() const
    {
        const auto n2 = codomain_.size();
        if (domain_.size() * n2 > kMaxUniverse) {
            throw CapacityError("relation does not fit a 64-element product universe");
        }
        SubsetMask::Bits bits = 0;
        for (auto [x, y] : pairs()) {
            bits |= SubsetMask::Bits{1} << product_index(x, y, n2);
        }
        return {bits, domain_.size() * n2};
    }

    bool operator==(const BinaryRelation&) const = default;

private:
    Universe domain_;
    Universe codomain_;
    std::vector<SubsetMask> rows_;
};

struct NeighborhoodTriple {
    SubsetMask right;
    SubsetMask left;
    SubsetMask meet;
};

inline NeighborhoodTriple neighborhoods(const BinaryRelation& rel, std::size_t x)
{
    if (!rel.is_endorelation()) {
        throw PreconditionError("neighborhoods need an endorelation");
    }
    if (x >= rel.domain().size()) {
        throw PreconditionError("point outside the universe");
    }
    const auto r = rel.row(x);
    const auto l = rel.column(x);
    return {r, l, r & l};
}

inline NeighborhoodTriple neighborhoods(const BinaryRelation& rel, std::string_view x)
{
    return neighborhoods(rel, rel.domain().index(x));
}

/// Opens are the sets A with meet(a) ⊆ A for every a ∈ A.
inline Topology relation_topology(const BinaryRelation& rel)
{
    if (!rel.is_endorelation()) {
        throw PreconditionError("relation topology needs an endorelation");
    }
    const auto& u = rel.domain();
    std::vector<SubsetMask> meets;
    for (std::size_t x = 0; x < u.size(); ++x) {
        meets.push_back(neighborhoods(rel, x).meet);
    }
    auto opens = scan_subsets(u.size(), [&](SubsetMask a) {
        for (auto x : a.elements()) {
            if (!meets[x].subset_of(a)) {
                return false;
            }
        }
        return true;
    });
    return Topology::make(u, std::move(opens));
}

// ---- granulations ---------------------------------------------------------

enum class GranulationFlavor { partition, cover, general };

inline std::string_view to_string(GranulationFlavor f)
{
    switch (f) {
    case GranulationFlavor::partition: return "partition";
    case GranulationFlavor::cover: return "cover";
    case GranulationFlavor::general: return "general";
    }
    return "?";
}

inline GranulationFlavor parse_granulation_flavor(std::string_view s)
{
    if (s == "partition") return GranulationFlavor::partition;
    if (s == "cover") return GranulationFlavor::cover;
    if (s == "general") return GranulationFlavor::general;
    throw PreconditionError("unknown granulation flavor '" + std::string(s) + "'");
}

/// Blocks over a universe, validated against the declared flavor.
class Granulation {
public:
    Granulation() = default;

    Granulation(Universe u, SetFamily blocks, GranulationFlavor flavor)
        : universe_(std::move(u)), blocks_(std::move(blocks)), flavor_(flavor)
    {
        if (blocks_.width() != universe_.size()) {
            throw PreconditionError("granulation blocks are over a different universe");
        }
        if (flavor_ == GranulationFlavor::general) {
            return;
        }
        SubsetMask seen = universe_.empty_set();
        for (const auto& b : blocks_) {
            if (flavor_ == GranulationFlavor::partition) {
                if (b.is_empty()) {
                    throw PreconditionError("partition has an empty block");
                }
                if (b.meets(seen)) {
                    throw PreconditionError("partition blocks overlap at " + universe_.format(b & seen));
                }
            }
            seen |= b;
        }
        if (!seen.is_full()) {
            throw PreconditionError(std::string(to_string(flavor_)) + " leaves " + universe_.format(seen.complement())
                                    + " in no block");
        }
    }

    /// Derives the strongest flavor the blocks satisfy.
    static Granulation infer(Universe u, SetFamily blocks)
    {
        SubsetMask seen = u.empty_set();
        bool disjoint = true;
        for (const auto& b : blocks) {
            if (b.is_empty() || b.meets(seen)) {
                disjoint = false;
            }
            seen |= b;
        }
        GranulationFlavor f = GranulationFlavor::general;
        if (seen.is_full()) {
            f = disjoint ? GranulationFlavor::partition : GranulationFlavor::cover;
        }
        return {std::move(u), std::move(blocks), f};
    }

    [[nodiscard]] const Universe& universe() const { return universe_; }
    [[nodiscard]] const SetFamily& blocks() const { return blocks_; }
    [[nodiscard]] GranulationFlavor flavor() const { return flavor_; }

    /// Union of the blocks containing x (∅ when x is in no block).
    [[nodiscard]] SubsetMask granule(std::size_t x) const
    {
        SubsetMask out = universe_.empty_set();
        for (const auto& b : blocks_) {
            if (b.contains(x)) {
                out |= b;
            }
        }
        return out;
    }

    [[nodiscard]] SubsetMask covered() const
    {
        SubsetMask out = universe_.empty_set();
        for (const auto& b : blocks_) {
            out |= b;
        }
        return out;
    }

private:
    Universe universe_;
    SetFamily blocks_;
    GranulationFlavor flavor_ = GranulationFlavor::general;
};

/// Granulation by the meet-neighbourhoods of an endorelation.
inline Granulation neighborhood_granulation(const BinaryRelation& rel)
{
    SetFamily blocks(rel.domain().size());
    for (std::size_t x = 0; x < rel.domain().size(); ++x) {
        if (auto m = neighborhoods(rel, x).meet; !m.is_empty()) {
            blocks.insert(m);
        }
    }
    return Granulation::infer(rel.domain(), std::move(blocks));
}

struct GranuleApproximation {
    SubsetMask lower;
    SubsetMask upper;
    SubsetMask uncovered;  // elements in no block; their granule is ∅
};

/// lower = {x : G_x ⊆ X}, upper = {x : G_x ∩ X ≠ ∅}.
inline GranuleApproximation granule_approximations(const Granulation& g, SubsetMask x)
{
    const auto& u = g.universe();
    u.check(x);
    GranuleApproximation r{u.empty_set(), u.empty_set(), g.covered().complement()};
    for (std::size_t e = 0; e < u.size(); ++e) {
        const auto gx = g.granule(e);
        if (gx.subset_of(x)) {
            r.lower |= u.singleton(e);
        }
        if (gx.meets(x)) {
            r.upper |= u.singleton(e);
        }
    }
    return r;
}

/// Every block is a singleton and every element is covered.
inline bool is_selective(const Granulation& g)
{
    for (const auto& b : g.blocks()) {
        if (b.count() != 1) {
            return false;
        }
    }
    return g.covered().is_full();
}

inline Granulation selective_granulation(const Universe& u)
{
    SetFamily blocks(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        blocks.insert(u.singleton(i));
    }
    return {u, std::move(blocks), GranulationFlavor::partition};
}

struct RelationProperties {
    bool functional = false;  // at most one image per element
    bool injective = false;
    bool surjective = false;
    bool total = false;  // at least one image per element
    bool reflexive = false;
    bool symmetric = false;
    bool transitive = false;
    bool equivalence = false;
};

/// Reflexive/symmetric/transitive are false for relations between different universes.
inline RelationProperties relation_properties(const BinaryRelation& rel)
{
    RelationProperties p;
    const auto n = rel.domain().size();
    const auto m = rel.codomain().size();
    p.functional = true;
    p.total = true;
    for (std::size_t x = 0; x < n; ++x) {
        const auto c = rel.row(x).count();
        p.functional = p.functional && c <= 1;
        p.total = p.total && c >= 1;
    }
    p.injective = true;
    p.surjective = true;
    for (std::size_t y = 0; y < m; ++y) {
        const auto c = rel.column(y).count();
        p.injective = p.injective && c <= 1;
        p.surjective = p.surjective && c >= 1;
    }
    if (rel.is_endorelation()) {
        p.reflexive = p.symmetric = p.transitive = true;
        for (std::size_t x = 0; x < n; ++x) {
            p.reflexive = p.reflexive && rel.holds(x, x);
            p.symmetric = p.symmetric && rel.row(x) == rel.column(x);
            for (auto y : rel.row(x).elements()) {
                p.transitive = p.transitive && rel.row(y).subset_of(rel.row(x));
            }
        }
        p.equivalence = p.reflexive && p.symmetric && p.transitive;
    }
    return p;
}

/// Blocks B1 × B2 over U1 × U2.
inline Granulation product_block_classes(const Granulation& g1, const Granulation& g2)
{
    auto u = product_universe(g1.universe(), g2.universe());
    SetFamily blocks(u.size());
    for (const auto& b1 : g1.blocks()) {
        for (const auto& b2 : g2.blocks()) {
            if (auto r = rectangle(b1, b2); !r.is_empty()) {
                blocks.insert(r);
            }
        }
    }
    auto flavor = GranulationFlavor::general;
    if (g1.flavor() == GranulationFlavor::partition && g2.flavor() == GranulationFlavor::partition) {
        flavor = GranulationFlavor::partition;
    } else if (g1.flavor() != GranulationFlavor::general && g2.flavor() != GranulationFlavor::general) {
        flavor = GranulationFlavor::cover;
    }
    return {std::move(u), std::move(blocks), flavor};
}

/// ((x1,x2),(y1,y2)) ∈ R1 × R2 iff (x1,y1) ∈ R1 and (x2,y2) ∈ R2.
inline BinaryRelation product_relation(const BinaryRelation& r1, const BinaryRelation& r2)
{
    if (!r1.is_endorelation() || !r2.is_endorelation()) {
        throw PreconditionError("product relation needs endorelations");
    }
    auto u = product_universe(r1.domain(), r2.domain());
    const auto n2 = r2.domain().size();
    BinaryRelation r(u);
    for (auto [x1, y1] : r1.pairs()) {
        for (auto [x2, y2] : r2.pairs()) {
            r.add(product_index(x1, x2, n2), product_index(y1, y2, n2));
        }
    }
    return r;
}

/// Quotient U/R of an equivalence relation.
inline Granulation classes_of(const BinaryRelation& rel)
{
    if (!relation_properties(rel).equivalence) {
        throw PreconditionError("classes need an equivalence relation");
    }
    SetFamily blocks(rel.domain().size());
    for (std::size_t x = 0; x < rel.domain().size(); ++x) {
        blocks.insert(rel.row(x));
    }
    return {rel.domain(), std::move(blocks), GranulationFlavor::partition};
}

}  // namespace roughtopo

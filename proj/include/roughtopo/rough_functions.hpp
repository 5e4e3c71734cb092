#pragma once

#include <algorithm>
#include <optional>
#include <string_view>
#include <vector>

#include "roughtopo/approximation_space.hpp"
#include "roughtopo/finite_function.hpp"
#include "roughtopo/finite_topology.hpp"

namespace roughtopo {

namespace detail {

inline void require_maps_between(const FiniteFunction& f, const Topology& tx, const Topology& ty)
{
    if (!(f.domain() == tx.universe())) {
        throw PreconditionError("function domain differs from the domain space");
    }
    if (!(f.codomain() == ty.universe())) {
        throw PreconditionError("function codomain differs from the codomain space");
    }
}

}  // namespace detail

// ---- rough transfer -------------------------------------------------------

enum class TransferClass { totally_rough, possibly_rough, exact, none };

inline std::string_view to_string(TransferClass c)
{
    switch (c) {
    case TransferClass::totally_rough: return "totally-rough";
    case TransferClass::possibly_rough: return "possibly-rough";
    case TransferClass::exact: return "exact";
    case TransferClass::none: return "none";
    }
    return "?";
}

/// One A ⊂ X with its approximations and the approximations of its images.
struct TransferRow {
    SubsetMask set;
    SubsetMask lower;        // lower_X(A)
    SubsetMask upper;        // upper_X(A)
    SubsetMask image_lower;  // lower_Y(f(lower_X(A)))
    SubsetMask image_upper;  // upper_Y(f(upper_X(A)))

    [[nodiscard]] bool rough() const { return lower != upper; }
    [[nodiscard]] bool image_rough() const { return image_lower != image_upper; }
};

struct RoughTransferVerdict {
    bool totally = false;
    bool possibly = false;
    bool exact = false;
    TransferClass label = TransferClass::none;
    std::optional<TransferRow> totally_counterexample;  // rough A with exact image pair
    std::optional<TransferRow> possibly_witness;        // rough A with rough image pair
    std::optional<TransferRow> exact_counterexample;    // exact A with rough image pair
};

inline TransferRow transfer_row(const FiniteFunction& f, const Topology& tx, const Topology& ty, SubsetMask a)
{
    const auto lo = tx.interior(a);
    const auto up = tx.closure(a);
    return {a, lo, up, ty.interior(f.image(lo)), ty.closure(f.image(up))};
}

/// Quantifies over every nonempty proper A ⊂ X, comparing lower_Y(f(lower_X A)) with upper_Y(f(upper_X A)).
inline RoughTransferVerdict classify_rough_transfer(const FiniteFunction& f, const Topology& tx, const Topology& ty)
{
    detail::require_maps_between(f, tx, ty);
    const auto n = tx.size();
    require_scan(n, "classify_rough_transfer");
    RoughTransferVerdict v;
    v.totally = true;
    v.exact = true;
    for (const auto& a : powerset(n)) {
        if (a.is_empty() || a.is_full()) {
            continue;
        }
        const auto row = transfer_row(f, tx, ty, a);
        if (row.rough()) {
            if (row.image_rough()) {
                v.possibly = true;
                if (!v.possibly_witness) v.possibly_witness = row;
            } else {
                v.totally = false;
                if (!v.totally_counterexample) v.totally_counterexample = row;
            }
        } else if (row.image_rough()) {
            v.exact = false;
            if (!v.exact_counterexample) v.exact_counterexample = row;
        }
    }
    if (v.possibly) {
        v.label = v.totally ? TransferClass::totally_rough : TransferClass::possibly_rough;
    } else {
        v.label = v.exact ? TransferClass::exact : TransferClass::none;
    }
    return v;
}

/// Same, with both spaces induced by relations.
inline RoughTransferVerdict classify_rough_transfer(const FiniteFunction& f, const BinaryRelation& rx,
                                                    const BinaryRelation& ry)
{
    return classify_rough_transfer(f, relation_topology(rx), relation_topology(ry));
}

// ---- topological rough continuity ----------------------------------------

enum class ContinuityClass { totally_rough_continuous, possibly_rough_continuous, exact_continuous, none };

inline std::string_view to_string(ContinuityClass c)
{
    switch (c) {
    case ContinuityClass::totally_rough_continuous: return "totally-rough-continuous";
    case ContinuityClass::possibly_rough_continuous: return "possibly-rough-continuous";
    case ContinuityClass::exact_continuous: return "exact-continuous";
    case ContinuityClass::none: return "none";
    }
    return "?";
}

/// One column of the evidence grid, for a nonempty A ⊆ Y.
struct EvidenceRow {
    SubsetMask set;
    SubsetMask interior;                  // int_Y(A)
    SubsetMask closure;                   // cl_Y(A)
    SubsetMask preimage_interior;         // f⁻¹(int A)
    SubsetMask preimage_closure;          // f⁻¹(cl A)
    SubsetMask interior_preimage_closure; // int_X(f⁻¹(cl A))
    SubsetMask closure_preimage_interior; // cl_X(f⁻¹(int A))

    [[nodiscard]] bool included() const { return interior_preimage_closure.subset_of(closure_preimage_interior); }
    [[nodiscard]] bool equal() const { return interior_preimage_closure == closure_preimage_interior; }
};

struct ContinuityVerdict {
    bool totally = false;
    bool possibly = false;
    bool exact = false;
    ContinuityClass label = ContinuityClass::none;
    std::vector<EvidenceRow> evidence;  // ascending bit order

    /// Rows ordered by cardinality, then bit order (singletons first, Y last).
    [[nodiscard]] std::vector<EvidenceRow> table_order() const
    {
        auto rows = evidence;
        std::stable_sort(rows.begin(), rows.end(),
                         [](const EvidenceRow& a, const EvidenceRow& b) { return a.set.count() < b.set.count(); });
        return rows;
    }
};

inline EvidenceRow evidence_row(const FiniteFunction& f, const Topology& tx, const Topology& ty, SubsetMask a)
{
    EvidenceRow r;
    r.set = a;
    r.interior = ty.interior(a);
    r.closure = ty.closure(a);
    r.preimage_interior = f.preimage(r.interior);
    r.preimage_closure = f.preimage(r.closure);
    r.interior_preimage_closure = tx.interior(r.preimage_closure);
    r.closure_preimage_interior = tx.closure(r.preimage_interior);
    return r;
}

/// Rows cover every nonempty A ⊆ Y, including Y itself.
inline ContinuityVerdict classify_rough_continuity(const FiniteFunction& f, const Topology& tx, const Topology& ty)
{
    detail::require_maps_between(f, tx, ty);
    require_scan(ty.size(), "classify_rough_continuity");
    ContinuityVerdict v;
    v.totally = true;
    v.exact = true;
    for (const auto& a : powerset(ty.size())) {
        if (a.is_empty()) {
            continue;
        }
        auto row = evidence_row(f, tx, ty, a);
        if (row.interior.subset_of(row.closure)) {
            v.totally = v.totally && row.included();
            v.possibly = v.possibly || row.included();
        }
        if (row.interior == row.closure) {
            v.exact = v.exact && row.equal();
        }
        v.evidence.push_back(row);
    }
    if (v.totally) {
        v.label = ContinuityClass::totally_rough_continuous;
    } else if (v.possibly) {
        v.label = ContinuityClass::possibly_rough_continuous;
    } else if (v.exact) {
        v.label = ContinuityClass::exact_continuous;
    }
    return v;
}

struct ContinuityEquivalences {
    bool open_preimages = false;     // f⁻¹(V) open for every open V
    bool closed_preimages = false;   // f⁻¹(cl F) closed for every F ⊆ Y
    bool pointwise = false;          // every open V ∋ f(x) has an open G ∋ x with f(G) ⊆ V
    bool closure_image = false;      // f(cl A) ⊆ cl f(A) for every A ⊆ X

    [[nodiscard]] bool agree() const
    {
        return open_preimages == closed_preimages && closed_preimages == pointwise && pointwise == closure_image;
    }
};

inline ContinuityEquivalences continuity_equivalences(const FiniteFunction& f, const Topology& tx, const Topology& ty)
{
    detail::require_maps_between(f, tx, ty);
    ContinuityEquivalences e;
    e.open_preimages = std::all_of(ty.opens().begin(), ty.opens().end(),
                                   [&](SubsetMask v) { return tx.is_open(f.preimage(v)); });

    require_scan(ty.size(), "continuity_equivalences");
    e.closed_preimages = true;
    for (const auto& b : powerset(ty.size())) {
        if (!tx.is_closed(f.preimage(ty.closure(b)))) {
            e.closed_preimages = false;
            break;
        }
    }

    e.pointwise = true;
    for (std::size_t x = 0; x < tx.size() && e.pointwise; ++x) {
        for (const auto& v : ty.opens()) {
            if (!v.contains(f(x))) {
                continue;
            }
            const bool found = std::any_of(tx.opens().begin(), tx.opens().end(), [&](SubsetMask g) {
                return g.contains(x) && f.image(g).subset_of(v);
            });
            if (!found) {
                e.pointwise = false;
                break;
            }
        }
    }

    require_scan(tx.size(), "continuity_equivalences");
    e.closure_image = true;
    for (const auto& a : powerset(tx.size())) {
        if (!f.image(tx.closure(a)).subset_of(ty.closure(f.image(a)))) {
            e.closure_image = false;
            break;
        }
    }
    return e;
}

// ---- minimal-neighbourhood notions ----------------------------------------

/// f_min(x): the minimal neighbourhood of f(x) in the codomain.
inline SubsetMask minimal_image(const FiniteFunction& f, const Topology& ty, std::size_t x)
{
    if (x >= f.domain().size()) {
        throw PreconditionError("point outside the domain");
    }
    if (!(f.codomain() == ty.universe())) {
        throw PreconditionError("function codomain differs from the codomain space");
    }
    return minimal_neighborhood(ty, f(x));
}

enum class Side { domain, codomain };

inline std::string_view to_string(Side s) { return s == Side::domain ? "domain" : "codomain"; }

struct PointRoughness {
    std::size_t point;     // x ∈ X
    SubsetMask neighborhood;  // N_min(x) or f_min(x)
    SubsetMask interior;
    SubsetMask closure;

    [[nodiscard]] bool rough() const { return interior != closure; }
};

struct RoughFunctionReport {
    Side side;
    bool holds = false;
    std::vector<PointRoughness> points;
    std::vector<std::size_t> failing;
};

/// Domain side: int N_min(x) ≠ cl N_min(x) at every x. Codomain side: the same for f_min(x) in Y.
inline RoughFunctionReport topological_rough_function_check(const FiniteFunction& f, const Topology& tx,
                                                            const Topology& ty, Side side)
{
    detail::require_maps_between(f, tx, ty);
    RoughFunctionReport r{side, true, {}, {}};
    for (std::size_t x = 0; x < tx.size(); ++x) {
        const auto& t = side == Side::domain ? tx : ty;
        const auto n = side == Side::domain ? minimal_neighborhood(tx, x) : minimal_image(f, ty, x);
        PointRoughness p{x, n, t.interior(n), t.closure(n)};
        if (!p.rough()) {
            r.holds = false;
            r.failing.push_back(x);
        }
        r.points.push_back(p);
    }
    return r;
}

struct PointContinuity {
    std::size_t point;
    SubsetMask neighborhood;           // N_min(x)
    SubsetMask image_neighborhood;     // N_min(f(x))
    SubsetMask preimage;               // f⁻¹(N_min(f(x)))

    [[nodiscard]] bool holds() const { return preimage.subset_of(neighborhood); }
};

struct MinContinuityReport {
    bool holds = false;
    std::vector<PointContinuity> points;
    std::vector<std::size_t> failing;
};

/// f⁻¹(N_min(f(x))) ⊆ N_min(x) at every x.
inline MinContinuityReport min_neighborhood_continuity_check(const FiniteFunction& f, const Topology& tx,
                                                             const Topology& ty)
{
    detail::require_maps_between(f, tx, ty);
    MinContinuityReport r{true, {}, {}};
    for (std::size_t x = 0; x < tx.size(); ++x) {
        const auto img = minimal_neighborhood(ty, f(x));
        PointContinuity p{x, minimal_neighborhood(tx, x), img, f.preimage(img)};
        if (!p.holds()) {
            r.holds = false;
            r.failing.push_back(x);
        }
        r.points.push_back(p);
    }
    return r;
}

// ---- graphs over product granulations -------------------------------------

struct GraphApproximation {
    Granulation blocks;
    SubsetMask graph;
    SubsetMask lower;
    SubsetMask upper;

    [[nodiscard]] bool rough() const { return lower != upper; }
};

/// lower = union of product blocks inside G(f); upper = union of product blocks meeting G(f).
inline GraphApproximation graph_approximations(const Granulation& g1, const Granulation& g2, const BinaryRelation& graph)
{
    if (!(graph.domain() == g1.universe()) || !(graph.codomain() == g2.universe())) {
        throw PreconditionError("graph is not a relation between the two granulated universes");
    }
    auto blocks = product_block_classes(g1, g2);
    const auto gm = graph.as_product_subset();
    auto lower = blocks.universe().empty_set();
    auto upper = lower;
    for (const auto& b : blocks.blocks()) {
        if (b.subset_of(gm)) {
            lower |= b;
        }
        if (b.meets(gm)) {
            upper |= b;
        }
    }
    return {std::move(blocks), gm, lower, upper};
}

struct ProductPointReport {
    std::size_t point;
    std::size_t image;
    std::vector<SubsetMask> members;    // family members containing f(point)
    std::vector<SubsetMask> preimages;  // f⁻¹ of each member
    std::optional<SubsetMask> failing;  // first member whose preimage is not in the family

    [[nodiscard]] bool holds() const { return !failing.has_value(); }
};

struct ProductContinuityReport {
    bool holds = false;
    std::vector<ProductPointReport> points;
};

/// At every point p, each family member V ∋ f(p) must have f⁻¹(V) in the family.
inline ProductContinuityReport product_rough_continuity_check(const FiniteFunction& f, const SetFamily& family)
{
    if (!(f.domain() == f.codomain())) {
        throw PreconditionError("product continuity needs a map of the product universe into itself");
    }
    if (family.width() != f.domain().size()) {
        throw PreconditionError("family is over a different universe");
    }
    ProductContinuityReport r{true, {}};
    for (std::size_t p = 0; p < f.domain().size(); ++p) {
        ProductPointReport pr{p, f(p), {}, {}, std::nullopt};
        for (const auto& v : family) {
            if (!v.contains(pr.image)) {
                continue;
            }
            const auto pre = f.preimage(v);
            pr.members.push_back(v);
            pr.preimages.push_back(pre);
            if (!pr.failing && !family.contains(pre)) {
                pr.failing = v;
            }
        }
        r.holds = r.holds && pr.holds();
        r.points.push_back(std::move(pr));
    }
    return r;
}

}  // namespace roughtopo

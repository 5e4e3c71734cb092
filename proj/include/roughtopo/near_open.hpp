#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "roughtopo/finite_topology.hpp"
#include "roughtopo/rational.hpp"

namespace roughtopo {

enum class NearKind {
    open,
    semi,
    pre,
    alpha,
    beta,
    regular,
    semi_regular,
    delta_closed,
    g_closed,
    sg_closed,
    gs_closed,
    alpha_g_closed,
    g_alpha_closed,
    g_alpha_star2_closed,
};

inline constexpr std::array<NearKind, 14> kAllNearKinds = {
    NearKind::open,           NearKind::semi,           NearKind::pre,
    NearKind::alpha,          NearKind::beta,           NearKind::regular,
    NearKind::semi_regular,   NearKind::delta_closed,   NearKind::g_closed,
    NearKind::sg_closed,      NearKind::gs_closed,      NearKind::alpha_g_closed,
    NearKind::g_alpha_closed, NearKind::g_alpha_star2_closed,
};

inline std::string_view to_string(NearKind k)
{
    switch (k) {
    case NearKind::open: return "open";
    case NearKind::semi: return "semi";
    case NearKind::pre: return "pre";
    case NearKind::alpha: return "alpha";
    case NearKind::beta: return "beta";
    case NearKind::regular: return "regular";
    case NearKind::semi_regular: return "semi-regular";
    case NearKind::delta_closed: return "delta-closed";
    case NearKind::g_closed: return "g-closed";
    case NearKind::sg_closed: return "sg-closed";
    case NearKind::gs_closed: return "gs-closed";
    case NearKind::alpha_g_closed: return "alpha-g-closed";
    case NearKind::g_alpha_closed: return "g-alpha-closed";
    case NearKind::g_alpha_star2_closed: return "g-alpha-star2-closed";
    }
    return "?";
}

inline NearKind parse_near_kind(std::string_view s)
{
    for (auto k : kAllNearKinds) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw PreconditionError("unknown near-open kind '" + std::string(s) + "'");
}

/// Kinds whose family is a class of generalized open sets (and so has an approximation pair).
inline constexpr bool is_open_type(NearKind k)
{
    switch (k) {
    case NearKind::open:
    case NearKind::semi:
    case NearKind::pre:
    case NearKind::alpha:
    case NearKind::beta:
    case NearKind::regular:
    case NearKind::semi_regular:
        return true;
    default:
        return false;
    }
}

/// Interpretation notes attached to reports for kinds whose textbook form was adopted.
inline std::optional<std::string_view> kind_note(NearKind k)
{
    switch (k) {
    case NearKind::regular:
        return "regular-open taken as A = int(cl(A))";
    case NearKind::semi_regular:
        return "semi-regular sets (semi-open and semi-closed) on the lower side, their complements on the upper side";
    default:
        return std::nullopt;
    }
}

/// Interior/closure operators of a family of generalized open sets:
/// interior = union of members inside A, closure = intersection of complements containing A.
class NearOperator {
public:
    NearOperator(SetFamily open, std::size_t width) : open_(std::move(open)), closed_(open_.complements()), width_(width) {}

    [[nodiscard]] const SetFamily& open_sets() const { return open_; }
    [[nodiscard]] const SetFamily& closed_sets() const { return closed_; }

    [[nodiscard]] SubsetMask interior(SubsetMask a) const
    {
        SubsetMask out = SubsetMask::empty(width_);
        for (const auto& g : open_) {
            if (g.subset_of(a)) {
                out |= g;
            }
        }
        return out;
    }

    [[nodiscard]] SubsetMask closure(SubsetMask a) const
    {
        SubsetMask out = SubsetMask::full(width_);
        for (const auto& f : closed_) {
            if (a.subset_of(f)) {
                out &= f;
            }
        }
        return out;
    }

private:
    SetFamily open_;
    SetFamily closed_;
    std::size_t width_;
};

namespace detail {

inline bool semi_open(const Topology& t, SubsetMask a) { return a.subset_of(t.closure(t.interior(a))); }
inline bool pre_open(const Topology& t, SubsetMask a) { return a.subset_of(t.interior(t.closure(a))); }
inline bool alpha_open(const Topology& t, SubsetMask a) { return a.subset_of(t.interior(t.closure(t.interior(a)))); }
inline bool beta_open(const Topology& t, SubsetMask a) { return a.subset_of(t.closure(t.interior(t.closure(a)))); }
inline bool regular_open(const Topology& t, SubsetMask a) { return a == t.interior(t.closure(a)); }

/// δ(A) = {x : int(cl G) meets A for every open G ∋ x}.
inline SubsetMask delta(const Topology& t, SubsetMask a)
{
    SubsetMask out = t.universe().empty_set();
    for (std::size_t x = 0; x < t.size(); ++x) {
        bool all = true;
        for (const auto& g : t.opens()) {
            if (g.contains(x) && !t.interior(t.closure(g)).meets(a)) {
                all = false;
                break;
            }
        }
        if (all) {
            out |= t.universe().singleton(x);
        }
    }
    return out;
}

/// closure_op(A) ⊆ bound(G) for every G in `supersets` containing A.
template <class Closure, class Bound>
bool generalized_closed(SubsetMask a, const SetFamily& supersets, Closure&& closure_op, Bound&& bound)
{
    const auto c = closure_op(a);
    for (const auto& g : supersets) {
        if (a.subset_of(g) && !c.subset_of(bound(g))) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Exact family of the given kind, by definition check over every subset of U.
inline SetFamily near_family(const Topology& t, NearKind kind)
{
    const std::size_t n = t.size();
    require_scan(n, "near_family");
    auto scan = [&](auto pred) { return scan_subsets(n, pred); };
    auto id = [](SubsetMask g) { return g; };

    switch (kind) {
    case NearKind::open:
        return t.opens();
    case NearKind::semi:
        return scan([&](SubsetMask a) { return detail::semi_open(t, a); });
    case NearKind::pre:
        return scan([&](SubsetMask a) { return detail::pre_open(t, a); });
    case NearKind::alpha:
        return scan([&](SubsetMask a) { return detail::alpha_open(t, a); });
    case NearKind::beta:
        return scan([&](SubsetMask a) { return detail::beta_open(t, a); });
    case NearKind::regular:
        return scan([&](SubsetMask a) { return detail::regular_open(t, a); });
    case NearKind::semi_regular:
        return scan([&](SubsetMask a) {
            return detail::semi_open(t, a) && detail::semi_open(t, a.complement());
        });
    case NearKind::delta_closed:
        return scan([&](SubsetMask a) { return a == detail::delta(t, a); });
    case NearKind::g_closed:
        return scan([&](SubsetMask a) {
            return detail::generalized_closed(a, t.opens(), [&](SubsetMask x) { return t.closure(x); }, id);
        });
    case NearKind::sg_closed: {
        const NearOperator semi(near_family(t, NearKind::semi), n);
        return scan([&](SubsetMask a) {
            return detail::generalized_closed(a, semi.open_sets(), [&](SubsetMask x) { return semi.closure(x); }, id);
        });
    }
    case NearKind::gs_closed: {
        const NearOperator semi(near_family(t, NearKind::semi), n);
        return scan([&](SubsetMask a) {
            return detail::generalized_closed(a, t.opens(), [&](SubsetMask x) { return semi.closure(x); }, id);
        });
    }
    case NearKind::alpha_g_closed: {
        const NearOperator alpha(near_family(t, NearKind::alpha), n);
        return scan([&](SubsetMask a) {
            return detail::generalized_closed(a, t.opens(), [&](SubsetMask x) { return alpha.closure(x); }, id);
        });
    }
    case NearKind::g_alpha_closed: {
        const NearOperator alpha(near_family(t, NearKind::alpha), n);
        return scan([&](SubsetMask a) {
            return detail::generalized_closed(a, alpha.open_sets(), [&](SubsetMask x) { return alpha.closure(x); }, id);
        });
    }
    case NearKind::g_alpha_star2_closed: {
        const auto alpha = near_family(t, NearKind::alpha);
        return scan([&](SubsetMask a) {
            return detail::generalized_closed(
                a, alpha, [&](SubsetMask x) { return t.closure(x); },
                [&](SubsetMask g) { return t.closure(t.interior(g)); });
        });
    }
    }
    throw PreconditionError("unhandled near-open kind");
}

/// Operator pair of an open-type kind.
inline NearOperator near_operator(const Topology& t, NearKind kind)
{
    if (!is_open_type(kind)) {
        throw PreconditionError("no approximation operators for generalized-closed kind '"
                                + std::string(to_string(kind)) + "'");
    }
    return {near_family(t, kind), t.size()};
}

enum class UpperConvention { superset, meets };

inline std::string_view to_string(UpperConvention c) { return c == UpperConvention::superset ? "superset" : "meets"; }

inline UpperConvention parse_upper_convention(std::string_view s)
{
    if (s == "superset") return UpperConvention::superset;
    if (s == "meets") return UpperConvention::meets;
    throw PreconditionError("unknown upper convention '" + std::string(s) + "'");
}

struct ApproximationPair {
    SubsetMask lower;
    SubsetMask upper;
    NearKind kind;
    UpperConvention convention;
};

/// lower = ∪{G kind-open : G ⊆ X}; upper = ∩{F kind-closed : X ⊆ F} (superset)
/// or ∩{F kind-closed : F ∩ X ≠ ∅} (meets).
inline ApproximationPair near_approximations(const Topology& t, NearKind kind, SubsetMask x,
                                             UpperConvention convention = UpperConvention::superset)
{
    t.universe().check(x);
    const auto op = near_operator(t, kind);
    SubsetMask upper = t.universe().full_set();
    if (convention == UpperConvention::superset) {
        upper = op.closure(x);
    } else {
        for (const auto& f : op.closed_sets()) {
            if (f.meets(x)) {
                upper &= f;
            }
        }
    }
    return {op.interior(x), upper, kind, convention};
}

struct RegionsReport {
    SubsetMask positive;
    SubsetMask negative;
    SubsetMask boundary;
    Rational accuracy;
};

inline RegionsReport rough_regions(SubsetMask lower, SubsetMask upper)
{
    if (upper.is_empty()) {
        throw PreconditionError("empty upper approximation: accuracy is undefined");
    }
    if (!lower.subset_of(upper)) {
        throw PreconditionError("lower approximation is not contained in the upper approximation");
    }
    return {lower, upper.complement(), upper - lower,
            Rational(static_cast<std::int64_t>(lower.count()), static_cast<std::int64_t>(upper.count()))};
}

// ---- semi-rough pairs -----------------------------------------------------

struct SemiRoughCheck {
    bool ok = false;
    std::optional<SubsetMask> witness;   // an S satisfying Semi-4
    std::optional<std::string> violated; // first failing condition

    explicit operator bool() const { return ok; }
};

/// Semi-4 for a given S: sint(S) = ∅, S ⊆ Q − scl(P), Q − scl(P) ⊆ scl(S).
inline bool satisfies_semi4(const NearOperator& semi, SubsetMask p, SubsetMask q, SubsetMask s)
{
    const auto gap = q - semi.closure(p);
    return semi.interior(s).is_empty() && s.subset_of(gap) && gap.subset_of(semi.closure(s));
}

inline SemiRoughCheck semi_rough_pair_check(const Topology& t, SubsetMask p, SubsetMask q)
{
    t.universe().check(p);
    t.universe().check(q);
    const NearOperator semi(near_family(t, NearKind::semi), t.size());
    if (!semi.open_sets().contains(p)) {
        return {false, std::nullopt, "Semi-1: P is not semi-open"};
    }
    if (!semi.closed_sets().contains(q)) {
        return {false, std::nullopt, "Semi-2: Q is not semi-closed"};
    }
    if (!p.subset_of(q)) {
        return {false, std::nullopt, "Semi-3: P is not contained in Q"};
    }
    const auto gap = q - semi.closure(p);
    std::optional<SubsetMask> found;
    for_each_subset(gap, [&](SubsetMask s) {
        if (!found && satisfies_semi4(semi, p, q, s)) {
            found = s;
        }
    });
    if (!found) {
        return {false, std::nullopt, "Semi-4: no S with empty semi-interior whose semi-closure covers Q − scl(P)"};
    }
    return {true, found, std::nullopt};
}

struct SemiRoughPair {
    SubsetMask p;
    SubsetMask q;
    SubsetMask witness_s;
};

/// True when every semi-open set is semi-closed.
inline bool semi_open_sets_are_semi_closed(const Topology& t)
{
    const auto semi = near_family(t, NearKind::semi);
    return semi == semi.complements();
}

/// (semi-interior(A), semi-closure(A)) with witness S = A − scl(sint A).
inline SemiRoughPair semi_rough_pair_of(const Topology& t, SubsetMask a)
{
    t.universe().check(a);
    if (!semi_open_sets_are_semi_closed(t)) {
        throw PreconditionError("lemma hypothesis not satisfied: some semi-open set is not semi-closed");
    }
    const NearOperator semi(near_family(t, NearKind::semi), t.size());
    const auto p = semi.interior(a);
    const auto q = semi.closure(a);
    return {p, q, a - semi.closure(p)};
}

/// Subsets of U grouped by (semi-interior, semi-closure).
inline std::vector<SignatureClass> semi_signature_classes(const Topology& t)
{
    const NearOperator semi(near_family(t, NearKind::semi), t.size());
    std::map<RoughnessSignature, std::vector<SubsetMask>> groups;
    for (const auto& a : powerset(t.size())) {
        groups[{semi.interior(a), semi.closure(a)}].push_back(a);
    }
    std::vector<SignatureClass> out;
    for (auto& [sig, members] : groups) {
        out.push_back({sig, std::move(members)});
    }
    return out;
}

// ---- rough pairs restricted to subspaces ----------------------------------

/// Rough-pair conditions of (lower, upper) in a space: lower open, upper closed,
/// lower ⊆ upper, and some S with int(S) = ∅, S ⊆ upper − cl(lower) ⊆ cl(S).
struct RoughPairConditions {
    bool lower_open = false;
    bool upper_closed = false;
    bool lower_within_upper = false;
    std::optional<SubsetMask> witness_s;

    [[nodiscard]] bool holds() const { return lower_open && upper_closed && lower_within_upper && witness_s.has_value(); }
};

namespace detail {

/// Some S ⊆ gap with int(S) = ∅ and gap ⊆ cl(S). In a finite space x ∈ cl(S) iff the
/// minimal neighbourhood of x meets S, so this is a hitting-set search; interior is
/// monotone, so sets with nonempty interior are not extended.
inline std::optional<SubsetMask> dense_witness(const Topology& t, SubsetMask gap)
{
    std::vector<SubsetMask> need;
    for (auto x : gap.elements()) {
        need.push_back(minimal_neighborhood(t, x) & gap);
    }
    std::optional<SubsetMask> found;
    std::unordered_set<SubsetMask::Bits> seen;
    std::function<void(SubsetMask)> go = [&](SubsetMask s) {
        if (found || !seen.insert(s.bits()).second || !t.interior(s).is_empty()) {
            return;
        }
        const SubsetMask* best = nullptr;
        for (const auto& n : need) {
            if (!n.meets(s) && (best == nullptr || n.count() < best->count())) {
                best = &n;
            }
        }
        if (best == nullptr) {
            found = s;
            return;
        }
        for (auto y : best->elements()) {
            go(s | SubsetMask::singleton(y, s.width()));
        }
    };
    go(SubsetMask::empty(gap.width()));
    return found;
}

}  // namespace detail

inline RoughPairConditions rough_pair_conditions(const Topology& t, SubsetMask lower, SubsetMask upper)
{
    RoughPairConditions c;
    c.lower_open = t.is_open(lower);
    c.upper_closed = t.is_closed(upper);
    c.lower_within_upper = lower.subset_of(upper);
    c.witness_s = detail::dense_witness(t, upper - t.closure(lower));
    return c;
}

struct RelativePairReport {
    SubsetMask lower;  // lower ∩ Q
    SubsetMask upper;  // upper ∩ Q
    bool q_closed = false;
    RoughPairConditions source;                    // the pair in the full space
    std::optional<RoughPairConditions> relative;   // in the subspace, when Q is closed
    std::optional<SubsetMask> witness_p;           // P ⊆ Q with int'(P) = lower ∩ Q, cl'(P) = upper ∩ Q
};

/// Restricts a rough pair to the subspace on Q. Masks in the report are over the parent universe;
/// subspace interior/closure are used for the relative conditions and the P search.
inline RelativePairReport restrict_rough_pair(const Topology& t, SubsetMask lower, SubsetMask upper, SubsetMask q)
{
    const auto& u = t.universe();
    u.check(lower);
    u.check(upper);
    u.check(q);
    if (!t.is_open(lower)) {
        throw PreconditionError("lower approximation " + u.format(lower) + " is not open");
    }
    if (!t.is_closed(upper)) {
        throw PreconditionError("upper approximation " + u.format(upper) + " is not closed");
    }
    if (!lower.subset_of(upper)) {
        throw PreconditionError("lower approximation is not contained in the upper approximation");
    }

    RelativePairReport r;
    r.lower = lower & q;
    r.upper = upper & q;
    r.q_closed = t.is_closed(q);
    r.source = rough_pair_conditions(t, lower, upper);

    const auto sub = subspace_topology(t, q);
    const auto rl = compress(r.lower, q);
    const auto ru = compress(r.upper, q);
    if (r.q_closed) {
        auto c = rough_pair_conditions(sub, rl, ru);
        if (c.witness_s) {
            c.witness_s = expand(*c.witness_s, q);
        }
        r.relative = c;
    }

    // int'(P) ⊆ P ⊆ cl'(P), so P ranges over rl ∪ S with S ⊆ ru − rl.
    const auto free = ru - rl;
    require_scan(free.count(), "relative pair witness search");
    for_each_subset(free, [&](SubsetMask s) {
        const auto p = rl | s;
        if (!r.witness_p && sub.interior(p) == rl && sub.closure(p) == ru) {
            r.witness_p = expand(p, q);
        }
    });
    return r;
}

}  // namespace roughtopo

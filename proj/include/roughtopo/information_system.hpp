#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "roughtopo/approximation_space.hpp"
#include "roughtopo/finite_function.hpp"
#include "roughtopo/finite_topology.hpp"
#include "roughtopo/rational.hpp"
#include "roughtopo/rough_functions.hpp"

namespace roughtopo {

using Value = std::variant<Rational, std::string>;

inline std::string to_string(const Value& v)
{
    if (const auto* r = std::get_if<Rational>(&v)) {
        return to_string(*r);
    }
    return std::get<std::string>(v);
}

/// Objects × condition attributes, plus one decision attribute.
/// Attribute sets are SubsetMasks over attributes().
class DecisionTable {
public:
    DecisionTable() = default;

    DecisionTable(Universe objects, Universe attributes, std::string decision,
                  std::vector<std::vector<Value>> conditions, std::vector<Value> decisions)
        : objects_(std::move(objects)), attributes_(std::move(attributes)), decision_(std::move(decision)),
          conditions_(std::move(conditions)), decisions_(std::move(decisions))
    {
        if (conditions_.size() != objects_.size() || decisions_.size() != objects_.size()) {
            throw PreconditionError("decision table needs one row per object");
        }
        numeric_.assign(attributes_.size(), true);
        for (const auto& row : conditions_) {
            if (row.size() != attributes_.size()) {
                throw PreconditionError("decision table row has the wrong number of attribute values");
            }
            for (std::size_t a = 0; a < row.size(); ++a) {
                numeric_[a] = numeric_[a] && std::holds_alternative<Rational>(row[a]);
            }
        }
    }

    [[nodiscard]] const Universe& objects() const { return objects_; }
    [[nodiscard]] const Universe& attributes() const { return attributes_; }
    [[nodiscard]] const std::string& decision_name() const { return decision_; }
    [[nodiscard]] std::size_t size() const { return objects_.size(); }
    [[nodiscard]] const Value& value(std::size_t x, std::size_t a) const { return conditions_.at(x).at(a); }
    [[nodiscard]] const Value& decision(std::size_t x) const { return decisions_.at(x); }
    [[nodiscard]] bool numeric(std::size_t a) const { return numeric_.at(a); }
    [[nodiscard]] SubsetMask all_attributes() const { return attributes_.full_set(); }

    void set_value(std::size_t x, std::size_t a, Value v)
    {
        conditions_.at(x).at(a) = std::move(v);
        numeric_[a] = true;
        for (const auto& row : conditions_) {
            numeric_[a] = numeric_[a] && std::holds_alternative<Rational>(row[a]);
        }
    }

    [[nodiscard]] bool agree_on(std::size_t x, std::size_t y, SubsetMask b) const
    {
        attributes_.check(b);
        for (auto a : b.elements()) {
            if (conditions_[x][a] != conditions_[y][a]) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] SubsetMask differing(std::size_t x, std::size_t y) const
    {
        SubsetMask out = attributes_.empty_set();
        for (std::size_t a = 0; a < attributes_.size(); ++a) {
            if (conditions_[x][a] != conditions_[y][a]) {
                out |= attributes_.singleton(a);
            }
        }
        return out;
    }

private:
    Universe objects_;
    Universe attributes_;
    std::string decision_;
    std::vector<std::vector<Value>> conditions_;
    std::vector<Value> decisions_;
    std::vector<bool> numeric_;
};

/// Partition of the objects by equal decision value.
inline Granulation decision_classes(const DecisionTable& t)
{
    SetFamily blocks(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        SubsetMask c = t.objects().empty_set();
        for (std::size_t y = 0; y < t.size(); ++y) {
            if (t.decision(x) == t.decision(y)) {
                c |= t.objects().singleton(y);
            }
        }
        blocks.insert(c);
    }
    return {t.objects(), std::move(blocks), GranulationFlavor::partition};
}

struct PositiveRegion {
    Granulation classes;  // U/IND(B)
    SubsetMask positive;  // POS_B(D)
};

inline PositiveRegion indiscernibility_positive_region(const DecisionTable& t, SubsetMask b)
{
    t.attributes().check(b);
    const auto& u = t.objects();
    SetFamily blocks(u.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        SubsetMask c = u.empty_set();
        for (std::size_t y = 0; y < t.size(); ++y) {
            if (t.agree_on(x, y, b)) {
                c |= u.singleton(y);
            }
        }
        blocks.insert(c);
    }
    const auto d = decision_classes(t);
    SubsetMask pos = u.empty_set();
    for (const auto& c : blocks) {
        if (std::any_of(d.blocks().begin(), d.blocks().end(), [&](SubsetMask k) { return c.subset_of(k); })) {
            pos |= c;
        }
    }
    return {Granulation(u, std::move(blocks), GranulationFlavor::partition), pos};
}

/// B′ when POS_B(D) = POS_B′(D), otherwise C.
inline SubsetMask projection_function(const DecisionTable& t, SubsetMask b, SubsetMask b_prime)
{
    t.attributes().check(b);
    t.attributes().check(b_prime);
    if (!b_prime.subset_of(b)) {
        throw PreconditionError("projection needs B' contained in B");
    }
    if (indiscernibility_positive_region(t, b).positive == indiscernibility_positive_region(t, b_prime).positive) {
        return b_prime;
    }
    return t.all_attributes();
}

// ---- discernibility -------------------------------------------------------

/// n×n cells; std::nullopt is λ (the pair need not be discerned).
class DiscernibilityMatrix {
public:
    DiscernibilityMatrix(Universe attributes, std::size_t n)
        : attributes_(std::move(attributes)), n_(n), cells_(n * n)
    {
    }

    [[nodiscard]] const Universe& attributes() const { return attributes_; }
    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] const std::optional<SubsetMask>& cell(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j); }

    void set(std::size_t i, std::size_t j, std::optional<SubsetMask> c)
    {
        cells_.at(i * n_ + j) = c;
        cells_.at(j * n_ + i) = c;
    }

private:
    Universe attributes_;
    std::size_t n_;
    std::vector<std::optional<SubsetMask>> cells_;
};

/// m_ij = attributes where x_i and x_j differ, when their decisions differ and one of them
/// lies in POS_C(D); λ otherwise.
inline DiscernibilityMatrix discernibility_matrix(const DecisionTable& t)
{
    const auto pos = indiscernibility_positive_region(t, t.all_attributes()).positive;
    DiscernibilityMatrix m(t.attributes(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (t.decision(i) != t.decision(j) && (pos.contains(i) || pos.contains(j))) {
                m.set(i, j, t.differing(i, j));
            }
        }
    }
    return m;
}

/// Conjunction of clauses, each a disjunction of attributes.
struct Cnf {
    Universe attributes;
    std::vector<SubsetMask> clauses;  // by size, then bit order; no duplicates
    bool unsatisfiable = false;       // some clause is empty

    void normalize()
    {
        std::sort(clauses.begin(), clauses.end(), [](SubsetMask a, SubsetMask b) {
            return a.count() != b.count() ? a.count() < b.count() : a < b;
        });
        clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
        unsatisfiable = std::any_of(clauses.begin(), clauses.end(), [](SubsetMask c) { return c.is_empty(); });
    }
};

inline Cnf discernibility_function(const DiscernibilityMatrix& m)
{
    Cnf f{m.attributes(), {}, false};
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (const auto& c = m.cell(i, j)) {
                f.clauses.push_back(*c);
            }
        }
    }
    f.normalize();
    return f;
}

/// Drops every clause that contains another clause.
inline std::vector<SubsetMask> absorb(std::vector<SubsetMask> sets)
{
    std::sort(sets.begin(), sets.end(), [](SubsetMask a, SubsetMask b) {
        return a.count() != b.count() ? a.count() < b.count() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<SubsetMask> kept;
    for (const auto& s : sets) {
        if (std::none_of(kept.begin(), kept.end(), [&](SubsetMask k) { return k.subset_of(s); })) {
            kept.push_back(s);
        }
    }
    return kept;
}

/// Lexicographic order on ascending element lists.
inline bool lexicographic_less(SubsetMask a, SubsetMask b)
{
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

inline constexpr std::size_t kMaxReductAttributes = 20;

struct ReductReport {
    std::vector<SubsetMask> absorbed;  // CNF after absorption
    std::vector<SubsetMask> reducts;   // minimal DNF terms, lexicographic
    SubsetMask core;                   // intersection of the reducts
    SubsetMask singleton_clauses;      // union of the one-attribute clauses after absorption
};

/// Expands the absorbed CNF into its minimal DNF.
inline ReductReport reducts_and_core(const Cnf& cnf)
{
    const auto width = cnf.attributes.size();
    if (width > kMaxReductAttributes) {
        throw CapacityError("reduct search supports at most 20 attributes, got " + std::to_string(width));
    }
    if (cnf.unsatisfiable) {
        throw PreconditionError("discernibility function contains an empty clause; no reduct exists");
    }
    ReductReport r;
    r.absorbed = absorb(cnf.clauses);
    std::vector<SubsetMask> terms{SubsetMask::empty(width)};
    for (const auto& clause : r.absorbed) {
        std::vector<SubsetMask> next;
        for (const auto& t : terms) {
            if (t.meets(clause)) {
                next.push_back(t);
                continue;
            }
            for (auto a : clause.elements()) {
                next.push_back(t | SubsetMask::singleton(a, width));
            }
        }
        terms = absorb(std::move(next));
    }
    std::sort(terms.begin(), terms.end(), lexicographic_less);
    r.reducts = std::move(terms);
    r.core = SubsetMask::full(width);
    for (const auto& t : r.reducts) {
        r.core &= t;
    }
    r.singleton_clauses = SubsetMask::empty(width);
    for (const auto& c : r.absorbed) {
        if (c.count() == 1) {
            r.singleton_clauses |= c;
        }
    }
    return r;
}

// ---- tolerance relations --------------------------------------------------

enum class Quantifier { universal, existential };

inline std::string_view to_string(Quantifier q) { return q == Quantifier::universal ? "universal" : "existential"; }

inline Quantifier parse_quantifier(std::string_view s)
{
    if (s == "universal") return Quantifier::universal;
    if (s == "existential") return Quantifier::existential;
    throw PreconditionError("unknown quantifier '" + std::string(s) + "'");
}

struct ToleranceClasses {
    std::vector<SubsetMask> classes;  // R_P(x) per object
    Granulation cover;                // the distinct classes
};

/// x R_P y iff |a(x) − a(y)| < α for every (universal) or some (existential) a ∈ P.
/// std::nullopt for alpha means α = +∞.
inline ToleranceClasses tolerance_relation_classes(const DecisionTable& t, SubsetMask attrs,
                                                   std::optional<Rational> alpha,
                                                   Quantifier q = Quantifier::universal)
{
    t.attributes().check(attrs);
    if (attrs.is_empty()) {
        throw PreconditionError("tolerance relation needs at least one attribute");
    }
    if (alpha && *alpha <= 0) {
        throw PreconditionError("threshold must be positive");
    }
    for (auto a : attrs.elements()) {
        if (!t.numeric(a)) {
            throw PreconditionError("attribute '" + t.attributes().label(a) + "' is not numeric");
        }
    }
    const auto& u = t.objects();
    auto close = [&](std::size_t x, std::size_t y, std::size_t a) {
        if (!alpha) {
            return true;
        }
        const auto d = std::get<Rational>(t.value(x, a)) - std::get<Rational>(t.value(y, a));
        return abs(d) < *alpha;
    };
    ToleranceClasses r;
    SetFamily blocks(u.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        SubsetMask c = u.empty_set();
        for (std::size_t y = 0; y < t.size(); ++y) {
            const auto elems = attrs.elements();
            const bool related = q == Quantifier::universal
                                     ? std::all_of(elems.begin(), elems.end(), [&](auto a) { return close(x, y, a); })
                                     : std::any_of(elems.begin(), elems.end(), [&](auto a) { return close(x, y, a); });
            if (related) {
                c |= u.singleton(y);
            }
        }
        r.classes.push_back(c);
        blocks.insert(c);
    }
    r.cover = Granulation(u, std::move(blocks), GranulationFlavor::cover);
    return r;
}

// ---- topological reducts --------------------------------------------------

/// Members common to every family.
inline SetFamily family_intersection(const std::vector<SetFamily>& families)
{
    if (families.empty()) {
        throw PreconditionError("intersection of no families");
    }
    std::vector<SubsetMask> common;
    for (const auto& m : families.front()) {
        if (std::all_of(families.begin() + 1, families.end(), [&](const SetFamily& f) { return f.contains(m); })) {
            common.push_back(m);
        }
    }
    return {families.front().width(), std::move(common)};
}

struct AttributeGroup {
    std::string name;
    SetFamily classes;
};

struct GroupSubsetReport {
    std::vector<std::size_t> groups;  // indices into the group list
    SetFamily classes;                // common members of the group families
    GeneratedFamily topology;
    bool contains_decision = false;   // τ_D ⊆ τ_P
};

struct TopoReductReport {
    GenerationMode mode;
    GeneratedFamily decision_topology;
    std::vector<GroupSubsetReport> subsets;  // by size, then group order
    std::vector<std::vector<std::size_t>> reducts;

    [[nodiscard]] bool has_reducts() const { return !reducts.empty(); }
};

/// Every nonempty combination of groups; P is a reduct when τ_D ⊆ τ_P and no smaller
/// combination inside P qualifies.
inline TopoReductReport topological_reduct_search(const Universe& u, const SetFamily& decision_blocks,
                                                  const std::vector<AttributeGroup>& groups, GenerationMode mode)
{
    if (groups.empty() || groups.size() > kMaxScan) {
        throw PreconditionError("topological reduct search needs between 1 and 16 groups");
    }
    TopoReductReport r{mode, generate_topology(u, decision_blocks, mode), {}, {}};
    std::vector<SubsetMask::Bits> combos;
    for (SubsetMask::Bits b = 1; b < (SubsetMask::Bits{1} << groups.size()); ++b) {
        combos.push_back(b);
    }
    std::stable_sort(combos.begin(), combos.end(), [&](auto a, auto b) {
        const auto ca = std::popcount(a);
        const auto cb = std::popcount(b);
        return ca != cb ? ca < cb : lexicographic_less(SubsetMask(a, groups.size()), SubsetMask(b, groups.size()));
    });
    std::vector<SubsetMask::Bits> qualifying;
    for (auto b : combos) {
        GroupSubsetReport s;
        std::vector<SetFamily> fams;
        for (auto i : SubsetMask(b, groups.size()).elements()) {
            s.groups.push_back(i);
            fams.push_back(groups[i].classes);
        }
        s.classes = family_intersection(fams);
        s.topology = generate_topology(u, s.classes, mode);
        s.contains_decision = r.decision_topology.family.subfamily_of(s.topology.family);
        if (s.contains_decision) {
            const bool minimal = std::none_of(qualifying.begin(), qualifying.end(),
                                              [&](auto q) { return (q & ~b) == 0; });
            qualifying.push_back(b);
            if (minimal) {
                r.reducts.push_back(s.groups);
            }
        }
        r.subsets.push_back(std::move(s));
    }
    return r;
}

struct ThresholdGroup {
    std::string name;
    std::vector<std::string> attributes;
    std::optional<Rational> alpha;  // nullopt = +∞
};

inline SubsetMask group_attributes(const DecisionTable& t, const ThresholdGroup& g)
{
    return t.attributes().subset(g.attributes);
}

/// Tolerance-class families of each threshold group.
inline std::vector<AttributeGroup> tolerance_groups(const DecisionTable& t, const std::vector<ThresholdGroup>& groups,
                                                    Quantifier q)
{
    std::vector<AttributeGroup> out;
    for (const auto& g : groups) {
        out.push_back({g.name, tolerance_relation_classes(t, group_attributes(t, g), g.alpha, q).cover.blocks()});
    }
    return out;
}

// ---- snapshot comparison --------------------------------------------------

struct GroupSnapshot {
    std::string name;
    std::vector<SubsetMask> before;       // classes per object in t0
    std::vector<SubsetMask> after;        // classes per object in t1
    std::vector<std::size_t> changed;     // objects whose class changed
    MinContinuityReport continuity;       // f_p between the two induced spaces
};

struct SnapshotReport {
    bool injective = false;
    bool rough_continuous = false;  // every group passes the continuity check
    std::vector<GroupSnapshot> groups;
    TopoReductReport image_reducts;  // reduct search on t1
};

inline SnapshotReport snapshot_compare(const DecisionTable& t0, const DecisionTable& t1, const FiniteFunction& f_p,
                                       const std::vector<ThresholdGroup>& groups, Quantifier q, GenerationMode mode)
{
    if (!(t0.objects() == t1.objects())) {
        throw PreconditionError("snapshots are over different object universes");
    }
    if (!(t0.attributes() == t1.attributes())) {
        throw PreconditionError("snapshots have different condition attributes");
    }
    if (!(f_p.domain() == t0.objects()) || !(f_p.codomain() == t1.objects())) {
        throw PreconditionError("prediction function must map the objects onto themselves");
    }
    SnapshotReport r;
    r.injective = f_p.injective();
    r.rough_continuous = true;
    for (const auto& g : groups) {
        const auto attrs = group_attributes(t0, g);
        const auto c0 = tolerance_relation_classes(t0, attrs, g.alpha, q);
        const auto c1 = tolerance_relation_classes(t1, attrs, g.alpha, q);
        GroupSnapshot s{g.name, c0.classes, c1.classes, {}, {}};
        for (std::size_t x = 0; x < t0.size(); ++x) {
            if (c0.classes[x] != c1.classes[x]) {
                s.changed.push_back(x);
            }
        }
        const auto s0 = generate_topology(t0.objects(), c0.cover.blocks(), mode).as_space();
        const auto s1 = generate_topology(t1.objects(), c1.cover.blocks(), mode).as_space();
        s.continuity = min_neighborhood_continuity_check(f_p, s0, s1);
        r.rough_continuous = r.rough_continuous && s.continuity.holds;
        r.groups.push_back(std::move(s));
    }
    r.image_reducts = topological_reduct_search(t1.objects(), decision_classes(t1).blocks(),
                                                tolerance_groups(t1, groups, q), mode);
    return r;
}

// ---- printed-versus-computed pipeline ------------------------------------

struct Discrepancy {
    std::string subject;
    std::string detail;
};

/// Class families and topologies as printed alongside a table, per group.
struct PrintedFamilies {
    std::map<std::string, SetFamily> classes;
    std::map<std::string, SetFamily> topologies;
    std::optional<SetFamily> decision_topology;
};

struct PatientsReport {
    GenerationMode mode;
    Quantifier quantifier;
    std::vector<AttributeGroup> literal_groups;
    TopoReductReport fixture;  // from the printed class families
    TopoReductReport literal;  // from the tolerance classes of the table
    std::vector<Discrepancy> discrepancies;
};

namespace detail {

inline std::string format_family(const Universe& u, const SetFamily& f)
{
    std::string s = "{";
    bool first = true;
    for (const auto& m : f) {
        if (!first) {
            s += ", ";
        }
        s += u.format(m);
        first = false;
    }
    return s + "}";
}

}  // namespace detail

/// Runs the reduct search on the printed families and on the literal tolerance classes,
/// then lists every place where the two disagree or a printed topology is not reproduced.
inline PatientsReport run_patients(const DecisionTable& t, const std::vector<ThresholdGroup>& groups,
                                   const PrintedFamilies& printed, Quantifier q, GenerationMode mode)
{
    const auto& u = t.objects();
    PatientsReport r{mode, q, tolerance_groups(t, groups, q), {}, {}, {}};

    std::vector<AttributeGroup> fixture_groups;
    for (const auto& g : groups) {
        auto it = printed.classes.find(g.name);
        if (it == printed.classes.end()) {
            throw PreconditionError("printed families have no classes for group '" + g.name + "'");
        }
        fixture_groups.push_back({g.name, it->second});
    }
    const auto decision = decision_classes(t).blocks();
    r.fixture = topological_reduct_search(u, decision, fixture_groups, mode);
    r.literal = topological_reduct_search(u, decision, r.literal_groups, mode);

    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& lit = r.literal_groups[i].classes;
        const auto& fix = fixture_groups[i].classes;
        if (!(lit == fix)) {
            r.discrepancies.push_back({"R_" + groups[i].name + " classes",
                                       "printed " + detail::format_family(u, fix) + " but the " + std::string(to_string(q))
                                           + " tolerance relation gives " + detail::format_family(u, lit)});
        }
    }
    for (const auto& g : groups) {
        auto it = printed.topologies.find(g.name);
        if (it == printed.topologies.end()) {
            continue;
        }
        const auto& classes = printed.classes.at(g.name);
        const auto generated = generate_topology(u, classes, mode).family;
        if (generated == it->second) {
            continue;
        }
        std::vector<std::string_view> reproducing;
        for (auto m : {GenerationMode::subbase, GenerationMode::base_union}) {
            if (generate_topology(u, classes, m).family == it->second) {
                reproducing.push_back(to_string(m));
            }
        }
        std::string msg = "printed " + detail::format_family(u, it->second) + " differs from the "
                          + std::string(to_string(mode)) + " family " + detail::format_family(u, generated)
                          + " of the printed classes";
        msg += reproducing.empty() ? "; no generation mode reproduces it" : "; reproduced by " + std::string(reproducing.front());
        r.discrepancies.push_back({"tau_" + g.name + " mode", msg});
    }
    if (printed.decision_topology && !(*printed.decision_topology == r.fixture.decision_topology.family)) {
        r.discrepancies.push_back({"tau_D", "printed " + detail::format_family(u, *printed.decision_topology)
                                                + " differs from " + detail::format_family(u, r.fixture.decision_topology.family)});
    }
    if (r.fixture.reducts != r.literal.reducts) {
        auto names = [&](const TopoReductReport& rep) {
            if (!rep.has_reducts()) {
                return std::string("no topological reducts");
            }
            std::string s;
            for (const auto& red : rep.reducts) {
                s += s.empty() ? "" : ", ";
                std::string one;
                for (auto i : red) {
                    one += (one.empty() ? "" : "+") + groups[i].name;
                }
                s += one;
            }
            return "reducts " + s;
        };
        r.discrepancies.push_back({"verdict", "printed families give " + names(r.fixture) + "; literal classes give "
                                                  + names(r.literal)});
    }
    return r;
}

}  // namespace roughtopo

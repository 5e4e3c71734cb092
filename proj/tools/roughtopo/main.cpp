#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

namespace rt = roughtopo;
using rt::io::InputError;
using rt::io::Json;
using namespace roughtopo::cli;

namespace {

struct Result {
    Json report = Json::object();
    std::optional<bool> verdict;  // for check-style commands
    std::string table;            // rendering for --format table, when supported
};

struct Args {
    std::string format = "json";
    bool fail_on_false = false;
    bool pretty = false;
    std::string printed;

    std::string space, space_x, space_y, space1, space2;
    std::string relation, relation_x, relation_y;
    std::string granulation, granulation1, granulation2;
    std::string function, graph, map, seeds, cnf, table, table1, thresholds, families;
    std::string set, p, q, lower, upper, point, b, b_prime, attrs, alpha = "inf", x, cuts;
    std::int64_t integer = 0;
    std::string kind = "open";
    std::string mode;
    std::string upper_convention = "superset";
    std::string quantifier = "universal";
    std::string side = "both";
    std::vector<std::string> functions, targets;
};

// ---- shared pieces ---------------------------------------------------------

rt::GenerationMode mode_or(const Args& a, rt::GenerationMode fallback)
{
    if (a.mode.empty()) {
        return fallback;
    }
    try {
        return rt::parse_generation_mode(a.mode);
    } catch (const rt::Error& e) {
        throw InputError(std::string("--mode: ") + e.what());
    }
}

rt::NearKind near_kind(const Args& a)
{
    try {
        return rt::parse_near_kind(a.kind);
    } catch (const rt::Error& e) {
        throw InputError(std::string("--kind: ") + e.what());
    }
}

rt::UpperConvention convention(const Args& a)
{
    try {
        return rt::parse_upper_convention(a.upper_convention);
    } catch (const rt::Error& e) {
        throw InputError(std::string("--upper-convention: ") + e.what());
    }
}

rt::Quantifier quantifier(const Args& a)
{
    try {
        return rt::parse_quantifier(a.quantifier);
    } catch (const rt::Error& e) {
        throw InputError(std::string("--quantifier: ") + e.what());
    }
}

std::optional<rt::Rational> alpha(const Args& a)
{
    if (a.alpha == "inf") {
        return std::nullopt;
    }
    auto v = rt::io::parse_rational_literal(a.alpha, "--alpha");
    if (v <= 0) {
        throw InputError("--alpha: threshold must be positive");
    }
    return v;
}

rt::RationalPartition partition(const Args& a)
{
    if (a.integer > 0) {
        return rt::build_partition_integer(a.integer);
    }
    if (a.cuts.empty()) {
        throw InputError("give --cuts or --integer");
    }
    std::vector<rt::Rational> cuts;
    for (const auto& c : rt::io::split_labels(a.cuts)) {
        cuts.push_back(rt::io::parse_rational_literal(c, "--cuts"));
    }
    try {
        return rt::build_partition_sequence(std::move(cuts));
    } catch (const rt::Error& e) {
        throw InputError(std::string("--cuts: ") + e.what());
    }
}

Json generated_json(const rt::GeneratedFamily& g)
{
    Json j;
    j["mode"] = std::string(rt::to_string(g.mode));
    j["universe"] = g.universe.labels();
    j["family"] = family_json(g.universe, g.family);
    j["size"] = g.family.size();
    j["topology"] = g.check.ok;
    j["witness"] = g.check.witness && !g.check.ok ? set_json(g.universe, *g.check.witness) : Json(nullptr);
    return j;
}

Json block_set_json(const rt::RationalPartition& p, const rt::BlockSet& s)
{
    Json a = Json::array();
    for (auto i : s) {
        a.push_back(p.block(i).format());
    }
    return a;
}

Json transfer_row_json(const rt::Universe& ux, const rt::Universe& uy, const std::optional<rt::TransferRow>& r)
{
    if (!r) {
        return nullptr;
    }
    return {{"set", set_json(ux, r->set)},
            {"lower", set_json(ux, r->lower)},
            {"upper", set_json(ux, r->upper)},
            {"image_lower", set_json(uy, r->image_lower)},
            {"image_upper", set_json(uy, r->image_upper)}};
}

Json roughness_json(const rt::RoughFunctionReport& r, const rt::Topology& tx, const rt::Topology& ty)
{
    const auto& u = r.side == rt::Side::domain ? tx.universe() : ty.universe();
    Json pts = Json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"point", tx.universe().label(p.point)},
                       {"neighborhood", set_json(u, p.neighborhood)},
                       {"interior", set_json(u, p.interior)},
                       {"closure", set_json(u, p.closure)},
                       {"rough", p.rough()}});
    }
    return {{"holds", r.holds}, {"points", pts}, {"failing", labels_json(tx.universe(), r.failing)}};
}

Json mincont_json(const rt::MinContinuityReport& r, const rt::Universe& ux, const rt::Universe& uy)
{
    Json pts = Json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"point", ux.label(p.point)},
                       {"neighborhood", set_json(ux, p.neighborhood)},
                       {"image_neighborhood", set_json(uy, p.image_neighborhood)},
                       {"preimage", set_json(ux, p.preimage)},
                       {"holds", p.holds()}});
    }
    return {{"holds", r.holds}, {"points", pts}, {"failing", labels_json(ux, r.failing)}};
}

Json group_names(const std::vector<std::string>& names, const std::vector<std::size_t>& idx)
{
    Json a = Json::array();
    for (auto i : idx) {
        a.push_back(names[i]);
    }
    return a;
}

Json toporeduct_json(const rt::TopoReductReport& r, const rt::Universe& u, const std::vector<std::string>& names)
{
    Json subsets = Json::array();
    for (const auto& s : r.subsets) {
        subsets.push_back({{"groups", group_names(names, s.groups)},
                           {"classes", family_json(u, s.classes)},
                           {"topology", family_json(u, s.topology.family)},
                           {"is_topology", s.topology.check.ok},
                           {"contains_decision", s.contains_decision}});
    }
    Json reducts = Json::array();
    for (const auto& red : r.reducts) {
        reducts.push_back(group_names(names, red));
    }
    return {{"decision_topology", family_json(u, r.decision_topology.family)},
            {"subsets", subsets},
            {"reducts", reducts},
            {"verdict", r.has_reducts() ? "topological reducts found" : "no topological reducts"}};
}

std::vector<std::string> names_of(const std::vector<rt::ThresholdGroup>& groups)
{
    std::vector<std::string> out;
    for (const auto& g : groups) {
        out.push_back(g.name);
    }
    return out;
}

Json snapshot_json(const rt::SnapshotReport& s, const rt::Universe& u, const std::vector<std::string>& names)
{
    Json groups = Json::array();
    for (const auto& g : s.groups) {
        Json changed = Json::array();
        for (auto x : g.changed) {
            changed.push_back({{"object", u.label(x)},
                               {"before", set_json(u, g.before[x])},
                               {"after", set_json(u, g.after[x])}});
        }
        groups.push_back({{"group", g.name}, {"changed", changed}, {"continuity", mincont_json(g.continuity, u, u)}});
    }
    return {{"injective", s.injective},
            {"rough_continuous", s.rough_continuous},
            {"groups", groups},
            {"image_reducts", toporeduct_json(s.image_reducts, u, names)}};
}

/// Table-1 style grid: one column per nonempty subset of Y, one row per measure.
std::string continuity_table(const rt::ContinuityVerdict& v, const rt::Universe& ux, const rt::Universe& uy)
{
    const auto rows = v.table_order();
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head{"Subsets of Y"};
    for (const auto& r : rows) head.push_back(set_text(uy, r.set));
    grid.push_back(head);
    auto add = [&](const std::string& name, auto get, const rt::Universe& u) {
        std::vector<std::string> line{name};
        for (const auto& r : rows) line.push_back(set_text(u, get(r)));
        grid.push_back(line);
    };
    add("int(A)", [](const rt::EvidenceRow& r) { return r.interior; }, uy);
    add("cl(A)", [](const rt::EvidenceRow& r) { return r.closure; }, uy);
    add("f^-1(int(A))", [](const rt::EvidenceRow& r) { return r.preimage_interior; }, ux);
    add("f^-1(cl(A))", [](const rt::EvidenceRow& r) { return r.preimage_closure; }, ux);
    add("int(f^-1(cl(A)))", [](const rt::EvidenceRow& r) { return r.interior_preimage_closure; }, ux);
    add("cl(f^-1(int(A)))", [](const rt::EvidenceRow& r) { return r.closure_preimage_interior; }, ux);

    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& line : grid) {
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }
    std::ostringstream out;
    for (const auto& line : grid) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            out << line[c];
            if (c + 1 < line.size()) out << std::string(width[c] - line[c].size() + 2, ' ');
        }
        out << '\n';
    }
    out << "verdict: " << rt::to_string(v.label) << '\n';
    return out.str();
}

/// Values printed next to the input, keyed by command name, for discrepancy reports.
std::optional<Json> printed_for(const std::string& path, const std::string& command)
{
    if (path.empty()) {
        return std::nullopt;
    }
    auto doc = rt::io::load_json(path);
    const Json* root = &doc.root;
    if (root->is_object() && root->contains("printed")) {
        root = &root->at("printed");
    }
    if (root->is_object() && root->contains(command)) {
        return root->at(command);
    }
    return std::nullopt;
}

void attach_printed(Result& r, const std::string& path, const std::string& command)
{
    if (auto p = printed_for(path, command)) {
        auto d = diff_printed(*p, r.report);
        if (!r.report.contains("discrepancies")) {
            r.report["discrepancies"] = Json::array();
        }
        for (auto& e : d) {
            r.report["discrepancies"].push_back(e);
        }
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite rough-topology engine"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--fail-on-false", a.fail_on_false, "Exit 1 when a check-style verdict is false");
    app.add_flag("--pretty", a.pretty, "Indent JSON output");
    app.add_option("--printed", a.printed, "JSON file of printed values to diff against, keyed by command");

    std::function<Result()> action;
    std::string command_name;

    auto group = [&](const std::string& name, const std::string& desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        return g;
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, std::function<Result()> fn) {
        auto* s = parent->add_subcommand(name, desc);
        const auto full = parent->get_name() + " " + name;
        s->callback([&action, &command_name, fn, full] {
            action = fn;
            command_name = full;
        });
        return s;
    };
    auto opt = [](CLI::App* s, const std::string& flag, std::string& v, const std::string& desc, bool required = true) {
        auto* o = s->add_option(flag, v, desc);
        if (required) {
            o->required();
        }
        return o;
    };

    // ---- topo ----
    auto* topo = group("topo", "Finite topologies");
    {
        auto* s = leaf(topo, "check", "Check the topology axioms", [&] {
            const auto t = rt::io::load_space(a.space, false);
            const auto c = rt::is_topology(t.universe(), t.opens());
            Result r;
            r.report["topology"] = c.ok;
            r.report["witness"] = c.ok ? Json(nullptr) : set_json(t.universe(), *c.witness);
            r.report["reason"] = c.reason;
            r.verdict = c.ok;
            return r;
        });
        opt(s, "--space", a.space, "space.json");
    }
    {
        auto* s = leaf(topo, "generate", "Generate a topology from seeds or preimages", [&] {
            const auto mode = mode_or(a, rt::GenerationMode::subbase);
            Result r;
            if (mode == rt::GenerationMode::rectangles) {
                throw InputError("--mode rectangles applies to `topo product`");
            }
            if (mode == rt::GenerationMode::preimages) {
                if (a.functions.empty() || a.functions.size() != a.targets.size()) {
                    throw InputError("preimages mode needs matching --function and --target-space lists");
                }
                std::vector<rt::FiniteFunction> fs;
                std::vector<rt::Topology> ts;
                for (std::size_t i = 0; i < a.functions.size(); ++i) {
                    fs.push_back(rt::io::load_function(a.functions[i]));
                    ts.push_back(rt::io::load_space(a.targets[i]));
                }
                r.report = generated_json(rt::generate_topology_from_preimages(fs.front().domain(), fs, ts));
            } else {
                if (a.seeds.empty()) {
                    throw InputError("--seeds is required for subbase and base-union modes");
                }
                const auto [u, seeds] = rt::io::load_seeds(a.seeds);
                r.report = generated_json(rt::generate_topology(u, seeds, mode));
            }
            r.verdict = r.report["topology"].get<bool>();
            return r;
        });
        opt(s, "--seeds", a.seeds, "seeds.json", false);
        opt(s, "--mode", a.mode, "subbase | base-union | preimages", false);
        s->add_option("--function", a.functions, "function.json (preimages mode, repeatable)");
        s->add_option("--target-space", a.targets, "codomain space.json per function (preimages mode)");
    }
    for (const std::string which : {"interior", "closure"}) {
        auto* s = leaf(topo, which, "Interior or closure of a set", [&a, which] {
            const auto t = rt::io::load_space(a.space);
            const auto m = rt::io::parse_set_literal(t.universe(), a.set, "--set");
            Result r;
            r.report["result"] = set_json(t.universe(), which == "interior" ? t.interior(m) : t.closure(m));
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--set", a.set, "comma-separated labels; empty for the empty set");
    }
    {
        auto* s = leaf(topo, "product", "Product of two spaces", [&] {
            const auto mode = mode_or(a, rt::GenerationMode::rectangles);
            const auto t1 = rt::io::load_space(a.space1);
            const auto t2 = rt::io::load_space(a.space2);
            Result r;
            r.report = generated_json(rt::product_topology(t1, t2, mode));
            r.verdict = r.report["topology"].get<bool>();
            return r;
        });
        opt(s, "--space1", a.space1, "first space.json");
        opt(s, "--space2", a.space2, "second space.json");
        opt(s, "--mode", a.mode, "rectangles | subbase", false);
    }
    {
        auto* s = leaf(topo, "subspace", "Subspace topology on a set", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto q = rt::io::parse_set_literal(t.universe(), a.set, "--set");
            const auto sub = rt::subspace_topology(t, q);
            Result r;
            r.report["universe"] = sub.universe().labels();
            r.report["opens"] = family_json(sub.universe(), sub.opens());
            r.report["topology"] = sub.valid();
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--set", a.set, "subspace elements");
    }
    {
        auto* s = leaf(topo, "minnbhd", "Minimal neighbourhoods", [&] {
            const auto t = rt::io::load_space(a.space);
            Result r;
            Json pts = Json::array();
            for (std::size_t x = 0; x < t.size(); ++x) {
                if (!a.point.empty() && t.universe().label(x) != a.point) continue;
                pts.push_back({{"point", t.universe().label(x)}, {"set", set_json(t.universe(), rt::minimal_neighborhood(t, x))}});
            }
            if (!a.point.empty() && pts.empty()) {
                throw InputError("--point: '" + a.point + "' is not an element of the universe");
            }
            r.report["neighborhoods"] = pts;
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--point", a.point, "single element", false);
    }
    {
        auto* s = leaf(topo, "signatures", "Roughness-signature classes of the subspace on a set", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto q = a.set.empty() && !app.get_subcommand("topo")->get_subcommand("signatures")->count("--set")
                               ? t.universe().full_set()
                               : rt::io::parse_set_literal(t.universe(), a.set, "--set");
            const auto& u = t.universe();
            Json classes = Json::array();
            for (const auto& c : rt::roughness_signature_classes(t, q)) {
                classes.push_back({{"interior", set_json(u, c.signature.interior)},
                                   {"closure", set_json(u, c.signature.closure)},
                                   {"members", sets_json(u, c.members)}});
            }
            Result r;
            r.report["count"] = classes.size();
            r.report["classes"] = classes;
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--set", a.set, "subspace elements (default: the whole universe)", false);
    }

    // ---- near ----
    auto* near = group("near", "Near-open families and approximations");
    {
        auto* s = leaf(near, "family", "Family of a near-open or generalized-closed kind", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto k = near_kind(a);
            Result r;
            r.report["kind"] = std::string(rt::to_string(k));
            const auto f = rt::near_family(t, k);
            r.report["family"] = family_json(t.universe(), f);
            r.report["size"] = f.size();
            if (auto n = rt::kind_note(k)) r.report["note"] = std::string(*n);
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--kind", a.kind, "open | semi | pre | alpha | beta | regular | semi-regular | ...-closed");
    }
    {
        auto* s = leaf(near, "approx", "Near lower and upper approximations", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto k = near_kind(a);
            const auto c = convention(a);
            const auto x = rt::io::parse_set_literal(t.universe(), a.set, "--set");
            const auto p = rt::near_approximations(t, k, x, c);
            Result r;
            r.report["kind"] = std::string(rt::to_string(k));
            r.report["upper_convention"] = std::string(rt::to_string(c));
            r.report["lower"] = set_json(t.universe(), p.lower);
            r.report["upper"] = set_json(t.universe(), p.upper);
            if (auto n = rt::kind_note(k)) r.report["note"] = std::string(*n);
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--kind", a.kind, "open-type kind", false);
        opt(s, "--set", a.set, "target set");
        opt(s, "--upper-convention", a.upper_convention, "superset | meets", false);
    }
    {
        auto* s = leaf(near, "regions", "Positive, negative and boundary regions with accuracy", [&] {
            Result r;
            rt::Universe u;
            rt::SubsetMask lo, up;
            if (!a.granulation.empty()) {
                const auto g = rt::io::load_granulation(a.granulation);
                u = g.universe();
                const auto ap = rt::granule_approximations(g, rt::io::parse_set_literal(u, a.set, "--set"));
                lo = ap.lower;
                up = ap.upper;
                r.report["source"] = "granulation";
                r.report["flavor"] = std::string(rt::to_string(g.flavor()));
            } else {
                if (a.space.empty()) {
                    throw InputError("give --space or --granulation");
                }
                const auto t = rt::io::load_space(a.space);
                const auto k = near_kind(a);
                const auto c = convention(a);
                u = t.universe();
                const auto ap = rt::near_approximations(t, k, rt::io::parse_set_literal(u, a.set, "--set"), c);
                lo = ap.lower;
                up = ap.upper;
                r.report["source"] = "topology";
                r.report["kind"] = std::string(rt::to_string(k));
                r.report["upper_convention"] = std::string(rt::to_string(c));
            }
            const auto reg = rt::rough_regions(lo, up);
            r.report["lower"] = set_json(u, lo);
            r.report["upper"] = set_json(u, up);
            r.report["positive"] = set_json(u, reg.positive);
            r.report["negative"] = set_json(u, reg.negative);
            r.report["boundary"] = set_json(u, reg.boundary);
            r.report["accuracy"] = rt::to_string(reg.accuracy);
            return r;
        });
        opt(s, "--space", a.space, "space.json", false);
        opt(s, "--granulation", a.granulation, "granulation.json", false);
        opt(s, "--kind", a.kind, "open-type kind", false);
        opt(s, "--set", a.set, "target set");
        opt(s, "--upper-convention", a.upper_convention, "superset | meets", false);
    }
    {
        auto* s = leaf(near, "pair-check", "Check the semi-rough pair conditions", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto& u = t.universe();
            const auto c = rt::semi_rough_pair_check(t, rt::io::parse_set_literal(u, a.p, "--p"),
                                                     rt::io::parse_set_literal(u, a.q, "--q"));
            Result r;
            r.report["semi_rough_pair"] = c.ok;
            r.report["witness_s"] = c.witness ? set_json(u, *c.witness) : Json(nullptr);
            r.report["violated"] = c.violated ? Json(*c.violated) : Json(nullptr);
            r.verdict = c.ok;
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--p", a.p, "lower set P");
        opt(s, "--q", a.q, "upper set Q");
    }
    {
        auto* s = leaf(near, "pair-of", "Semi-rough pair of a set", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto& u = t.universe();
            const auto p = rt::semi_rough_pair_of(t, rt::io::parse_set_literal(u, a.set, "--set"));
            Result r;
            r.report["p"] = set_json(u, p.p);
            r.report["q"] = set_json(u, p.q);
            r.report["witness_s"] = set_json(u, p.witness_s);
            r.report["check"] = rt::semi_rough_pair_check(t, p.p, p.q).ok;
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--set", a.set, "set A");
    }
    {
        auto* s = leaf(near, "restrict-pair", "Restrict a rough pair to a subspace", [&] {
            const auto t = rt::io::load_space(a.space);
            const auto& u = t.universe();
            const auto rep = rt::restrict_rough_pair(t, rt::io::parse_set_literal(u, a.lower, "--lower"),
                                                     rt::io::parse_set_literal(u, a.upper, "--upper"),
                                                     rt::io::parse_set_literal(u, a.set, "--set"));
            auto cond = [&](const rt::RoughPairConditions& c) {
                return Json{{"lower_open", c.lower_open},
                            {"upper_closed", c.upper_closed},
                            {"lower_within_upper", c.lower_within_upper},
                            {"witness_s", c.witness_s ? set_json(u, *c.witness_s) : Json(nullptr)},
                            {"holds", c.holds()}};
            };
            Result r;
            r.report["lower"] = set_json(u, rep.lower);
            r.report["upper"] = set_json(u, rep.upper);
            r.report["q_closed"] = rep.q_closed;
            r.report["source_conditions"] = cond(rep.source);
            r.report["relative_conditions"] = rep.relative ? cond(*rep.relative) : Json(nullptr);
            r.report["witness_p"] = rep.witness_p ? set_json(u, *rep.witness_p) : Json("no witness");
            return r;
        });
        opt(s, "--space", a.space, "space.json");
        opt(s, "--lower", a.lower, "open lower set");
        opt(s, "--upper", a.upper, "closed upper set");
        opt(s, "--set", a.set, "subspace Q");
    }

    // ---- space ----
    auto* space = group("space", "Relations and granulations");
    {
        auto* s = leaf(space, "nbhd", "Right, left and meet neighbourhoods", [&] {
            const auto rel = rt::io::load_relation(a.relation);
            const auto& u = rel.domain();
            Json pts = Json::array();
            for (std::size_t x = 0; x < u.size(); ++x) {
                if (!a.point.empty() && u.label(x) != a.point) continue;
                const auto n = rt::neighborhoods(rel, x);
                pts.push_back({{"point", u.label(x)}, {"right", set_json(u, n.right)}, {"left", set_json(u, n.left)},
                               {"meet", set_json(u, n.meet)}});
            }
            if (!a.point.empty() && pts.empty()) {
                throw InputError("--point: '" + a.point + "' is not an element of the universe");
            }
            Result r;
            r.report["neighborhoods"] = pts;
            return r;
        });
        opt(s, "--relation", a.relation, "relation.json");
        opt(s, "--point", a.point, "single element", false);
    }
    {
        auto* s = leaf(space, "topology", "Topology of a relation", [&] {
            const auto t = rt::relation_topology(rt::io::load_relation(a.relation));
            Result r;
            r.report["opens"] = family_json(t.universe(), t.opens());
            r.report["size"] = t.opens().size();
            return r;
        });
        opt(s, "--relation", a.relation, "relation.json");
    }
    {
        auto* s = leaf(space, "granules", "Granule lower and upper approximations", [&] {
            const auto g = rt::io::load_granulation(a.granulation);
            const auto& u = g.universe();
            const auto ap = rt::granule_approximations(g, rt::io::parse_set_literal(u, a.set, "--set"));
            Result r;
            r.report["flavor"] = std::string(rt::to_string(g.flavor()));
            r.report["lower"] = set_json(u, ap.lower);
            r.report["upper"] = set_json(u, ap.upper);
            r.report["uncovered"] = set_json(u, ap.uncovered);
            return r;
        });
        opt(s, "--granulation", a.granulation, "granulation.json");
        opt(s, "--set", a.set, "target set");
    }
    {
        auto* s = leaf(space, "selective", "Is every block a singleton covering the universe", [&] {
            const auto g = rt::io::load_granulation(a.granulation);
            Result r;
            r.verdict = rt::is_selective(g);
            r.report["selective"] = *r.verdict;
            return r;
        });
        opt(s, "--granulation", a.granulation, "granulation.json");
    }
    {
        auto* s = leaf(space, "relprops", "Relation property flags", [&] {
            const auto p = rt::relation_properties(rt::io::load_relation(a.relation));
            Result r;
            r.report = {{"functional", p.functional}, {"injective", p.injective}, {"surjective", p.surjective},
                        {"total", p.total}, {"reflexive", p.reflexive}, {"symmetric", p.symmetric},
                        {"transitive", p.transitive}, {"equivalence", p.equivalence}};
            return r;
        });
        opt(s, "--relation", a.relation, "relation.json");
    }
    {
        auto* s = leaf(space, "product-blocks", "Product blocks of two granulations", [&] {
            const auto g = rt::product_block_classes(rt::io::load_granulation(a.granulation1),
                                                     rt::io::load_granulation(a.granulation2));
            Result r;
            r.report["universe"] = g.universe().labels();
            r.report["flavor"] = std::string(rt::to_string(g.flavor()));
            r.report["blocks"] = family_json(g.universe(), g.blocks());
            r.report["size"] = g.blocks().size();
            return r;
        });
        opt(s, "--granulation1", a.granulation1, "first granulation.json");
        opt(s, "--granulation2", a.granulation2, "second granulation.json");
    }

    // ---- roughnum ----
    auto* roughnum = group("roughnum", "Rough numbers over rational partitions");
    {
        auto* s = leaf(roughnum, "partition", "Blocks of a partition", [&] {
            const auto p = partition(a);
            Result r;
            Json cuts = Json::array();
            for (const auto& c : p.cuts()) cuts.push_back(rt::to_string(c));
            Json blocks = Json::array();
            for (std::size_t i = 0; i < p.block_count(); ++i) blocks.push_back(p.block(i).format());
            r.report["cuts"] = cuts;
            r.report["blocks"] = blocks;
            return r;
        });
        opt(s, "--cuts", a.cuts, "comma-separated rationals", false);
        s->add_option("--integer", a.integer, "cuts 0..n");
    }
    {
        auto* s = leaf(roughnum, "classify", "Rough or exact", [&] {
            const auto p = partition(a);
            const auto x = rt::io::parse_rational_literal(a.x, "--x");
            rt::NumberVerdict v;
            try {
                v = rt::classify_number(p, x);
            } catch (const rt::PreconditionError& e) {
                throw InputError(std::string("--x: ") + e.what());
            }
            Result r;
            r.report["value"] = rt::to_string(v.value);
            r.report["lower"] = block_set_json(p, v.lower);
            r.report["upper"] = block_set_json(p, v.upper);
            r.report["verdict"] = std::string(rt::to_string(v.verdict));
            return r;
        });
        opt(s, "--cuts", a.cuts, "comma-separated rationals", false);
        s->add_option("--integer", a.integer, "cuts 0..n");
        opt(s, "--x", a.x, "rational, e.g. 3/2 or 1.5");
    }

    // ---- fn ----
    auto* fn = group("fn", "Function classifiers");
    auto spaces_xy = [&](const rt::FiniteFunction&) {
        return std::pair{rt::io::load_space(a.space_x), rt::io::load_space(a.space_y)};
    };
    {
        auto* s = leaf(fn, "transfer", "Totally / possibly rough and exact functions", [&] {
            const auto f = rt::io::load_function(a.function);
            rt::Topology tx, ty;
            if (!a.relation_x.empty() || !a.relation_y.empty()) {
                tx = rt::relation_topology(rt::io::load_relation(a.relation_x));
                ty = rt::relation_topology(rt::io::load_relation(a.relation_y));
            } else {
                std::tie(tx, ty) = spaces_xy(f);
            }
            const auto v = rt::classify_rough_transfer(f, tx, ty);
            Result r;
            r.report["verdict"] = std::string(rt::to_string(v.label));
            r.report["totally"] = v.totally;
            r.report["possibly"] = v.possibly;
            r.report["exact"] = v.exact;
            r.report["witnesses"] = {
                {"totally_counterexample", transfer_row_json(tx.universe(), ty.universe(), v.totally_counterexample)},
                {"possibly_witness", transfer_row_json(tx.universe(), ty.universe(), v.possibly_witness)},
                {"exact_counterexample", transfer_row_json(tx.universe(), ty.universe(), v.exact_counterexample)}};
            return r;
        });
        opt(s, "--function", a.function, "function.json");
        opt(s, "--space-x", a.space_x, "domain space.json", false);
        opt(s, "--space-y", a.space_y, "codomain space.json", false);
        opt(s, "--relation-x", a.relation_x, "domain relation.json", false);
        opt(s, "--relation-y", a.relation_y, "codomain relation.json", false);
    }
    {
        auto* s = leaf(fn, "continuity", "Topological rough continuity with evidence grid", [&] {
            const auto f = rt::io::load_function(a.function);
            const auto [tx, ty] = spaces_xy(f);
            const auto v = rt::classify_rough_continuity(f, tx, ty);
            const auto& ux = tx.universe();
            const auto& uy = ty.universe();
            Result r;
            r.report["verdict"] = std::string(rt::to_string(v.label));
            r.report["totally"] = v.totally;
            r.report["possibly"] = v.possibly;
            r.report["exact"] = v.exact;
            Json ev = Json::array();
            for (const auto& row : v.evidence) {
                ev.push_back({{"set", set_json(uy, row.set)},
                              {"interior", set_json(uy, row.interior)},
                              {"closure", set_json(uy, row.closure)},
                              {"preimage_interior", set_json(ux, row.preimage_interior)},
                              {"preimage_closure", set_json(ux, row.preimage_closure)},
                              {"interior_preimage_closure", set_json(ux, row.interior_preimage_closure)},
                              {"closure_preimage_interior", set_json(ux, row.closure_preimage_interior)}});
            }
            r.report["evidence"] = ev;
            r.table = continuity_table(v, ux, uy);
            return r;
        });
        opt(s, "--function", a.function, "function.json");
        opt(s, "--space-x", a.space_x, "domain space.json");
        opt(s, "--space-y", a.space_y, "codomain space.json");
    }
    {
        auto* s = leaf(fn, "equiv", "Four equivalent continuity conditions", [&] {
            const auto f = rt::io::load_function(a.function);
            const auto [tx, ty] = spaces_xy(f);
            const auto e = rt::continuity_equivalences(f, tx, ty);
            Result r;
            r.report = {{"open_preimages", e.open_preimages}, {"closed_preimages", e.closed_preimages},
                        {"pointwise", e.pointwise}, {"closure_image", e.closure_image}, {"agree", e.agree()}};
            r.verdict = e.open_preimages && e.agree();
            return r;
        });
        opt(s, "--function", a.function, "function.json");
        opt(s, "--space-x", a.space_x, "domain space.json");
        opt(s, "--space-y", a.space_y, "codomain space.json");
    }
    {
        auto* s = leaf(fn, "minimage", "Minimal image neighbourhoods f_min", [&] {
            const auto f = rt::io::load_function(a.function);
            const auto ty = rt::io::load_space(a.space_y);
            Json pts = Json::array();
            for (std::size_t x = 0; x < f.domain().size(); ++x) {
                if (!a.point.empty() && f.domain().label(x) != a.point) continue;
                pts.push_back({{"point", f.domain().label(x)},
                               {"image", f.codomain().label(f(x))},
                               {"set", set_json(ty.universe(), rt::minimal_image(f, ty, x))}});
            }
            if (!a.point.empty() && pts.empty()) {
                throw InputError("--point: '" + a.point + "' is not in the domain");
            }
            Result r;
            r.report["f_min"] = pts;
            return r;
        });
        opt(s, "--function", a.function, "function.json");
        opt(s, "--space-y", a.space_y, "codomain space.json");
        opt(s, "--point", a.point, "single element", false);
    }
    {
        auto* s = leaf(fn, "roughfn", "Topological rough function check", [&] {
            const auto f = rt::io::load_function(a.function);
            const auto [tx, ty] = spaces_xy(f);
            if (a.side != "domain" && a.side != "codomain" && a.side != "both") {
                throw InputError("--side: expected domain, codomain or both");
            }
            Result r;
            r.report["side"] = a.side;
            bool ok = true;
            for (auto side : {rt::Side::domain, rt::Side::codomain}) {
                const auto name = std::string(rt::to_string(side));
                if (a.side != "both" && a.side != name) continue;
                const auto rep = rt::topological_rough_function_check(f, tx, ty, side);
                r.report[name] = roughness_json(rep, tx, ty);
                ok = ok && rep.holds;
            }
            r.report["holds"] = ok;
            if (a.side == "both") {
                const bool dx = r.report["domain"]["holds"].get<bool>();
                const bool cy = r.report["codomain"]["holds"].get<bool>();
                r.report["verdict"] = dx && cy   ? "topological rough function on X and on Y"
                                      : dx       ? "topological rough function on X only"
                                      : cy       ? "topological rough function on Y only"
                                                 : "not topological rough function on X and on Y";
            }
            r.verdict = ok;
            return r;
        });
        opt(s, "--function", a.function, "function.json");
        opt(s, "--space-x", a.space_x, "domain space.json");
        opt(s, "--space-y", a.space_y, "codomain space.json");
        opt(s, "--side", a.side, "domain | codomain | both", false);
    }
    {
        auto* s = leaf(fn, "mincont", "Minimal-neighbourhood continuity", [&] {
            const auto f = rt::io::load_function(a.function);
            const auto [tx, ty] = spaces_xy(f);
            const auto rep = rt::min_neighborhood_continuity_check(f, tx, ty);
            Result r;
            r.report = mincont_json(rep, tx.universe(), ty.universe());
            r.verdict = rep.holds;
            return r;
        });
        opt(s, "--function", a.function, "function.json");
        opt(s, "--space-x", a.space_x, "domain space.json");
        opt(s, "--space-y", a.space_y, "codomain space.json");
    }
    {
        auto* s = leaf(fn, "graph", "Approximations of a function graph by product blocks", [&] {
            const auto g1 = rt::io::load_granulation(a.granulation1);
            const auto g2 = rt::io::load_granulation(a.granulation2);
            const auto graph = rt::io::load_graph(a.graph, g1.universe(), g2.universe());
            const auto ga = rt::graph_approximations(g1, g2, graph);
            const auto& u = ga.blocks.universe();
            const auto props = rt::relation_properties(graph);
            Result r;
            r.report["blocks"] = family_json(u, ga.blocks.blocks());
            r.report["graph"] = set_json(u, ga.graph);
            r.report["functional"] = props.functional;
            r.report["total"] = props.total;
            r.report["lower"] = set_json(u, ga.lower);
            r.report["upper"] = set_json(u, ga.upper);
            r.report["verdict"] = ga.rough() ? "rough" : "exact";
            return r;
        });
        opt(s, "--granulation1", a.granulation1, "granulation of the first universe");
        opt(s, "--granulation2", a.granulation2, "granulation of the second universe");
        opt(s, "--graph", a.graph, "graph.json");
    }
    {
        auto* s = leaf(fn, "product-cont", "Rough continuity of a map on a product", [&] {
            const auto mode = mode_or(a, rt::GenerationMode::rectangles);
            const auto t1 = rt::io::load_space(a.space1);
            const auto t2 = rt::io::load_space(a.space2);
            const auto prod = rt::product_topology(t1, t2, mode);
            const auto f = rt::io::load_function_on(a.map, prod.universe);
            const auto rep = rt::product_rough_continuity_check(f, prod.family);
            const auto& u = prod.universe;
            Json pts = Json::array();
            for (const auto& p : rep.points) {
                pts.push_back({{"point", u.label(p.point)},
                               {"image", u.label(p.image)},
                               {"members", sets_json(u, p.members)},
                               {"preimages", sets_json(u, p.preimages)},
                               {"holds", p.holds()},
                               {"failing", p.failing ? set_json(u, *p.failing) : Json(nullptr)}});
            }
            Result r;
            r.report["mode"] = std::string(rt::to_string(mode));
            r.report["family"] = family_json(u, prod.family);
            r.report["family_size"] = prod.family.size();
            r.report["holds"] = rep.holds;
            r.report["points"] = pts;
            r.verdict = rep.holds;
            return r;
        });
        opt(s, "--space1", a.space1, "first space.json");
        opt(s, "--space2", a.space2, "second space.json");
        opt(s, "--map", a.map, "map on the product universe");
        opt(s, "--mode", a.mode, "rectangles | subbase", false);
    }

    // ---- infosys ----
    auto* infosys = group("infosys", "Decision tables");
    auto attr_set = [&](const rt::DecisionTable& t, const std::string& text, const std::string& flag) {
        return text.empty() ? t.all_attributes() : rt::io::parse_set_literal(t.attributes(), text, flag);
    };
    {
        auto* s = leaf(infosys, "pos", "Indiscernibility classes and positive region", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            const auto b = attr_set(t, a.attrs, "--attrs");
            const auto p = rt::indiscernibility_positive_region(t, b);
            Result r;
            r.report["attributes"] = set_json(t.attributes(), b);
            r.report["classes"] = family_json(t.objects(), p.classes.blocks());
            r.report["positive"] = set_json(t.objects(), p.positive);
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
        opt(s, "--attrs", a.attrs, "attribute subset (default: all)", false);
    }
    {
        auto* s = leaf(infosys, "project", "Projection function", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            const auto b = attr_set(t, a.b, "--b");
            const auto bp = rt::io::parse_set_literal(t.attributes(), a.b_prime, "--b-prime");
            if (!bp.subset_of(b)) {
                throw InputError("--b-prime must be contained in --b");
            }
            Result r;
            r.report["result"] = set_json(t.attributes(), rt::projection_function(t, b, bp));
            r.report["pos_b"] = set_json(t.objects(), rt::indiscernibility_positive_region(t, b).positive);
            r.report["pos_b_prime"] = set_json(t.objects(), rt::indiscernibility_positive_region(t, bp).positive);
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
        opt(s, "--b", a.b, "attribute set B (default: all)", false);
        opt(s, "--b-prime", a.b_prime, "attribute set B'");
    }
    auto matrix_json = [](const rt::DecisionTable& t, const rt::DiscernibilityMatrix& m) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < m.size(); ++j) {
                const auto& c = m.cell(i, j);
                row.push_back(c ? set_json(t.attributes(), *c) : Json("lambda"));
            }
            rows.push_back(row);
        }
        return rows;
    };
    {
        auto* s = leaf(infosys, "matrix", "Discernibility matrix", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            Result r;
            r.report["objects"] = t.objects().labels();
            r.report["cells"] = matrix_json(t, rt::discernibility_matrix(t));
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
    }
    {
        auto* s = leaf(infosys, "cnf", "Discernibility function", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            const auto f = rt::discernibility_function(rt::discernibility_matrix(t));
            Result r;
            r.report["clauses"] = sets_json(t.attributes(), f.clauses);
            r.report["unsatisfiable"] = f.unsatisfiable;
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
    }
    {
        auto* s = leaf(infosys, "reducts", "Reducts and core", [&] {
            rt::Cnf f;
            if (!a.cnf.empty()) {
                f = rt::io::load_cnf(a.cnf);
            } else if (!a.table.empty()) {
                f = rt::discernibility_function(rt::discernibility_matrix(rt::io::load_table_csv(a.table)));
            } else {
                throw InputError("give --cnf or --table");
            }
            const auto rep = rt::reducts_and_core(f);
            Result r;
            r.report["absorbed"] = sets_json(f.attributes, rep.absorbed);
            r.report["reducts"] = sets_json(f.attributes, rep.reducts);
            r.report["core"] = set_json(f.attributes, rep.core);
            return r;
        });
        opt(s, "--cnf", a.cnf, "cnf.json", false);
        opt(s, "--table", a.table, "table.csv", false);
    }
    {
        auto* s = leaf(infosys, "tolerance", "Tolerance classes", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            const auto attrs = attr_set(t, a.attrs, "--attrs");
            const auto q = quantifier(a);
            const auto c = rt::tolerance_relation_classes(t, attrs, alpha(a), q);
            Json classes = Json::array();
            for (std::size_t x = 0; x < t.size(); ++x) {
                classes.push_back({{"object", t.objects().label(x)}, {"class", set_json(t.objects(), c.classes[x])}});
            }
            Result r;
            r.report["attributes"] = set_json(t.attributes(), attrs);
            r.report["alpha"] = a.alpha;
            r.report["quantifier"] = std::string(rt::to_string(q));
            r.report["classes"] = classes;
            r.report["family"] = family_json(t.objects(), c.cover.blocks());
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
        opt(s, "--attrs", a.attrs, "attribute group (default: all)", false);
        opt(s, "--alpha", a.alpha, "threshold, or inf", false);
        opt(s, "--quantifier", a.quantifier, "universal | existential", false);
    }
    {
        auto* s = leaf(infosys, "toporeduct", "Topological reduct search", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            const auto groups = rt::io::load_thresholds(a.thresholds, t);
            const auto mode = mode_or(a, rt::GenerationMode::base_union);
            const auto q = quantifier(a);
            std::vector<rt::AttributeGroup> fams;
            Result r;
            r.report["mode"] = std::string(rt::to_string(mode));
            r.report["quantifier"] = std::string(rt::to_string(q));
            if (!a.families.empty()) {
                const auto printed = rt::io::load_printed_families(a.families, t.objects());
                for (const auto& g : groups) {
                    auto it = printed.classes.find(g.name);
                    if (it == printed.classes.end()) {
                        throw InputError(a.families + ": classes: no entry for group '" + g.name + "'");
                    }
                    fams.push_back({g.name, it->second});
                }
                r.report["source"] = "printed classes";
            } else {
                fams = rt::tolerance_groups(t, groups, q);
                r.report["source"] = "tolerance classes";
            }
            const auto rep = rt::topological_reduct_search(t.objects(), rt::decision_classes(t).blocks(), fams, mode);
            for (auto& [k, v] : toporeduct_json(rep, t.objects(), names_of(groups)).items()) r.report[k] = v;
            r.verdict = rep.has_reducts();
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
        opt(s, "--thresholds", a.thresholds, "thresholds.json");
        opt(s, "--families", a.families, "printed class families (fixture path)", false);
        opt(s, "--mode", a.mode, "base-union | subbase", false);
        opt(s, "--quantifier", a.quantifier, "universal | existential", false);
    }
    auto prediction = [&](const rt::DecisionTable& t) {
        return a.map.empty() ? rt::FiniteFunction::identity(t.objects()) : rt::io::load_function_on(a.map, t.objects());
    };
    {
        auto* s = leaf(infosys, "compare", "Compare two snapshots of a table through a prediction map", [&] {
            const auto t0 = rt::io::load_table_csv(a.table);
            const auto t1 = rt::io::load_table_csv(a.table1);
            const auto groups = rt::io::load_thresholds(a.thresholds, t0);
            const auto mode = mode_or(a, rt::GenerationMode::base_union);
            const auto q = quantifier(a);
            if (!(t0.objects() == t1.objects())) {
                throw InputError(a.table1 + ": object universe differs from " + a.table);
            }
            const auto rep = rt::snapshot_compare(t0, t1, prediction(t0), groups, q, mode);
            Result r;
            r.report["mode"] = std::string(rt::to_string(mode));
            r.report["quantifier"] = std::string(rt::to_string(q));
            for (auto& [k, v] : snapshot_json(rep, t0.objects(), names_of(groups)).items()) r.report[k] = v;
            r.verdict = rep.injective && rep.rough_continuous;
            return r;
        });
        opt(s, "--table", a.table, "table.csv at time 0");
        opt(s, "--table1", a.table1, "table.csv at time 1");
        opt(s, "--thresholds", a.thresholds, "thresholds.json");
        opt(s, "--map", a.map, "prediction map (default: identity)", false);
        opt(s, "--mode", a.mode, "base-union | subbase", false);
        opt(s, "--quantifier", a.quantifier, "universal | existential", false);
    }

    // ---- patients ----
    auto* patients = group("patients", "Threshold-topology pipeline on a decision table");
    {
        auto* s = leaf(patients, "run", "Printed families and tolerance classes side by side", [&] {
            const auto t = rt::io::load_table_csv(a.table);
            const auto groups = rt::io::load_thresholds(a.thresholds, t);
            const auto printed = rt::io::load_printed_families(a.families, t.objects());
            const auto mode = mode_or(a, rt::GenerationMode::base_union);
            const auto q = quantifier(a);
            const auto rep = rt::run_patients(t, groups, printed, q, mode);
            const auto names = names_of(groups);
            const auto& u = t.objects();
            Result r;
            r.report["mode"] = std::string(rt::to_string(mode));
            r.report["quantifier"] = std::string(rt::to_string(q));
            Json lit = Json::object();
            for (const auto& g : rep.literal_groups) lit[g.name] = family_json(u, g.classes);
            r.report["literal_classes"] = lit;
            r.report["fixture"] = toporeduct_json(rep.fixture, u, names);
            r.report["literal"] = toporeduct_json(rep.literal, u, names);
            if (!a.table1.empty()) {
                const auto t1 = rt::io::load_table_csv(a.table1);
                if (!(t.objects() == t1.objects())) {
                    throw InputError(a.table1 + ": object universe differs from " + a.table);
                }
                r.report["snapshot"] = snapshot_json(rt::snapshot_compare(t, t1, prediction(t), groups, q, mode), u, names);
            }
            Json disc = Json::array();
            for (const auto& d : rep.discrepancies) disc.push_back({{"subject", d.subject}, {"detail", d.detail}});
            r.report["discrepancies"] = disc;
            return r;
        });
        opt(s, "--table", a.table, "table.csv");
        opt(s, "--thresholds", a.thresholds, "thresholds.json");
        opt(s, "--families", a.families, "printed class families and topologies");
        opt(s, "--table1", a.table1, "later snapshot of the table", false);
        opt(s, "--map", a.map, "prediction map (default: identity)", false);
        opt(s, "--mode", a.mode, "base-union | subbase", false);
        opt(s, "--quantifier", a.quantifier, "universal | existential", false);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Result r = action();
        // Primary inputs may carry printed values for this command.
        for (const auto* path : {&a.function, &a.graph, &a.space, &a.printed}) {
            attach_printed(r, *path, command_name);
        }
        if (a.format == "table") {
            if (r.table.empty()) {
                throw InputError("--format table is only available for `fn continuity`");
            }
            std::cout << r.table;
        } else {
            std::cout << (a.pretty ? r.report.dump(2) : r.report.dump()) << '\n';
        }
        if (a.fail_on_false && r.verdict && !*r.verdict) {
            return 1;
        }
        return 0;
    } catch (const rt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

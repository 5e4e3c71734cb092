#pragma once

// JSON and CSV loaders for the command-line tool. Needs nlohmann/json on the include path.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughtopo/approximation_space.hpp"
#include "roughtopo/finite_function.hpp"
#include "roughtopo/finite_topology.hpp"
#include "roughtopo/information_system.hpp"
#include "roughtopo/rational.hpp"

namespace roughtopo::io {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input; the message names the file and field.
class InputError : public Error {
public:
    using Error::Error;
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Parsed document plus the file name, so field errors can say where they are.
struct Document {
    std::string path;
    Json root;

    [[noreturn]] void fail(const std::string& field, const std::string& msg) const
    {
        throw InputError(path + ": " + field + ": " + msg);
    }

    [[nodiscard]] const Json& at(const std::string& key) const
    {
        if (!root.is_object() || !root.contains(key)) {
            fail(key, "missing field");
        }
        return root.at(key);
    }

    [[nodiscard]] bool has(const std::string& key) const { return root.is_object() && root.contains(key); }
};

inline Document load_json(const std::string& path)
{
    const auto text = read_file(path);
    try {
        return {path, Json::parse(text)};
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
}

inline std::string element_name(const Document& d, const Json& v, const std::string& field)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    d.fail(field, "expected an element name, got " + v.dump());
}

inline Universe parse_universe(const Document& d, const Json& v, const std::string& field)
{
    if (!v.is_array()) {
        d.fail(field, "expected an array of element names");
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < v.size(); ++i) {
        labels.push_back(element_name(d, v[i], field + "[" + std::to_string(i) + "]"));
    }
    try {
        return Universe(std::move(labels));
    } catch (const Error& e) {
        d.fail(field, e.what());
    }
}

inline SubsetMask parse_set(const Document& d, const Universe& u, const Json& v, const std::string& field)
{
    if (!v.is_array()) {
        d.fail(field, "expected an array of elements");
    }
    SubsetMask m = u.empty_set();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto name = element_name(d, v[i], field + "[" + std::to_string(i) + "]");
        const auto idx = u.find(name);
        if (!idx) {
            d.fail(field + "[" + std::to_string(i) + "]", "'" + name + "' is not an element of the universe");
        }
        m |= u.singleton(*idx);
    }
    return m;
}

inline SetFamily parse_family(const Document& d, const Universe& u, const Json& v, const std::string& field)
{
    if (!v.is_array()) {
        d.fail(field, "expected an array of sets");
    }
    SetFamily f(u.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        f.insert(parse_set(d, u, v[i], field + "[" + std::to_string(i) + "]"));
    }
    return f;
}

/// space.json: {"universe": [...], "opens": [[...], ...], "unchecked": false}.
/// With validate = false the family is loaded as is (for `topo check`).
inline Topology load_space(const std::string& path, bool validate = true)
{
    const auto d = load_json(path);
    const auto u = parse_universe(d, d.at("universe"), "universe");
    const auto opens = parse_family(d, u, d.at("opens"), "opens");
    const bool unchecked = d.has("unchecked") && d.at("unchecked").is_boolean() && d.at("unchecked").get<bool>();
    if (!validate || unchecked) {
        return Topology::unchecked(u, opens);
    }
    if (auto c = is_topology(u, opens); !c) {
        d.fail("opens", "not a topology: " + c.reason + " (missing " + u.format(*c.witness) + ")");
    }
    return Topology::make(u, opens);
}

/// {"universe": [...], "seeds": [[...], ...]}.
inline std::pair<Universe, SetFamily> load_seeds(const std::string& path)
{
    const auto d = load_json(path);
    auto u = parse_universe(d, d.at("universe"), "universe");
    auto seeds = parse_family(d, u, d.at("seeds"), "seeds");
    return {std::move(u), std::move(seeds)};
}

/// relation.json: {"universe": [...], "pairs": [[x, y], ...]} or with "domain"/"codomain".
inline BinaryRelation load_relation(const std::string& path)
{
    const auto d = load_json(path);
    Universe dom;
    Universe cod;
    if (d.has("universe")) {
        dom = cod = parse_universe(d, d.at("universe"), "universe");
    } else {
        dom = parse_universe(d, d.at("domain"), "domain");
        cod = parse_universe(d, d.at("codomain"), "codomain");
    }
    BinaryRelation r(dom, cod);
    const auto& pairs = d.at("pairs");
    if (!pairs.is_array()) {
        d.fail("pairs", "expected an array of pairs");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto field = "pairs[" + std::to_string(i) + "]";
        if (!pairs[i].is_array() || pairs[i].size() != 2) {
            d.fail(field, "expected a two-element array");
        }
        const auto x = element_name(d, pairs[i][0], field + "[0]");
        const auto y = element_name(d, pairs[i][1], field + "[1]");
        if (!dom.find(x)) d.fail(field + "[0]", "'" + x + "' is not in the domain");
        if (!cod.find(y)) d.fail(field + "[1]", "'" + y + "' is not in the codomain");
        r.add(dom.index(x), cod.index(y));
    }
    return r;
}

/// granulation.json: {"universe": [...], "blocks": [[...], ...], "flavor": "cover"}.
inline Granulation load_granulation(const std::string& path)
{
    const auto d = load_json(path);
    const auto u = parse_universe(d, d.at("universe"), "universe");
    auto blocks = parse_family(d, u, d.at("blocks"), "blocks");
    if (!d.has("flavor")) {
        return Granulation::infer(u, std::move(blocks));
    }
    try {
        return {u, std::move(blocks), parse_granulation_flavor(d.at("flavor").get<std::string>())};
    } catch (const Error& e) {
        d.fail("flavor", e.what());
    }
}

inline FiniteFunction parse_map(const Document& d, const Universe& dom, const Universe& cod, const Json& map,
                                const std::string& field)
{
    if (!map.is_object()) {
        d.fail(field, "expected an object from domain elements to codomain elements");
    }
    std::vector<std::size_t> images(dom.size(), 0);
    std::vector<bool> seen(dom.size(), false);
    for (const auto& [k, v] : map.items()) {
        const auto x = dom.find(k);
        if (!x) d.fail(field + "." + k, "'" + k + "' is not in the domain");
        const auto y = element_name(d, v, field + "." + k);
        const auto yi = cod.find(y);
        if (!yi) d.fail(field + "." + k, "'" + y + "' is not in the codomain");
        images[*x] = *yi;
        seen[*x] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            d.fail(field, "no image for '" + dom.label(i) + "'");
        }
    }
    return {dom, cod, std::move(images)};
}

/// function.json: {"domain": [...], "codomain": [...], "map": {"a": "1", ...}}.
inline FiniteFunction load_function(const std::string& path)
{
    const auto d = load_json(path);
    const auto dom = parse_universe(d, d.at("domain"), "domain");
    const auto cod = parse_universe(d, d.at("codomain"), "codomain");
    return parse_map(d, dom, cod, d.at("map"), "map");
}

/// Map on a fixed universe (product maps): {"map": {...}}; "domain"/"codomain" ignored.
inline FiniteFunction load_function_on(const std::string& path, const Universe& u)
{
    const auto d = load_json(path);
    return parse_map(d, u, u, d.at("map"), "map");
}

/// graph.json: {"pairs": [[x, y], ...]} between two given universes.
inline BinaryRelation load_graph(const std::string& path, const Universe& u1, const Universe& u2)
{
    const auto d = load_json(path);
    BinaryRelation r(u1, u2);
    const auto& pairs = d.at("pairs");
    if (!pairs.is_array()) {
        d.fail("pairs", "expected an array of pairs");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto field = "pairs[" + std::to_string(i) + "]";
        if (!pairs[i].is_array() || pairs[i].size() != 2) {
            d.fail(field, "expected a two-element array");
        }
        const auto x = element_name(d, pairs[i][0], field + "[0]");
        const auto y = element_name(d, pairs[i][1], field + "[1]");
        if (!u1.find(x)) d.fail(field + "[0]", "'" + x + "' is not in the first universe");
        if (!u2.find(y)) d.fail(field + "[1]", "'" + y + "' is not in the second universe");
        r.add(u1.index(x), u2.index(y));
    }
    return r;
}

/// Optional "printed" object of a document, e.g. values to diff against.
inline std::optional<Json> printed_block(const std::string& path)
{
    const auto d = load_json(path);
    if (d.has("printed")) {
        return d.at("printed");
    }
    return std::nullopt;
}

/// cnf.json: {"attributes": [...], "clauses": [[...], ...]}.
inline Cnf load_cnf(const std::string& path)
{
    const auto d = load_json(path);
    const auto attrs = parse_universe(d, d.at("attributes"), "attributes");
    Cnf f{attrs, {}, false};
    const auto& clauses = d.at("clauses");
    if (!clauses.is_array()) {
        d.fail("clauses", "expected an array of clauses");
    }
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        f.clauses.push_back(parse_set(d, attrs, clauses[i], "clauses[" + std::to_string(i) + "]"));
    }
    f.normalize();
    return f;
}

// ---- CSV ------------------------------------------------------------------

/// Splits one CSV line; double quotes group a field and "" is a literal quote.
inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        const auto b = f.find_first_not_of(" \t\r");
        const auto e = f.find_last_not_of(" \t\r");
        f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
    }
    return out;
}

/// Header `id,A1,...,decision:D`; numeric cells become exact rationals.
inline DecisionTable parse_table_csv(const std::string& text, const std::string& path)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            header = split_csv_line(line);
            break;
        }
    }
    auto fail = [&](std::size_t ln, const std::string& msg) -> InputError {
        return InputError(path + ":" + std::to_string(ln) + ": " + msg);
    };
    if (header.empty()) {
        throw fail(lineno, "missing header");
    }
    const std::string prefix = "decision:";
    std::optional<std::size_t> decision_col;
    std::vector<std::string> attrs;
    std::vector<std::size_t> attr_cols;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].rfind(prefix, 0) == 0) {
            if (decision_col) {
                throw fail(lineno, "more than one decision column");
            }
            decision_col = c;
        } else {
            attrs.push_back(header[c]);
            attr_cols.push_back(c);
        }
    }
    if (!decision_col) {
        throw fail(lineno, "header has no 'decision:<name>' column");
    }
    const auto decision_name = header[*decision_col].substr(prefix.size());

    std::vector<std::string> ids;
    std::vector<std::vector<Value>> rows;
    std::vector<Value> decisions;
    auto cell = [](const std::string& s) -> Value {
        try {
            return parse_rational(s);
        } catch (const Error&) {
            return s;
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw fail(lineno, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        ids.push_back(fields[0]);
        std::vector<Value> row;
        for (std::size_t i = 0; i < attr_cols.size(); ++i) {
            if (fields[attr_cols[i]].empty()) {
                throw fail(lineno, "empty value for attribute '" + attrs[i] + "'");
            }
            row.push_back(cell(fields[attr_cols[i]]));
        }
        rows.push_back(std::move(row));
        decisions.push_back(cell(fields[*decision_col]));
    }
    try {
        return {Universe(ids), Universe(attrs), decision_name, std::move(rows), std::move(decisions)};
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline DecisionTable load_table_csv(const std::string& path) { return parse_table_csv(read_file(path), path); }

/// thresholds.json: {"P1": {"attrs": ["A1","A2"], "alpha": "4"}, ...}; "alpha": "inf" for no bound.
inline std::vector<ThresholdGroup> load_thresholds(const std::string& path, const DecisionTable& t)
{
    const auto d = load_json(path);
    if (!d.root.is_object()) {
        d.fail("(root)", "expected an object of threshold groups");
    }
    std::vector<ThresholdGroup> out;
    for (const auto& [name, spec] : d.root.items()) {
        ThresholdGroup g{name, {}, std::nullopt};
        if (!spec.is_object() || !spec.contains("attrs") || !spec.contains("alpha")) {
            d.fail(name, "expected {\"attrs\": [...], \"alpha\": ...}");
        }
        for (const auto& a : spec.at("attrs")) {
            const auto label = element_name(d, a, name + ".attrs");
            if (!t.attributes().find(label)) {
                d.fail(name + ".attrs", "unknown attribute '" + label + "'");
            }
            g.attributes.push_back(label);
        }
        const auto& alpha = spec.at("alpha");
        const auto text = alpha.is_string() ? alpha.get<std::string>() : alpha.dump();
        if (text != "inf") {
            try {
                g.alpha = parse_rational(text);
            } catch (const Error& e) {
                d.fail(name + ".alpha", e.what());
            }
            if (*g.alpha <= 0) {
                d.fail(name + ".alpha", "threshold must be positive");
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

/// {"classes": {"P1": [[...]], ...}, "topologies": {"P1": [[...]], ...}, "decision_topology": [[...]]}.
inline PrintedFamilies load_printed_families(const std::string& path, const Universe& u)
{
    const auto d = load_json(path);
    PrintedFamilies p;
    for (const auto& [name, fam] : d.at("classes").items()) {
        p.classes.emplace(name, parse_family(d, u, fam, "classes." + name));
    }
    if (d.has("topologies")) {
        for (const auto& [name, fam] : d.at("topologies").items()) {
            p.topologies.emplace(name, parse_family(d, u, fam, "topologies." + name));
        }
    }
    if (d.has("decision_topology")) {
        p.decision_topology = parse_family(d, u, d.at("decision_topology"), "decision_topology");
    }
    return p;
}

// ---- command-line set literals ---------------------------------------------

/// Comma-separated labels; commas inside parentheses belong to the label ("(a,1),(b,2)").
inline std::vector<std::string> split_labels(const std::string& text)
{
    std::vector<std::string> out;
    if (text.empty()) {
        return out;
    }
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline SubsetMask parse_set_literal(const Universe& u, const std::string& text, const std::string& option)
{
    SubsetMask m = u.empty_set();
    for (const auto& l : split_labels(text)) {
        const auto i = u.find(l);
        if (!i) {
            throw InputError(option + ": '" + l + "' is not an element of the universe");
        }
        m |= u.singleton(*i);
    }
    return m;
}

inline std::size_t parse_element_literal(const Universe& u, const std::string& text, const std::string& option)
{
    const auto i = u.find(text);
    if (!i) {
        throw InputError(option + ": '" + text + "' is not an element of the universe");
    }
    return *i;
}

inline Rational parse_rational_literal(const std::string& text, const std::string& option)
{
    try {
        return parse_rational(text);
    } catch (const Error& e) {
        throw InputError(option + ": " + e.what());
    }
}

}  // namespace roughtopo::io

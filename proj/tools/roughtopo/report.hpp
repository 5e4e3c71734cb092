#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "roughtopo/io.hpp"
#include "roughtopo/roughtopo.hpp"

namespace roughtopo::cli {

using io::Json;

inline Json set_json(const Universe& u, SubsetMask m)
{
    Json a = Json::array();
    for (const auto& l : u.labels_of(m)) {
        a.push_back(l);
    }
    return a;
}

inline Json family_json(const Universe& u, const SetFamily& f)
{
    Json a = Json::array();
    for (const auto& m : f) {
        a.push_back(set_json(u, m));
    }
    return a;
}

inline Json sets_json(const Universe& u, const std::vector<SubsetMask>& v)
{
    Json a = Json::array();
    for (const auto& m : v) {
        a.push_back(set_json(u, m));
    }
    return a;
}

inline Json labels_json(const Universe& u, const std::vector<std::size_t>& idx)
{
    Json a = Json::array();
    for (auto i : idx) {
        a.push_back(u.label(i));
    }
    return a;
}

/// "{1,3}" with "{}" for the empty set.
inline std::string set_text(const Universe& u, SubsetMask m) { return u.format(m); }

namespace detail {

inline bool scalar_array(const Json& v)
{
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
}

inline std::vector<std::string> sorted_dumps(const Json& v)
{
    std::vector<std::string> out;
    for (const auto& e : v) {
        out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void diff(const Json& printed, const Json& computed, const std::string& path, Json& out)
{
    if (printed.is_object() && computed.is_object()) {
        for (const auto& [k, v] : printed.items()) {
            if (!computed.contains(k)) {
                out.push_back({{"field", path + "/" + k}, {"printed", v}, {"computed", nullptr}});
                continue;
            }
            diff(v, computed.at(k), path + "/" + k, out);
        }
        return;
    }
    if (scalar_array(printed) && scalar_array(computed)) {
        const auto p = sorted_dumps(printed);
        const auto c = sorted_dumps(computed);
        if (p == c) {
            return;
        }
        Json only_p = Json::array();
        Json only_c = Json::array();
        std::vector<std::string> tmp;
        std::set_difference(p.begin(), p.end(), c.begin(), c.end(), std::back_inserter(tmp));
        for (auto& s : tmp) only_p.push_back(s);
        tmp.clear();
        std::set_difference(c.begin(), c.end(), p.begin(), p.end(), std::back_inserter(tmp));
        for (auto& s : tmp) only_c.push_back(s);
        out.push_back({{"field", path}, {"printed", printed}, {"computed", computed},
                       {"only_printed", only_p}, {"only_computed", only_c}});
        return;
    }
    if (printed.is_array() && computed.is_array() && printed.size() == computed.size()) {
        for (std::size_t i = 0; i < printed.size(); ++i) {
            diff(printed[i], computed[i], path + "/" + std::to_string(i), out);
        }
        return;
    }
    if (printed != computed) {
        out.push_back({{"field", path}, {"printed", printed}, {"computed", computed}});
    }
}

}  // namespace detail

/// Field-by-field differences between printed values and a computed report.
/// Arrays of scalars compare as sets; structured arrays compare element-wise.
inline Json diff_printed(const Json& printed, const Json& computed)
{
    Json out = Json::array();
    detail::diff(printed, computed, "", out);
    return out;
}

}  // namespace roughtopo::cli

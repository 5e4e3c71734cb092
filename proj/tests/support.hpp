#pragma once

// Test-only generators and brute-force oracles. None of these call into the
// library operators they are used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "roughtopo/roughtopo.hpp"

namespace support {

using roughtopo::SetFamily;
using roughtopo::SubsetMask;
using roughtopo::Topology;
using roughtopo::Universe;
using Bits = std::uint64_t;

inline constexpr std::uint64_t kSeed = 20261016;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(kSeed);
    return g;
}

inline std::size_t uniform(std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng());
}

inline SubsetMask mask(Bits b, std::size_t n) { return SubsetMask(b, n); }

inline SubsetMask random_subset(std::size_t n)
{
    return mask(rng()() & SubsetMask::full_bits(n), n);
}

/// Preorder as adjacency rows: up[x] = {y : x <= y}. Opens are the up-sets.
inline SetFamily up_sets(const std::vector<Bits>& up, std::size_t n)
{
    SetFamily f(n);
    for (Bits a = 0; a <= SubsetMask::full_bits(n); ++a) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) {
            if (((a >> x) & 1U) && (up[x] & ~a) != 0) ok = false;
        }
        if (ok) f.insert(mask(a, n));
    }
    return f;
}

inline bool transitive(const std::vector<Bits>& up, std::size_t n)
{
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (((up[x] >> y) & 1U) && (up[y] & ~up[x]) != 0) return false;
        }
    }
    return true;
}

/// Every topology on n points (n <= 5), via the bijection with preorders.
inline std::vector<Topology> all_topologies(std::size_t n)
{
    const Universe u = Universe::indexed(n);
    std::vector<std::pair<std::size_t, std::size_t>> offdiag;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y) offdiag.emplace_back(x, y);
    std::vector<Topology> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << offdiag.size()); ++code) {
        std::vector<Bits> up(n);
        for (std::size_t x = 0; x < n; ++x) up[x] = Bits{1} << x;
        for (std::size_t k = 0; k < offdiag.size(); ++k)
            if ((code >> k) & 1U) up[offdiag[k].first] |= Bits{1} << offdiag[k].second;
        if (transitive(up, n)) out.push_back(Topology::make(u, up_sets(up, n)));
    }
    return out;
}

/// Random topology: reflexive-transitive closure of a random relation.
inline Topology random_topology(std::size_t n, double density = 0.3)
{
    std::bernoulli_distribution coin(density);
    std::vector<Bits> up(n);
    for (std::size_t x = 0; x < n; ++x) {
        up[x] = Bits{1} << x;
        for (std::size_t y = 0; y < n; ++y)
            if (coin(rng())) up[x] |= Bits{1} << y;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < n; ++x)
            if ((up[x] >> k) & 1U) up[x] |= up[k];
    return Topology::make(Universe::indexed(n), up_sets(up, n));
}

/// Union of the opens inside A.
inline SubsetMask interior_oracle(const Topology& t, SubsetMask a)
{
    Bits r = 0;
    for (const auto& g : t.opens())
        if ((g.bits() & ~a.bits()) == 0) r |= g.bits();
    return mask(r, a.width());
}

/// Points every open neighbourhood of which meets A.
inline SubsetMask closure_oracle(const Topology& t, SubsetMask a)
{
    Bits r = 0;
    for (std::size_t x = 0; x < a.width(); ++x) {
        bool all = true;
        for (const auto& g : t.opens())
            if (((g.bits() >> x) & 1U) && (g.bits() & a.bits()) == 0) all = false;
        if (all) r |= Bits{1} << x;
    }
    return mask(r, a.width());
}

inline bool is_open(const Topology& t, SubsetMask a)
{
    for (const auto& g : t.opens())
        if (g == a) return true;
    return false;
}

/// Fixpoint of pairwise unions and intersections, plus the bounds.
inline SetFamily lattice_closure(const SetFamily& seeds, std::size_t n, bool with_intersections)
{
    std::vector<Bits> v{0, SubsetMask::full_bits(n)};
    for (const auto& s : seeds) v.push_back(s.bits());
    bool grew = true;
    while (grew) {
        grew = false;
        const auto cur = v;
        for (auto a : cur) {
            for (auto b : cur) {
                for (Bits c : {a | b, with_intersections ? (a & b) : a}) {
                    if (std::find(v.begin(), v.end(), c) == v.end()) {
                        v.push_back(c);
                        grew = true;
                    }
                }
            }
        }
    }
    SetFamily f(n);
    for (auto b : v) f.insert(mask(b, n));
    return f;
}

/// All maps from an m-set to an n-set as image vectors.
inline std::vector<std::vector<std::size_t>> all_maps(std::size_t m, std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(m, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < m && ++cur[i] == n) cur[i++] = 0;
        if (i == m) break;
    }
    return out;
}

/// Minimal hitting sets of a clause list, by scanning every attribute subset.
inline std::vector<Bits> brute_force_reducts(const std::vector<Bits>& clauses, std::size_t n)
{
    auto hits = [&](Bits s) {
        for (auto c : clauses)
            if ((c & s) == 0) return false;
        return true;
    };
    std::vector<Bits> out;
    for (Bits s = 0; s < (Bits{1} << n); ++s) {
        if (!hits(s)) continue;
        bool minimal = true;
        for (Bits t = s; t != 0; t &= t - 1)
            if (hits(s & ~(t & (~t + 1)))) minimal = false;
        if (minimal) out.push_back(s);
    }
    return out;
}

using Labels = std::vector<std::string>;
using Pairs = std::vector<std::pair<std::string, std::string>>;

inline SetFamily family_of(const Universe& u, const std::vector<Labels>& sets)
{
    SetFamily f(u.size());
    for (const auto& s : sets) f.insert(u.subset(s));
    return f;
}

inline Topology space(Labels labels, const std::vector<Labels>& opens)
{
    Universe u(std::move(labels));
    auto f = family_of(u, opens);
    return Topology::make(std::move(u), std::move(f));
}

// Worked-example spaces.
inline Topology ex51_x() { return space({"a", "b", "c"}, {{}, {"a"}, {"b"}, {"a", "b"}, {"a", "b", "c"}}); }
inline Topology ex51_y() { return space({"1", "2", "3"}, {{}, {"1"}, {"2"}, {"1", "2"}, {"1", "2", "3"}}); }
inline Topology ex61_x() { return space({"a", "b", "c"}, {{}, {"a"}, {"a", "b"}, {"a", "b", "c"}}); }
inline Topology ex62_x()
{
    return space({"a", "b", "c", "d"}, {{}, {"a"}, {"a", "b"}, {"a", "b", "c"}, {"a", "b", "c", "d"}});
}
inline Topology ex62_y()
{
    return space({"1", "2", "3", "4"}, {{}, {"1"}, {"2"}, {"1", "2"}, {"2", "3", "4"}, {"1", "2", "3", "4"}});
}
inline Topology ex72_t1() { return space({"a", "b", "c"}, {{}, {"a"}, {"b", "c"}, {"a", "b", "c"}}); }
inline Topology ex72_t2() { return space({"1", "2", "3", "4"}, {{}, {"3"}, {"1", "2", "4"}, {"1", "2", "3", "4"}}); }

inline roughtopo::FiniteFunction map_of(const Topology& x, const Topology& y, const Labels& images)
{
    std::vector<std::size_t> idx;
    for (const auto& l : images) idx.push_back(y.universe().index(l));
    return {x.universe(), y.universe(), idx};
}

}  // namespace support

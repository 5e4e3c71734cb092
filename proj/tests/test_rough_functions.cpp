#include <gtest/gtest.h>

#include "support.hpp"

using namespace roughtopo;
using namespace support;

namespace {

Bits preimage_o(const std::vector<std::size_t>& img, Bits a)
{
    Bits r = 0;
    for (std::size_t x = 0; x < img.size(); ++x)
        if ((a >> img[x]) & 1U) r |= Bits{1} << x;
    return r;
}

/// Continuity by the open-preimage definition, computed directly.
bool continuous_o(const std::vector<std::size_t>& img, const Topology& tx, const Topology& ty)
{
    for (const auto& v : ty.opens())
        if (!is_open(tx, mask(preimage_o(img, v.bits()), tx.size()))) return false;
    return true;
}

SetFamily intersect(const SetFamily& a, const SetFamily& b)
{
    SetFamily out(a.width());
    for (const auto& m : a)
        if (b.contains(m)) out.insert(m);
    return out;
}

}  // namespace

TEST(RoughFunctions, TableOneEvidence)
{
    const auto x = ex51_x();
    const auto y = ex51_y();
    const auto f = map_of(x, y, {"1", "2", "3"});
    const auto v = classify_rough_continuity(f, x, y);
    EXPECT_EQ(v.label, ContinuityClass::totally_rough_continuous);
    const auto rows = v.table_order();
    ASSERT_EQ(rows.size(), 7U);
    const auto& ux = x.universe();
    const auto& uy = y.universe();
    const std::vector<Labels> cols = {{"1"}, {"2"}, {"3"}, {"1", "2"}, {"1", "3"}, {"2", "3"}, {"1", "2", "3"}};
    const std::vector<Labels> in = {{"1"}, {"2"}, {}, {"1", "2"}, {"1"}, {"2"}, {"1", "2", "3"}};
    const std::vector<Labels> cl = {{"1", "3"}, {"2", "3"}, {"3"}, {"1", "2", "3"}, {"1", "3"}, {"2", "3"}, {"1", "2", "3"}};
    const std::vector<Labels> fi = {{"a"}, {"b"}, {}, {"a", "b"}, {"a"}, {"b"}, {"a", "b", "c"}};
    const std::vector<Labels> fc = {{"a", "c"}, {"b", "c"}, {"c"}, {"a", "b", "c"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}};
    const std::vector<Labels> ifc = {{"a"}, {"b"}, {}, {"a", "b", "c"}, {"a"}, {"b"}, {"a", "b", "c"}};
    const std::vector<Labels> cfi = {{"a", "c"}, {"b", "c"}, {}, {"a", "b", "c"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}};
    for (std::size_t k = 0; k < 7; ++k) {
        EXPECT_EQ(rows[k].set, uy.subset(cols[k]));
        EXPECT_EQ(rows[k].interior, uy.subset(in[k]));
        EXPECT_EQ(rows[k].closure, uy.subset(cl[k]));
        EXPECT_EQ(rows[k].preimage_interior, ux.subset(fi[k]));
        EXPECT_EQ(rows[k].preimage_closure, ux.subset(fc[k]));
        EXPECT_EQ(rows[k].interior_preimage_closure, ux.subset(ifc[k]));
        EXPECT_EQ(rows[k].closure_preimage_interior, ux.subset(cfi[k]));
    }
}

TEST(RoughFunctions, ContinuityOtherExamples)
{
    const auto x = ex51_x();
    const auto y = ex51_y();
    EXPECT_TRUE(classify_rough_continuity(FiniteFunction::identity(x.universe()), x, x).exact);

    const auto c = map_of(x, y, {"3", "3", "3"});
    const auto v = classify_rough_continuity(c, x, y);
    bool totally = true, possibly = false, exact = true;
    for (Bits b = 1; b < 8; ++b) {
        const auto a = mask(b, 3);
        const auto i = interior_oracle(y, a);
        const auto k = closure_oracle(y, a);
        const auto lhs = interior_oracle(x, mask(preimage_o({2, 2, 2}, k.bits()), 3));
        const auto rhs = closure_oracle(x, mask(preimage_o({2, 2, 2}, i.bits()), 3));
        totally = totally && lhs.subset_of(rhs);
        possibly = possibly || lhs.subset_of(rhs);
        if (i == k) exact = exact && lhs == rhs;
    }
    EXPECT_EQ(v.totally, totally);
    EXPECT_EQ(v.possibly, possibly);
    EXPECT_EQ(v.exact, exact);
}

TEST(RoughFunctions, Transfer)
{
    const auto d = Topology::discrete(Universe({"a", "b", "c"}));
    const auto id = classify_rough_transfer(FiniteFunction::identity(d.universe()), d, d);
    EXPECT_EQ(id.label, TransferClass::exact);
    EXPECT_FALSE(id.possibly);

    // Indiscrete X, discrete Y, injective f: {a} is rough and its image pair is (∅, f(X)), also rough.
    const auto ix = Topology::indiscrete(Universe({"a", "b"}));
    const auto dy = Topology::discrete(Universe({"1", "2"}));
    const auto inj = classify_rough_transfer(map_of(ix, dy, {"1", "2"}), ix, dy);
    EXPECT_TRUE(inj.possibly);
    ASSERT_TRUE(inj.possibly_witness.has_value());
    EXPECT_TRUE(inj.possibly_witness->image_lower.is_empty());

    const auto iy = Topology::indiscrete(Universe({"1", "2"}));
    const auto cst = classify_rough_transfer(map_of(ix, iy, {"1", "1"}), ix, iy);
    EXPECT_TRUE(cst.possibly);
    EXPECT_TRUE(cst.totally);
    EXPECT_EQ(cst.label, TransferClass::totally_rough);
}

TEST(RoughFunctions, Equivalences)
{
    const auto x = ex51_x();
    const auto y = ex51_y();
    EXPECT_TRUE(continuity_equivalences(map_of(x, y, {"1", "2", "3"}), x, y).open_preimages);
    EXPECT_TRUE(continuity_equivalences(map_of(x, y, {"1", "2", "3"}), x, y).agree());
    const auto k = continuity_equivalences(map_of(x, y, {"2", "2", "2"}), x, y);
    EXPECT_TRUE(k.open_preimages && k.closed_preimages && k.pointwise && k.closure_image);

    const auto ix = Topology::indiscrete(Universe({"a", "b", "c"}));
    const auto dy = Topology::discrete(Universe({"1", "2", "3"}));
    const auto e = continuity_equivalences(map_of(ix, dy, {"1", "1", "2"}), ix, dy);
    EXPECT_FALSE(e.open_preimages || e.closed_preimages || e.pointwise || e.closure_image);
}

TEST(RoughFunctions, MinimalImages)
{
    const auto x = ex61_x();
    const auto y = ex51_y();
    const auto f = map_of(x, y, {"2", "1", "3"});
    EXPECT_EQ(minimal_image(f, y, 0), y.universe().subset({"2"}));
    EXPECT_EQ(minimal_image(f, y, 2), y.universe().full_set());
    const auto d = Topology::discrete(y.universe());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(minimal_image(f, d, i), d.universe().singleton(f(i)));
    const auto x2 = ex62_x();
    const auto y2 = ex62_y();
    const auto g = map_of(x2, y2, {"2", "3", "4", "3"});
    EXPECT_EQ(minimal_image(g, y2, 1), y2.universe().subset({"2", "3", "4"}));
}

TEST(RoughFunctions, RoughFunctionCheck)
{
    const auto x = ex61_x();
    const auto y = ex51_y();
    const auto f = map_of(x, y, {"2", "1", "3"});
    const auto dx = topological_rough_function_check(f, x, y, Side::domain);
    const auto cy = topological_rough_function_check(f, x, y, Side::codomain);
    EXPECT_FALSE(dx.holds);
    EXPECT_FALSE(cy.holds);
    EXPECT_EQ(dx.failing, std::vector<std::size_t>{2});
    EXPECT_EQ(cy.failing, std::vector<std::size_t>{2});
    EXPECT_EQ(cy.points[2].interior, y.universe().full_set());

    const auto ind = Topology::indiscrete(Universe({"a", "b"}));
    EXPECT_FALSE(topological_rough_function_check(FiniteFunction::identity(ind.universe()), ind, ind, Side::domain).holds);

    const auto x2 = ex62_x();
    const auto y2 = ex62_y();
    const auto g = map_of(x2, y2, {"2", "3", "4", "3"});
    const auto r = topological_rough_function_check(g, x2, y2, Side::domain);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.failing, std::vector<std::size_t>{3});
}

TEST(RoughFunctions, MinNeighbourhoodContinuity)
{
    const auto x = ex62_x();
    EXPECT_TRUE(min_neighborhood_continuity_check(FiniteFunction::identity(x.universe()), x, x).holds);
    const auto y = ex62_y();
    const auto g = map_of(x, y, {"2", "3", "4", "3"});
    const auto r = min_neighborhood_continuity_check(g, x, y);
    EXPECT_TRUE(r.points[0].holds());
    EXPECT_EQ(r.points[0].preimage, x.universe().subset({"a"}));
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.failing, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(r.points[1].preimage, x.universe().full_set());
}

TEST(RoughFunctions, GraphApproximation)
{
    const Universe u1({"a", "b", "c", "d", "e"});
    const Universe u2({"1", "2", "3", "4", "5", "6"});
    const auto g1 = Granulation::infer(u1, family_of(u1, {{"a", "c"}, {"a", "b"}, {"d", "e"}}));
    const auto g2 = Granulation::infer(u2, family_of(u2, {{"1", "3"}, {"2", "4", "5"}, {"3", "4"}, {"6"}}));
    const auto graph = BinaryRelation::from_pairs(u1, u2, Pairs{{"a", "1"}, {"a", "6"}, {"b", "6"}, {"c", "5"}, {"c", "6"}, {"e", "6"}});
    const auto ga = graph_approximations(g1, g2, graph);
    const auto& u = ga.blocks.universe();
    EXPECT_EQ(ga.lower, u.subset({"(a,6)", "(b,6)", "(c,6)"}));
    const auto printed = u.subset({"(a,1)", "(a,3)", "(c,1)", "(c,3)", "(a,6)", "(b,6)", "(c,6)", "(a,2)", "(a,4)",
                                   "(a,5)", "(c,2)", "(c,4)", "(c,5)", "(d,6)", "(e,6)"});
    EXPECT_EQ(ga.upper, printed | u.subset({"(b,1)", "(b,3)"}));
    EXPECT_TRUE(ga.rough());

    const auto s = graph_approximations(selective_granulation(u1), selective_granulation(u1),
                                        BinaryRelation::identity(u1));
    EXPECT_FALSE(s.rough());
    EXPECT_EQ(s.lower, s.graph);
}

TEST(RoughFunctions, ProductContinuity)
{
    const auto t1 = ex72_t1();
    const auto t2 = ex72_t2();
    const auto p = product_topology(t1, t2, GenerationMode::rectangles);
    const auto a3 = p.universe.index("(a,3)");
    const FiniteFunction f(p.universe, p.universe, std::vector<std::size_t>(12, a3));
    const auto r = product_rough_continuity_check(f, p.family);
    EXPECT_TRUE(r.holds);
    ASSERT_EQ(r.points.size(), 12U);
    for (const auto& pt : r.points) {
        EXPECT_TRUE(pt.holds());
        std::size_t nonempty_proper = 0;
        for (std::size_t k = 0; k < pt.members.size(); ++k) {
            EXPECT_EQ(pt.preimages[k], p.universe.full_set());
            if (!pt.members[k].is_full()) ++nonempty_proper;
        }
        // V1 = {a}×U2 and V2 = {a}×{3} plus the rectangles with a full factor.
        EXPECT_TRUE(std::find(pt.members.begin(), pt.members.end(), p.universe.subset({"(a,1)", "(a,2)", "(a,3)", "(a,4)"}))
                    != pt.members.end());
        EXPECT_TRUE(std::find(pt.members.begin(), pt.members.end(), p.universe.subset({"(a,3)"})) != pt.members.end());
        EXPECT_GE(nonempty_proper, 2U);
    }
    EXPECT_TRUE(product_rough_continuity_check(FiniteFunction::identity(p.universe), p.family).holds);

    const auto s1 = space({"p", "q"}, {{}, {"p"}, {"p", "q"}});
    const auto s2 = Topology::indiscrete(Universe({"p", "q"}));
    const auto sp = product_topology(s1, s2, GenerationMode::rectangles);
    std::vector<std::size_t> swap(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) swap[i * 2 + j] = j * 2 + i;
    const auto bad = product_rough_continuity_check(FiniteFunction(sp.universe, sp.universe, swap), sp.family);
    EXPECT_FALSE(bad.holds);
    EXPECT_TRUE(bad.points[0].failing.has_value());
}

// ---- properties -----------------------------------------------------------

TEST(RoughFunctionsProperty, FourWayAgreementExhaustive)
{
    const auto tops = all_topologies(3);
    const auto maps = all_maps(3, 3);
    std::size_t cases = 0;
    for (const auto& tx : tops) {
        for (const auto& ty : tops) {
            for (const auto& img : maps) {
                const FiniteFunction f(tx.universe(), ty.universe(), img);
                const auto e = continuity_equivalences(f, tx, ty);
                ASSERT_TRUE(e.agree());
                ASSERT_EQ(e.open_preimages, continuous_o(img, tx, ty));
                ++cases;
            }
        }
    }
    EXPECT_EQ(cases, 29U * 29U * 27U);
}

TEST(RoughFunctionsProperty, FourWayAgreementRandomFour)
{
    for (int i = 0; i < 2000; ++i) {
        const auto tx = random_topology(4);
        const auto ty = random_topology(4);
        std::vector<std::size_t> img(4);
        for (auto& v : img) v = uniform(0, 3);
        const FiniteFunction f(tx.universe(), ty.universe(), img);
        const auto e = continuity_equivalences(f, tx, ty);
        ASSERT_TRUE(e.agree());
        ASSERT_EQ(e.open_preimages, continuous_o(img, tx, ty));
    }
}

TEST(RoughFunctionsProperty, EvidenceConsistency)
{
    for (int i = 0; i < 1000; ++i) {
        const auto n = uniform(1, 5);
        const auto m = uniform(1, 5);
        const auto tx = random_topology(n);
        const auto ty = random_topology(m);
        std::vector<std::size_t> img(n);
        for (auto& v : img) v = uniform(0, m - 1);
        const FiniteFunction f(tx.universe(), ty.universe(), img);
        const auto v = classify_rough_continuity(f, tx, ty);
        ASSERT_EQ(v.evidence.size(), (std::size_t{1} << m) - 1);
        for (const auto& r : v.evidence) {
            ASSERT_TRUE(r.interior.subset_of(r.set) && r.set.subset_of(r.closure));
            ASSERT_EQ(f.preimage(r.set.complement()), f.preimage(r.set).complement());
            ASSERT_EQ(r.preimage_interior.bits(), preimage_o(img, interior_oracle(ty, r.set).bits()));
            ASSERT_EQ(r.interior_preimage_closure, interior_oracle(tx, r.preimage_closure));
            ASSERT_EQ(r.closure_preimage_interior, closure_oracle(tx, r.preimage_interior));
        }
    }
}

TEST(RoughFunctionsProperty, IntersectionTopologyPreservesContinuity)
{
    std::size_t checked = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto n = uniform(2, 4);
        const auto m = uniform(1, 3);
        const auto ty = random_topology(m);
        std::vector<std::size_t> img(n);
        for (auto& v : img) v = uniform(0, m - 1);
        std::vector<Topology> taus;
        for (std::size_t k = uniform(2, 3); k > 0; --k) taus.push_back(random_topology(n, 0.25));
        SetFamily meet = taus.front().opens();
        for (const auto& t : taus) meet = intersect(meet, t.opens());
        const auto tm = Topology::make(taus.front().universe(), meet);
        const FiniteFunction f(tm.universe(), ty.universe(), img);
        bool all_cont = true, all_totally = true;
        for (const auto& t : taus) {
            all_cont = all_cont && continuity_equivalences(f, t, ty).open_preimages;
            all_totally = all_totally && classify_rough_continuity(f, t, ty).totally;
        }
        if (all_cont) ASSERT_TRUE(continuity_equivalences(f, tm, ty).open_preimages);
        if (all_totally) {
            ASSERT_TRUE(classify_rough_continuity(f, tm, ty).totally);
            ++checked;
        }
    }
    EXPECT_GT(checked, 100U);
}

TEST(RoughFunctionsProperty, PreimageTopologyIsCoarsest)
{
    std::size_t cases = 0;
    const std::size_t n = 3;
    const auto x_tops = all_topologies(n);
    const Universe ux = Universe::indexed(n);
    for (int i = 0; i < 300; ++i) {
        std::vector<FiniteFunction> fs;
        std::vector<Topology> ts;
        for (std::size_t k = uniform(1, 2); k > 0; --k) {
            const auto m = uniform(1, 3);
            ts.push_back(random_topology(m));
            std::vector<std::size_t> img(n);
            for (auto& v : img) v = uniform(0, m - 1);
            fs.emplace_back(ux, ts.back().universe(), img);
        }
        const auto g = generate_topology_from_preimages(ux, fs, ts);
        ASSERT_TRUE(g.check.ok);
        const auto tx = g.topology();
        for (std::size_t k = 0; k < fs.size(); ++k) ASSERT_TRUE(continuity_equivalences(fs[k], tx, ts[k]).open_preimages);

        // (2) intersection of every topology making all f_i continuous.
        SetFamily meet = powerset(n);
        for (const auto& t : x_tops) {
            bool ok = true;
            for (std::size_t k = 0; k < fs.size(); ++k) ok = ok && continuous_o(fs[k].images(), t, ts[k]);
            if (ok) meet = intersect(meet, t.opens());
        }
        ASSERT_EQ(meet, tx.opens());

        // (5) g: Z -> X continuous iff every f_i ∘ g is.
        const auto tz = random_topology(3);
        for (const auto& img : all_maps(3, n)) {
            const FiniteFunction h(tz.universe(), ux, img);
            bool composed = true;
            for (std::size_t k = 0; k < fs.size(); ++k)
                composed = composed && continuity_equivalences(fs[k].after(h), tz, ts[k]).open_preimages;
            ASSERT_EQ(continuity_equivalences(h, tz, tx).open_preimages, composed);
            ++cases;
        }
    }
    EXPECT_GE(cases, 1000U);
}

TEST(RoughFunctionsProperty, GraphBracketsForPartitions)
{
    for (int i = 0; i < 1000; ++i) {
        const auto n1 = uniform(1, 4);
        const auto n2 = uniform(1, 4);
        auto part = [](std::size_t n) {
            std::vector<Bits> blocks(n, 0);
            for (std::size_t x = 0; x < n; ++x) blocks[uniform(0, n - 1)] |= Bits{1} << x;
            SetFamily f(n);
            for (auto b : blocks)
                if (b) f.insert(mask(b, n));
            return Granulation(Universe::indexed(n), f, GranulationFlavor::partition);
        };
        const auto g1 = part(n1);
        const auto g2 = part(n2);
        std::vector<std::size_t> img(n1);
        for (auto& v : img) v = uniform(0, n2 - 1);
        const auto graph = BinaryRelation::graph(FiniteFunction(g1.universe(), g2.universe(), img));
        const auto ga = graph_approximations(g1, g2, graph);
        ASSERT_TRUE(ga.lower.subset_of(ga.graph) && ga.graph.subset_of(ga.upper));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <decomp/harness.hpp>

using namespace decomp;

TEST_CASE("splitmix64 stream is stable") {
    // frozen from an independent transcription of the state transition
    SplitMix64 a(1234);
    CHECK(a.next() == 0xbb0cf61b2f181cdbULL);
    SplitMix64 b(1234);
    CHECK(b.next() == 0xbb0cf61b2f181cdbULL);
}

TEST_CASE("gen_planar_triangulation small cases") {
    EmbeddedGraph k3 = gen_planar_triangulation(3, 0);
    CHECK(k3.g.n == 3);
    CHECK(k3.g.num_edges() == 3);
    EmbeddedGraph k4 = gen_planar_triangulation(4, 0);
    CHECK(k4.g.n == 4);
    CHECK(k4.g.num_edges() == 6);  // the only 4-vertex triangulation is K4
    EmbeddedGraph big = gen_planar_triangulation(100, 9);
    CHECK(euler_genus(big) == 0);
    for (auto& f : trace_faces(big).faces) CHECK(f.walk.size() == 3);
    CHECK_THROWS_AS(gen_planar_triangulation(2, 0), ValidationError);
}

TEST_CASE("generators are seed-deterministic (byte-identical files)") {
    for (uint64_t seed : {7ULL, 99ULL}) {
        std::ostringstream a, b;
        write_embedded(a, gen_planar_triangulation(40, seed));
        write_embedded(b, gen_planar_triangulation(40, seed));
        CHECK(a.str() == b.str());
        std::ostringstream c, d;
        write_instance(c, gen_vortex_instance(30, 2, seed));
        write_instance(d, gen_vortex_instance(30, 2, seed));
        CHECK(c.str() == d.str());
        std::ostringstream e, f;
        write_fixture(e, gen_tree_decomposition_fixture("planar-layered", 60, seed));
        write_fixture(f, gen_tree_decomposition_fixture("planar-layered", 60, seed));
        CHECK(e.str() == f.str());
    }
}

TEST_CASE("gen_vortex_instance") {
    PlaneQuasiVortex l0 = gen_vortex_instance(20, 0, 3);
    for (int i = 0; i < static_cast<int>(l0.vx.ring.size()); ++i)
        CHECK(l0.vx.bags[i] == std::vector<int>{l0.vx.ring[i]});
    CHECK(validate_lambda(l0).ok());
    PlaneQuasiVortex l2 = gen_vortex_instance(50, 2, 5);
    CHECK(validate_lambda(l2).ok());
    CHECK(l2.vx.width() <= 2);
}

TEST_CASE("gen_tree_decomposition_fixture kinds") {
    TdFixture pc = gen_tree_decomposition_fixture("path-of-cliques", 21, 1);
    CHECK(validate_rtd(pc.td).ok());
    CHECK(pc.td.width() == 2);
    CHECK(pc.td.adhesion() <= 2);
    TdFixture kt = gen_tree_decomposition_fixture("k-tree", 30, 2);
    CHECK(validate_rtd(kt.td).ok());
    CHECK(kt.td.width() == 3);
    TdFixture pl = gen_tree_decomposition_fixture("planar-layered", 300, 3);
    CHECK(validate_rtd(pl.td).ok());
    CHECK(pl.td.adhesion() <= 3);
    for (const auto& nd : pl.nds) {
        Report rep = validate_node_decomposition(pl.td, nd, pl.b, pl.m, pl.suggested_d / 2.0,
                                                 pl.c, pl.q);
        CHECK(rep.ok());
    }
    CHECK_THROWS_AS(gen_tree_decomposition_fixture("nope", 10, 0), ValidationError);
}

TEST_CASE("brute_menger semantics") {
    Multigraph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK(brute_menger(g, {0}, {2}) == 0);
    // k parallel internally-disjoint x-y paths, measured on the interior
    for (int k = 1; k <= 4; ++k) {
        Multigraph p(2 + 2 * k);
        std::vector<int> first_layer, second_layer;
        for (int i = 0; i < k; ++i) {
            int a = 2 + 2 * i, b = 3 + 2 * i;
            p.add_edge(0, a);
            p.add_edge(a, b);
            p.add_edge(b, 1);
            first_layer.push_back(a);
            second_layer.push_back(b);
        }
        std::vector<int> interior_verts;
        for (int v = 2; v < p.n; ++v) interior_verts.push_back(v);
        InducedSubgraph interior = induced_subgraph(p, interior_verts);
        std::vector<int> xs, ys;
        for (int v : first_layer) xs.push_back(interior.new_of[v]);
        for (int v : second_layer) ys.push_back(interior.new_of[v]);
        CHECK(brute_menger(interior.g, xs, ys) == k);
    }
    Multigraph one(1);
    CHECK(brute_menger(one, {0}, {0}) == 1);
}

TEST_CASE("brute_menger equals the exhaustive search on small graphs") {
    SplitMix64 rng(71);
    for (int it = 0; it < 150; ++it) {
        int n = 2 + static_cast<int>(rng.below(9));
        Multigraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(100) < 35) g.add_edge(i, j);
        std::vector<int> xs, ys;
        for (int v = 0; v < n; ++v) {
            if (rng.below(100) < 30) xs.push_back(v);
            if (rng.below(100) < 30) ys.push_back(v);
        }
        CHECK(brute_menger(g, xs, ys) == exhaustive_disjoint_paths(g, xs, ys));
    }
}

TEST_CASE("brute_concentration_check") {
    Multigraph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    AlmostPartition ap;
    ap.parts = {{0, 3}, {1, 4}, {2, 5}};
    CHECK(brute_concentration_check(g, ap, 1, 0, {}));
    CHECK(brute_concentration_check(g, ap, 2, 1, {{0, 1, 2}}));
    CHECK_FALSE(brute_concentration_check(g, ap, 1, 0, {{0, 1, 2}}));
    // the check is existential in S_Q: a different witness may still work
    CHECK(brute_concentration_check(g, ap, 1, 2, {{0, 1, 2}}));
}

TEST_CASE("instance file round trip") {
    PlaneQuasiVortex lam = gen_vortex_instance(25, 2, 13);
    std::ostringstream os;
    write_instance(os, lam);
    std::istringstream is(os.str());
    PlaneQuasiVortex back = parse_instance(is);
    CHECK(back.g0plus.g.n == lam.g0plus.g.n);
    CHECK(back.g0plus.g.edges == lam.g0plus.g.edges);
    CHECK(back.w == lam.w);
    CHECK(back.disc.face == lam.disc.face);
    CHECK(back.disc.bs == lam.disc.bs);
    CHECK(back.total_n == lam.total_n);
    CHECK(back.vx.ring == lam.vx.ring);
    CHECK(back.vx.bags == lam.vx.bags);
    CHECK(back.vx.h_edges == lam.vx.h_edges);
    CHECK(validate_lambda(back).ok());
}

TEST_CASE("fixture file round trip") {
    TdFixture fx = gen_tree_decomposition_fixture("planar-layered", 80, 17);
    std::ostringstream os;
    write_fixture(os, fx);
    TdFixture back = parse_fixture_text(os.str());
    CHECK(back.g.n == fx.g.n);
    CHECK(back.td.num_nodes() == fx.td.num_nodes());
    CHECK(back.td.width() == fx.td.width());
    CHECK(back.nds.size() == fx.nds.size());
    CHECK(back.b == fx.b);
    CHECK(back.j == fx.j);
    CHECK(back.suggested_d == doctest::Approx(fx.suggested_d));
    TdReducedResult res = td_reduced(back.g, back.td, back.nds, back.b, back.m, back.c, back.q,
                                     back.j, back.suggested_d);
    CHECK(res.report.ok());
}

TEST_CASE("td_reduced on a planar-layered fixture") {
    TdFixture fx = gen_tree_decomposition_fixture("planar-layered", 200, 23);
    TdReducedResult res =
        td_reduced(fx.g, fx.td, fx.nds, fx.b, fx.m, fx.c, fx.q, fx.j, fx.suggested_d);
    CHECK(res.report.ok());
    CHECK(static_cast<double>(res.ap.loss.size()) <= res.loss_bound);
}

TEST_CASE("run report bookkeeping") {
    RunReport rr;
    rr.tool = "demo";
    rr.add_bound("width", 10, 8);
    rr.add_bound("loss", 7, 7.5, true);
    CHECK(rr.bounds[0].verdict == "pass");
    CHECK(rr.bounds[1].verdict == "flagged");
    CHECK(rr.pass());
    rr.add_bound("hard", 1, 2);
    CHECK_FALSE(rr.pass());
}

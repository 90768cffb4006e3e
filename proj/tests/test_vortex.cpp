#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <decomp/harness.hpp>

using namespace decomp;

TEST_CASE("validate_lambda accepts generator output and flags sabotage") {
    for (int k : {0, 1, 2}) {
        PlaneQuasiVortex lam = gen_vortex_instance(24, k, 1000 + k);
        Report rep = validate_lambda(lam);
        CHECK(rep.ok());
        CHECK(lam.vx.width() <= k);
    }
    // drop a bag member so C_v becomes disconnected
    PlaneQuasiVortex lam = gen_vortex_instance(30, 2, 5);
    int victim = -1, hits = 0;
    for (int v : lam.vx.extra_verts) {
        if (lam.vx.interval_of(v).size() >= 3) {
            victim = v;
            break;
        }
    }
    if (victim >= 0) {
        // remove the middle bag occurrence
        auto pos = lam.vx.interval_of(victim);
        int mid = pos[pos.size() / 2];
        auto& bag = lam.vx.bags[mid];
        bag.erase(std::remove(bag.begin(), bag.end(), victim), bag.end());
        Report rep = validate_lambda(lam);
        CHECK_FALSE(rep.ok());
        for (auto& l : rep.lines)
            if (l.verdict == Report::Fail &&
                l.detail.find(std::to_string(victim)) != std::string::npos)
                ++hits;
        CHECK(hits > 0);
    }
}

TEST_CASE("validate_lambda accepts an empty vortex (B' = empty)") {
    // a bare obstruction: the vortex machinery is vacuous
    EmbeddedGraph tri = gen_planar_triangulation(9, 71);
    PlaneQuasiVortex lam;
    lam.g0plus = tri;
    lam.w = {0};
    lam.total_n = tri.g.n;
    EmbeddedSubgraph sub = delete_vertices(tri, lam.w);
    FaceSet subfs = trace_faces(sub.eg);
    lam.disc.face = locate_obstruction_face(tri, lam.w, sub, subfs);
    lam.disc.bs = {};
    CHECK(validate_lambda(lam).ok());
}

TEST_CASE("partitioning runs are deterministic") {
    EmbeddedGraph tri = gen_planar_triangulation(80, 5);
    SplitMix64 rng(6);
    std::vector<int> w = random_connected_subgraph(tri.g, rng, 5);
    ConPlanarResult a = con_planar(tri, w);
    ConPlanarResult b = con_planar(tri, w);
    CHECK(a.parts == b.parts);
    CHECK(a.w_part == b.w_part);
    PlaneQuasiVortex lam = gen_vortex_instance(70, 2, 7);
    double d = 12.0 * 3 * std::sqrt(3.0 * lam.total_n);
    PipelineResult p1 = pipeline_planar_vortex(lam, d);
    PipelineResult p2 = pipeline_planar_vortex(lam, d);
    CHECK(p1.ap.parts == p2.ap.parts);
    CHECK(p1.ap.loss == p2.ap.loss);
}

TEST_CASE("modify_vortex hand example") {
    // ring x1 x2 x3 = 0 1 2, one extra vortex vertex v = 3 in the bags of
    // x1 and x2; deleting S = {x2} removes v and re-plants x2's slot
    QuasiVortex vx;
    vx.ring = {0, 1, 2};
    vx.bags = {{0, 3}, {1, 3}, {2}};
    vx.extra_verts = {3};
    vx.h_edges = {{3, 0}};
    vx.witness[0] = {0};
    vx.witness[1] = {1};
    vx.witness[2] = {2};
    vx.witness[3] = {0, 1};
    ModifyVortexResult r = modify_vortex(vx, {1});
    CHECK(r.x == std::vector<int>{1, 3});
    CHECK(r.vx.ring == std::vector<int>{0, 2});
    CHECK(r.vx.bags[0] == std::vector<int>{0});
    CHECK(r.vx.bags[1] == std::vector<int>{2});
    CHECK(r.vx.h_edges.empty());
    // s = empty: identity
    ModifyVortexResult r0 = modify_vortex(vx, {});
    CHECK(r0.x.empty());
    CHECK(r0.vx.ring == vx.ring);
    // width bound |X| <= (k+1)|S|
    PlaneQuasiVortex lam = gen_vortex_instance(40, 2, 11);
    int k = lam.vx.width();
    std::vector<int> s{lam.vx.ring[0], lam.vx.ring[2]};
    ModifyVortexResult r2 = modify_vortex(lam.vx, s);
    CHECK(static_cast<int>(r2.x.size()) <= (k + 1) * 2);
    CHECK(r2.vx.width() <= k);
    // s outside V(U) is an error
    CHECK_THROWS_AS(modify_vortex(vx, {99}), ValidationError);
}

TEST_CASE("apply_adjustment with S = empty swaps the plane graph") {
    PlaneQuasiVortex lam = gen_vortex_instance(30, 2, 17);
    CompletionResult comp = make_quasi_triangulation(lam.g0plus, lam.w, lam.disc);
    Adjustment adj;
    adj.g0minus = comp.eg;
    adj.s = {};
    adj.plane_map.resize(lam.g0plus.g.n);
    std::iota(adj.plane_map.begin(), adj.plane_map.end(), 0);
    AppliedAdjustment out = apply_adjustment(lam, adj);
    CHECK(out.new_loss.empty());
    CHECK(out.lam.vx.ring == lam.vx.ring);
    CHECK(validate_lambda(out.lam).ok());
}

TEST_CASE("apply_adjustment with a deleted vertex") {
    PlaneQuasiVortex lam = gen_vortex_instance(30, 1, 19);
    int k = std::max(0, lam.vx.width());
    // pick a non-boundary, non-W plane vertex
    std::vector<char> skip(lam.g0plus.g.n, 0);
    for (int v : lam.w) skip[v] = 1;
    for (int v : lam.vx.ring) skip[v] = 1;
    int victim = -1;
    for (int v = 0; v < lam.g0plus.g.n && victim < 0; ++v)
        if (!skip[v]) victim = v;
    REQUIRE(victim >= 0);
    EmbeddedSubgraph del = delete_vertices(lam.g0plus, {victim});
    // complete to keep it a plane graph with the facial triangles of g - S
    Adjustment adj;
    adj.g0minus = del.eg;
    adj.s = {victim};
    adj.plane_map = del.new_of;
    AppliedAdjustment out = apply_adjustment(lam, adj);
    CHECK(static_cast<int>(out.new_loss.size()) <= (k + 1) * 1);
    CHECK(validate_lambda(out.lam).ok());

    // boundary vertex: the bag union enters the loss, matching modify_vortex
    int bvict = lam.vx.ring[0];
    EmbeddedSubgraph del2 = delete_vertices(lam.g0plus, {bvict});
    Adjustment adj2;
    adj2.g0minus = del2.eg;
    adj2.s = {bvict};
    adj2.plane_map = del2.new_of;
    AppliedAdjustment out2 = apply_adjustment(lam, adj2);
    ModifyVortexResult mv = modify_vortex(lam.vx, {bvict});
    std::vector<int> expect = mv.x;
    expect.push_back(bvict);
    expect = sorted_unique(expect);
    CHECK(out2.new_loss == expect);
    CHECK(static_cast<int>(out2.new_loss.size()) <= (k + 1) * 1 + 0 + 1);
}

namespace {

PartitionedLambda pipeline_front(const PlaneQuasiVortex& lam0, double dprime) {
    CompletionResult comp = make_quasi_triangulation(lam0.g0plus, lam0.w, lam0.disc);
    ConPlanarResult cp = con_planar(comp.eg, lam0.w);
    Adjustment adj;
    adj.g0minus = comp.eg;
    adj.plane_map.resize(lam0.g0plus.g.n);
    std::iota(adj.plane_map.begin(), adj.plane_map.end(), 0);
    AppliedAdjustment applied = apply_adjustment(lam0, adj);
    PartitionedLambda pl;
    pl.lam = applied.lam;
    pl.parts = cp.parts;
    pl.w_part = cp.w_part;
    pl.loss = applied.new_loss;
    pl.k = std::max(0, lam0.vx.width());
    pl.b = 2;
    (void)dprime;
    return pl;
}

}  // namespace

TEST_CASE("find_break produces a valid break within its size bound") {
    PlaneQuasiVortex lam = gen_vortex_instance(120, 2, 23);
    double n = static_cast<double>(lam.total_n);
    double dprime = 12.0 * std::sqrt(3.0 * n);
    PartitionedLambda pl = pipeline_front(lam, dprime);
    REQUIRE(validate_partitioned_lambda(pl).ok());
    FindBreakResult fb = find_break(pl, dprime);
    CHECK(validate_break(fb.pl, fb.brk).ok());
    CHECK(static_cast<double>(fb.brk.members.size()) <= fb.size_bound);
    CHECK(fb.pl.near_width() <= dprime);
    if (fb.bq_within_planar_bound)
        CHECK(static_cast<double>(fb.brk.members.size()) <= 7.0 * n / dprime);
    // d below the near-width is an error
    CHECK_THROWS_AS(find_break(pl, 0.5), ValidationError);
}

TEST_CASE("find_breakpoints: definition and the small examples") {
    CHECK(find_breakpoints({0, 1, 2, 3}, {}).empty());
    // one member touching the boundary at positions {1, 4, 6} of an 8-ring
    std::vector<int> ring{10, 11, 12, 13, 14, 15, 16, 17};
    std::vector<std::vector<int>> members{{11, 14, 16}};
    std::vector<int> s = find_breakpoints(ring, members);
    CHECK(s == std::vector<int>{11, 16});  // first and last in the anchored order
    // at most two per member
    std::vector<std::vector<int>> ms{{11, 12, 13, 14}, {15, 16}};
    CHECK(find_breakpoints(ring, ms).size() <= 4);
}

TEST_CASE("find_breakpoints: both lemma properties on fuzz cases") {
    SplitMix64 rng(61);
    int done = 0;
    for (int it = 0; it < 120 && done < 60; ++it) {
        int n = 10 + static_cast<int>(rng.below(25));
        PlaneQuasiVortex lam = gen_vortex_instance(n, 0, rng.next());
        EmbeddedSubgraph sub = delete_vertices(lam.g0plus, lam.w);
        Multigraph g0p = sub.eg.g;
        // translate to g0' ids
        std::vector<int> ring;
        for (int v : lam.vx.ring) ring.push_back(sub.new_of[v]);
        int m = 1 + static_cast<int>(rng.below(4));
        std::vector<std::vector<int>> members;
        std::vector<char> used(g0p.n, 0);
        for (int i = 0; i < m; ++i) {
            std::vector<int> h = random_connected_subgraph(
                g0p, rng, 1 + static_cast<int>(rng.below(5)), used);
            if (h.empty()) continue;
            for (int v : h) used[v] = 1;
            members.push_back(h);
        }
        if (members.empty()) continue;
        std::vector<int> s = find_breakpoints(ring, members);
        CHECK(s.size() <= 2 * members.size());
        CHECK(breakpoints_properties_hold(g0p, ring, members, s));
        ++done;
    }
    CHECK(done >= 40);
}

TEST_CASE("use_break: empty break on a one-part instance gives the identity raise") {
    PlaneQuasiVortex lam = gen_vortex_instance(8, 0, 3);
    PartitionedLambda pl;
    pl.lam = lam;
    pl.k = 0;
    pl.b = 2;
    // two parts: W and everything else
    std::vector<int> rest;
    std::vector<char> inw(lam.g0plus.g.n, 0);
    for (int v : lam.w) inw[v] = 1;
    for (int v = 0; v < lam.g0plus.g.n; ++v)
        if (!inw[v]) rest.push_back(v);
    pl.parts = {sorted_unique(lam.w), rest};
    pl.w_part = 0;
    BreakSet empty_break;
    UseBreakResult ub = use_break(pl, empty_break);
    CHECK(ub.s.empty());
    CHECK(ub.pl.loss.empty());
    for (int v = 0; v < lam.g0plus.g.n; ++v)
        CHECK(ub.raise.tau[v] == (inw[v] ? 0 : 1));
    CHECK(validate_raise(ub.pl, ub.raise).ok());
}

TEST_CASE("use_break on a corpus instance produces a valid raise") {
    PlaneQuasiVortex lam = gen_vortex_instance(90, 2, 29);
    double n = static_cast<double>(lam.total_n);
    double dprime = 12.0 * std::sqrt(3.0 * n);
    PartitionedLambda pl = pipeline_front(lam, dprime);
    FindBreakResult fb = find_break(pl, dprime);
    UseBreakResult ub = use_break(fb.pl, fb.brk);
    CHECK(ub.s.size() <= 4 * fb.brk.members.size());
    CHECK(validate_raise(ub.pl, ub.raise).ok());
    // the loss grows by at most (k+1)|S|
    CHECK(ub.pl.loss.size() <= pl.loss.size() + (pl.k + 1) * ub.s.size());
}

TEST_CASE("raise_to_partition: vortexless identity raise splits by components") {
    PlaneQuasiVortex lam = gen_vortex_instance(12, 0, 31);
    PartitionedLambda pl;
    pl.lam = lam;
    pl.k = 0;
    pl.b = 2;
    std::vector<int> rest;
    std::vector<char> inw(lam.g0plus.g.n, 0);
    for (int v : lam.w) inw[v] = 1;
    for (int v = 0; v < lam.g0plus.g.n; ++v)
        if (!inw[v]) rest.push_back(v);
    pl.parts = {sorted_unique(lam.w), rest};
    pl.w_part = 0;
    UseBreakResult ub = use_break(pl, BreakSet{});
    RaisedPartition rp = raise_to_partition(ub.pl, ub.raise);
    CHECK(rp.report.ok());
    CHECK(rp.ap.loss.empty());
    CHECK(rp.ap.parts.size() == 2);  // connected instance: one component
}

TEST_CASE("qualifying boundary intervals are union-closed") {
    PlaneQuasiVortex lam = gen_vortex_instance(40, 2, 37);
    EmbeddedSubgraph sub = delete_vertices(lam.g0plus, lam.w);
    int t = static_cast<int>(lam.vx.ring.size());
    auto g0_adjacent = [&](int pa, int pb) {
        return sub.eg.g.has_edge(sub.new_of[lam.vx.ring[pa]], sub.new_of[lam.vx.ring[pb]]);
    };
    // qualifying arcs: contiguous, consecutive positions adjacent in g0
    auto qualifies = [&](const std::vector<int>& arc) {
        for (std::size_t i = 0; i + 1 < arc.size(); ++i)
            if (!g0_adjacent(arc[i], arc[i + 1])) return false;
        return true;
    };
    std::vector<std::vector<int>> arcs;
    for (int st = 0; st < t; ++st) {
        std::vector<int> arc;
        for (int len = 1; len <= t; ++len) {
            arc.push_back((st + len - 1) % t);
            if (!qualifies(arc)) break;
            arcs.push_back(arc);
        }
    }
    for (const auto& a1 : arcs)
        for (const auto& a2 : arcs) {
            std::vector<int> inter;
            for (int p : a1)
                if (std::find(a2.begin(), a2.end(), p) != a2.end()) inter.push_back(p);
            if (inter.empty()) continue;
            std::vector<int> uni = sorted_unique([&] {
                std::vector<int> u = a1;
                u.insert(u.end(), a2.begin(), a2.end());
                return u;
            }());
            // the union must again be a qualifying arc set: contiguous and
            // g0-adjacent consecutively
            CHECK(interval_connected(uni, t, t >= 3));
        }
}

TEST_CASE("validators reject sabotaged raises and breaks") {
    PlaneQuasiVortex lam = gen_vortex_instance(60, 2, 53);
    double n = static_cast<double>(lam.total_n);
    double dprime = 12.0 * std::sqrt(3.0 * n);
    PartitionedLambda pl = pipeline_front(lam, dprime);
    FindBreakResult fb = find_break(pl, dprime);
    UseBreakResult ub = use_break(fb.pl, fb.brk);
    REQUIRE(validate_raise(ub.pl, ub.raise).ok());
    // move a plane non-boundary vertex out of its own part: clause 1 breaks
    std::vector<char> inring(lam.g0plus.g.n, 0);
    for (int x : ub.pl.lam.vx.ring) inring[x] = 1;
    std::vector<char> inw(lam.g0plus.g.n, 0);
    for (int x : ub.pl.lam.w) inw[x] = 1;
    for (int v = 0; v < lam.g0plus.g.n; ++v) {
        if (inring[v] || inw[v]) continue;
        Raise bad = ub.raise;
        bad.tau[v] = (bad.tau[v] + 1) % static_cast<int>(ub.pl.parts.size());
        CHECK_FALSE(validate_raise(ub.pl, bad).ok());
        break;
    }
    // a break member that is neither a part nor boundary-free is rejected
    if (!fb.brk.members.empty()) {
        BreakSet bad = fb.brk;
        bad.members.push_back({ub.pl.lam.vx.ring[0]});
        bad.part_of.push_back(-1);
        CHECK_FALSE(validate_break(fb.pl, bad).ok());
    }
}

TEST_CASE("pipeline handles the smallest instances") {
    for (int n : {4, 5, 6}) {
        for (int k : {0, 1}) {
            PlaneQuasiVortex lam = gen_vortex_instance(n, k, 100 + n + k);
            double nn = static_cast<double>(lam.total_n);
            int kk = std::max(0, lam.vx.width());
            double d = 12.0 * (kk + 1) * std::sqrt(3.0 * nn);
            PipelineResult pr = pipeline_planar_vortex(lam, d);
            CHECK(pr.report.ok());
        }
    }
}

TEST_CASE("pipeline on small instances (k = 0 degenerates to con_planar)") {
    PlaneQuasiVortex lam = gen_vortex_instance(40, 0, 41);
    double n = static_cast<double>(lam.total_n);
    double d = 12.0 * std::sqrt(3.0 * n);
    PipelineResult pr = pipeline_planar_vortex(lam, d);
    CHECK(pr.report.ok());
    CHECK(static_cast<double>(pr.ap.loss.size()) <= pr.loss_bound);
    Multigraph total = lam.total_graph();
    for (const auto& part : pr.ap.parts)
        CHECK(static_cast<double>(part.size()) <= pr.width_bound);
}

TEST_CASE("pipeline on vortex instances validates end to end") {
    SplitMix64 rng(43);
    for (int k : {1, 2, 3}) {
        int n = 60 + static_cast<int>(rng.below(60));
        PlaneQuasiVortex lam = gen_vortex_instance(n, k, rng.next());
        double nn = static_cast<double>(lam.total_n);
        double d = 12.0 * (k + 1) * std::sqrt(3.0 * nn);
        PipelineResult pr = pipeline_planar_vortex(lam, d);
        CHECK(pr.report.ok());
        CHECK(static_cast<double>(pr.ap.loss.size()) <= pr.loss_bound);
        CHECK(static_cast<double>(pr.ap.width()) <= d);
        // witnesses attached for both concentration families
        REQUIRE(pr.ap.witnesses.size() == 2);
        CHECK(pr.ap.witnesses[0].b == 1);
        CHECK(pr.ap.witnesses[1].b == 2);
        for (const auto& fam : pr.ap.witnesses)
            for (const auto& [q, s] : fam.per_clique)
                CHECK(static_cast<int>(s.size()) <= fam.m);
    }
}

TEST_CASE("concentration witnesses audited by the brute oracle") {
    // a small instance so that the exhaustive check is feasible
    PlaneQuasiVortex lam = gen_vortex_instance(14, 2, 47);
    if (lam.total_n > 25) return;
    double nn = static_cast<double>(lam.total_n);
    double d = 12.0 * 3 * std::sqrt(3.0 * nn);
    PipelineResult pr = pipeline_planar_vortex(lam, d);
    REQUIRE(pr.report.ok());
    Multigraph total = lam.total_graph();
    // VC(Gamma): cliques of H' (vortex edges only)
    Multigraph h(lam.total_n);
    for (auto& e : lam.vx.h_edges)
        if (e.first != e.second) h.add_edge(e.first, e.second);
    std::vector<std::vector<int>> vc;
    for (auto& e : h.edges) vc.push_back({e[0], e[1]});
    for (int v = 0; v < h.n; ++v)
        if (h.degree(v) > 0) vc.push_back({v});
    // triangles in H'
    for (int a = 0; a < h.n; ++a)
        for (auto [b, e1] : h.adj[a])
            for (auto [c, e2] : h.adj[b])
                if (a < b && b < c && h.has_edge(a, c)) vc.push_back({a, b, c});
    int k = std::max(0, lam.vx.width());
    // family 1 parameters: (1, b(b+1)(k+1), VC) with b = 2
    bool ok = brute_concentration_check(total, pr.ap, 1, std::min(6, 2 * 3 * (k + 1)), vc);
    CHECK(ok);
}

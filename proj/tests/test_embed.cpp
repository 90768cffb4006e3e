#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <decomp/harness.hpp>

using namespace decomp;

namespace {

// plane triangle with consistent rotations
EmbeddedGraph plane_k3() {
    EmbeddedGraph eg(3);
    int e0 = eg.g.add_edge(0, 1);
    int e1 = eg.g.add_edge(1, 2);
    int e2 = eg.g.add_edge(2, 0);
    eg.sig = {1, 1, 1};
    eg.rot[0] = {{e0, 0}, {e2, 1}};
    eg.rot[1] = {{e1, 0}, {e0, 1}};
    eg.rot[2] = {{e2, 0}, {e1, 1}};
    return eg;
}

// plane K4: outer triangle 0,1,2 with 3 in the center
EmbeddedGraph plane_k4() {
    EmbeddedGraph eg(4);
    int E0 = eg.g.add_edge(0, 1);
    int E1 = eg.g.add_edge(1, 2);
    int E2 = eg.g.add_edge(2, 0);
    int E3 = eg.g.add_edge(0, 3);
    int E4 = eg.g.add_edge(1, 3);
    int E5 = eg.g.add_edge(2, 3);
    eg.sig.assign(6, 1);
    eg.rot[0] = {{E0, 0}, {E3, 0}, {E2, 1}};
    eg.rot[1] = {{E1, 0}, {E4, 0}, {E0, 1}};
    eg.rot[2] = {{E2, 0}, {E5, 0}, {E1, 1}};
    eg.rot[3] = {{E5, 1}, {E3, 1}, {E4, 1}};
    return eg;
}

// planar cube: outer square 0..3, inner square 4..7
EmbeddedGraph plane_cube() {
    EmbeddedGraph eg(8);
    int a0 = eg.g.add_edge(0, 1), a1 = eg.g.add_edge(1, 2), a2 = eg.g.add_edge(2, 3),
        a3 = eg.g.add_edge(3, 0);
    int b0 = eg.g.add_edge(4, 5), b1 = eg.g.add_edge(5, 6), b2 = eg.g.add_edge(6, 7),
        b3 = eg.g.add_edge(7, 4);
    int c0 = eg.g.add_edge(0, 4), c1 = eg.g.add_edge(1, 5), c2 = eg.g.add_edge(2, 6),
        c3 = eg.g.add_edge(3, 7);
    eg.sig.assign(12, 1);
    eg.rot[0] = {{a0, 0}, {c0, 0}, {a3, 1}};
    eg.rot[1] = {{a1, 0}, {c1, 0}, {a0, 1}};
    eg.rot[2] = {{a2, 0}, {c2, 0}, {a1, 1}};
    eg.rot[3] = {{a3, 0}, {c3, 0}, {a2, 1}};
    eg.rot[4] = {{b0, 0}, {b3, 1}, {c0, 1}};
    eg.rot[5] = {{b1, 0}, {b0, 1}, {c1, 1}};
    eg.rot[6] = {{c2, 1}, {b2, 0}, {b1, 1}};
    eg.rot[7] = {{b2, 1}, {c3, 1}, {b3, 0}};
    return eg;
}

// k x k toroidal grid with the row/column rotation
EmbeddedGraph toroidal_grid(int k) {
    EmbeddedGraph eg(k * k);
    auto id = [&](int i, int j) { return ((i % k) + k) % k * k + ((j % k) + k) % k; };
    std::vector<std::vector<int>> right(k, std::vector<int>(k)), down(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            right[i][j] = eg.g.add_edge(id(i, j), id(i, j + 1));
            down[i][j] = eg.g.add_edge(id(i, j), id(i + 1, j));
        }
    eg.sig.assign(eg.g.num_edges(), 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            // right, down, left, up
            eg.rot[id(i, j)] = {{right[i][j], 0},
                                {down[i][j], 0},
                                {right[i][(j + k - 1) % k], 1},
                                {down[(i + k - 1) % k][j], 1}};
        }
    return eg;
}

EmbeddedGraph bouquet_genus2() {
    EmbeddedGraph eg(1);
    int a = eg.g.add_edge(0, 0);
    int b = eg.g.add_edge(0, 0);
    eg.sig = {1, 1};
    eg.rot[0] = {{a, 0}, {b, 0}, {a, 1}, {b, 1}};
    return eg;
}

EmbeddedGraph plane_cycle(int n) {
    EmbeddedGraph eg(n);
    std::vector<int> es;
    for (int i = 0; i < n; ++i) es.push_back(eg.g.add_edge(i, (i + 1) % n));
    eg.sig.assign(n, 1);
    for (int i = 0; i < n; ++i)
        eg.rot[i] = {{es[i], 0}, {es[(i + n - 1) % n], 1}};
    return eg;
}

}  // namespace

TEST_CASE("trace_faces: plane K3 has two triangular faces") {
    FaceSet fs = trace_faces(plane_k3());
    REQUIRE(fs.faces.size() == 2);
    CHECK(fs.faces[0].walk.size() == 3);
    CHECK(fs.faces[1].walk.size() == 3);
    CHECK(fs.total_length() == 6);
}

TEST_CASE("trace_faces: planar cube has six quadrilateral faces") {
    EmbeddedGraph cube = plane_cube();
    FaceSet fs = trace_faces(cube);
    REQUIRE(fs.faces.size() == 6);  // chi = 8 - 12 + 6 = 2
    for (auto& f : fs.faces) CHECK(f.walk.size() == 4);
    CHECK(euler_genus(cube) == 0);
}

TEST_CASE("trace_faces: 3x3 toroidal grid has nine quadrilateral faces") {
    EmbeddedGraph tg = toroidal_grid(3);
    FaceSet fs = trace_faces(tg);
    REQUIRE(fs.faces.size() == 9);  // 9 - 18 + 9 = 0
    for (auto& f : fs.faces) CHECK(f.walk.size() == 4);
    CHECK(euler_genus(tg) == 2);
}

TEST_CASE("euler_genus basics") {
    CHECK(euler_genus(plane_k3()) == 0);
    EmbeddedGraph single(1);
    CHECK(euler_genus(single) == 0);  // f = 1
    CHECK(euler_genus(bouquet_genus2()) == 2);
    // projective plane: one -1 loop
    EmbeddedGraph pp(1);
    pp.g.add_edge(0, 0);
    pp.sig = {-1};
    pp.rot[0] = {{0, 0}, {0, 1}};
    CHECK(euler_genus(pp) == 1);
    EmbeddedGraph disc2(2);
    CHECK_THROWS_AS(euler_genus(disc2), ValidationError);
}

TEST_CASE("facial_triangles") {
    auto t3 = facial_triangles(plane_k3());
    REQUIRE(t3.size() == 1);  // both faces give the same triple
    CHECK(*t3.begin() == std::array<int, 3>{0, 1, 2});
    CHECK(facial_triangles(plane_cycle(4)).empty());
    CHECK(facial_triangles(plane_k4()).size() == 4);
}

TEST_CASE("underlying_cycle") {
    EmbeddedGraph hex = plane_cycle(6);
    FaceSet fs = trace_faces(hex);
    CleanDisc d0{0, {}};
    UnderlyingCycle u0 = underlying_cycle(hex, fs, d0);
    CHECK(u0.u.n == 0);
    CleanDisc d2{0, {0, 3}};
    UnderlyingCycle u2 = underlying_cycle(hex, fs, d2);
    CHECK(u2.u.n == 2);
    CHECK(u2.u.num_edges() == 1);  // a path
    CleanDisc d3{0, {0, 2, 4}};
    UnderlyingCycle u3 = underlying_cycle(hex, fs, d3);
    CHECK(u3.u.n == 3);
    CHECK(u3.u.num_edges() == 3);  // a 3-cycle on alternate vertices
}

TEST_CASE("check_noncrossing trivial cases") {
    EmbeddedGraph hex = plane_cycle(6);
    FaceSet fs = trace_faces(hex);
    CleanDisc d{0, {0, 1, 2, 3, 4, 5}};
    if (!validate_disc(hex, fs, d).ok()) d.face = 1;
    REQUIRE(validate_disc(hex, fs, d).ok());
    // h1 misses the boundary entirely
    CHECK(check_noncrossing(hex, fs, d, {}, {0, 1}));
    // fewer than four distinct vertices on the disc
    CleanDisc d3{d.face, {0, 1, 2}};
    CHECK(check_noncrossing(hex, fs, d3, {0}, {1}));
    CHECK(check_noncrossing(hex, fs, d, {0, 1}, {2, 3}));
    // negative control for the checker itself: a fabricated boundary order
    // that no real disc realizes makes {0,1} and {2,3} interleave
    CleanDisc fake{d.face, {0, 2, 1, 3}};
    CHECK_FALSE(check_noncrossing(hex, fs, fake, {0, 1}, {2, 3}));
    // preconditions
    CHECK_THROWS_AS(check_noncrossing(hex, fs, d, {0, 2}, {1}), ValidationError);
    CHECK_THROWS_AS(check_noncrossing(hex, fs, d, {0, 1}, {0}), ValidationError);
}

TEST_CASE("check_noncrossing never fails on connected disjoint subgraphs (fuzz)") {
    SplitMix64 rng(23);
    int done = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 6 + static_cast<int>(rng.below(20));
        EmbeddedGraph eg = gen_planar_triangulation(n, rng.next());
        FaceSet fs = trace_faces(eg);
        int fi = static_cast<int>(rng.below(fs.faces.size()));
        std::vector<int> fv = face_vertices(eg, fs.faces[fi]);
        std::vector<int> bs;
        for (int v : fv)
            if (rng.coin() && std::find(bs.begin(), bs.end(), v) == bs.end()) bs.push_back(v);
        CleanDisc d{fi, bs};
        if (!validate_disc(eg, fs, d).ok()) continue;
        std::vector<int> h1 =
            random_connected_subgraph(eg.g, rng, 1 + static_cast<int>(rng.below(4)));
        std::vector<char> forb(eg.g.n, 0);
        for (int v : h1) forb[v] = 1;
        std::vector<int> h2 =
            random_connected_subgraph(eg.g, rng, 1 + static_cast<int>(rng.below(4)), forb);
        if (h1.empty() || h2.empty()) continue;
        CHECK(check_noncrossing(eg, fs, d, h1, h2));
        ++done;
    }
    CHECK(done > 50);
}

TEST_CASE("validate_embedding reports") {
    CHECK(validate_embedding(plane_k3()).ok());
    // two disjoint triangles: disconnected
    EmbeddedGraph two(6);
    for (int base : {0, 3}) {
        int e0 = two.g.add_edge(base, base + 1);
        int e1 = two.g.add_edge(base + 1, base + 2);
        int e2 = two.g.add_edge(base + 2, base);
        two.sig.insert(two.sig.end(), {1, 1, 1});
        two.rot[base] = {{e0, 0}, {e2, 1}};
        two.rot[base + 1] = {{e1, 0}, {e0, 1}};
        two.rot[base + 2] = {{e2, 0}, {e1, 1}};
    }
    Report rep = validate_embedding(two);
    CHECK_FALSE(rep.ok());
    // malformed rotation: duplicated end
    EmbeddedGraph bad = plane_k3();
    bad.rot[0].push_back(bad.rot[0][0]);
    CHECK_FALSE(validate_embedding(bad).ok());
    // toroidal grid: ok, genus 2
    Report trep = validate_embedding(toroidal_grid(3));
    CHECK(trep.ok());
}

TEST_CASE("face walks cover each edge end twice (fuzz)") {
    SplitMix64 rng(29);
    for (int it = 0; it < 60; ++it) {
        int n = 3 + static_cast<int>(rng.below(30));
        EmbeddedGraph eg = gen_planar_triangulation(n, rng.next());
        FaceSet fs = trace_faces(eg);
        CHECK(fs.total_length() == 2u * static_cast<std::size_t>(eg.g.num_edges()));
    }
}

TEST_CASE("euler_genus invariant under relabeling (fuzz)") {
    SplitMix64 rng(31);
    for (int it = 0; it < 40; ++it) {
        int n = 4 + static_cast<int>(rng.below(12));
        EmbeddedGraph eg = it % 2 ? gen_planar_triangulation(n, rng.next()) : toroidal_grid(3);
        int g0 = euler_genus(eg);
        std::vector<int> perm(eg.g.n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = eg.g.n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(i + 1)]);
        EmbeddedGraph pg(eg.g.n);
        for (int e = 0; e < eg.g.num_edges(); ++e) {
            pg.g.add_edge(perm[eg.g.edges[e][0]], perm[eg.g.edges[e][1]]);
            pg.sig.push_back(eg.sig[e]);
        }
        for (int v = 0; v < eg.g.n; ++v) pg.rot[perm[v]] = eg.rot[v];
        CHECK(euler_genus(pg) == g0);
    }
}

TEST_CASE("normalize_orientation undoes vertex flips") {
    EmbeddedGraph cube = plane_cube();
    EmbeddedGraph flipped = cube;
    for (int v : {1, 6}) std::reverse(flipped.rot[v].begin(), flipped.rot[v].end());
    for (int e = 0; e < flipped.g.num_edges(); ++e) {
        int u = flipped.g.edges[e][0], w = flipped.g.edges[e][1];
        bool fu = (u == 1 || u == 6), fw = (w == 1 || w == 6);
        if (fu != fw) flipped.sig[e] = -1;
    }
    CHECK(euler_genus(flipped) == 0);
    EmbeddedGraph back = normalize_orientation(flipped);
    for (int s : back.sig) CHECK(s == 1);
    CHECK(euler_genus(back) == 0);
    CHECK(trace_faces(back).faces.size() == trace_faces(cube).faces.size());
    // the bouquet with a -1 loop is non-orientable
    EmbeddedGraph pp(1);
    pp.g.add_edge(0, 0);
    pp.sig = {-1};
    pp.rot[0] = {{0, 0}, {0, 1}};
    CHECK_THROWS_AS(normalize_orientation(pp), ValidationError);
}

TEST_CASE("embedded text format round trip") {
    EmbeddedGraph eg = plane_k4();
    std::ostringstream os;
    write_embedded(os, eg);
    std::istringstream is(os.str());
    EmbeddedGraph h = parse_embedded(is);
    CHECK(h.g.n == eg.g.n);
    CHECK(h.g.edges == eg.g.edges);
    CHECK(h.sig == eg.sig);
    for (int v = 0; v < eg.g.n; ++v) CHECK(h.rot[v].size() == eg.rot[v].size());
    CHECK(euler_genus(h) == 0);
    std::ostringstream ds;
    write_disc(ds, CleanDisc{2, {0, 2, 3}});
    CleanDisc d = parse_disc_line(ds.str());
    CHECK(d.face == 2);
    CHECK(d.bs == std::vector<int>{0, 2, 3});
}

TEST_CASE("parse errors carry the offending location") {
    std::istringstream bad("emb 2 1\ne 1 1 9 1\nr 1 1a\nr 2 1b\n");
    try {
        parse_embedded(bad);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream badend("emb 2 1\ne 1 1 2 1\nr 1 9a\nr 2 1b\n");
    CHECK_THROWS_AS(parse_embedded(badend), ValidationError);
}

TEST_CASE("edge insertion splits a face into a triangle and a shorter face") {
    EmbeddedGraph hex = plane_cycle(6);
    FaceSet fs = trace_faces(hex);
    REQUIRE(fs.faces.size() == 2);
    const Face& f = fs.faces[0];
    insert_edge_at_corners(hex, f, 0, 2);
    FaceSet fs2 = trace_faces(hex);
    REQUIRE(fs2.faces.size() == 3);
    std::vector<std::size_t> lens;
    for (auto& ff : fs2.faces) lens.push_back(ff.walk.size());
    std::sort(lens.begin(), lens.end());
    CHECK(lens == std::vector<std::size_t>{3, 5, 6});
    CHECK(euler_genus(hex) == 0);
}

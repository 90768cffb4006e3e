#ifndef DECOMP_HARNESS_HPP
#define DECOMP_HARNESS_HPP

// Instance generators, brute-force oracles, and file formats for the whole
// artifact. All randomness flows through a splitmix64 stream so corpora are
// reproducible bit-exactly from the seed.

#include "surface.hpp"
#include "vortex.hpp"

namespace decomp {

// splitmix64: state advances by 0x9E3779B97F4A7C15; output is the mixed
// pre-state (Steele, Lea, Flood / xorshift-mix constants).
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool coin() { return next() & 1; }
};

// ---------------------------------------------------------------------------
// gen_planar_triangulation: iterated insertion of a vertex into a uniformly
// random face, joined to its three corners. Half-edge arrays internally,
// converted to a rotation system at the end.

inline EmbeddedGraph gen_planar_triangulation(int n, uint64_t seed) {
    if (n < 3) throw ValidationError("gen_planar_triangulation: n must be at least 3");
    SplitMix64 rng(seed);
    std::vector<int> to, nextf;  // per dart
    auto add_dart = [&](int head) {
        to.push_back(head);
        nextf.push_back(-1);
        return static_cast<int>(to.size()) - 1;
    };
    // K3: darts 0..5, edge i = darts (2i, 2i+1)
    // inner face 0->1->2, outer face 0->2->1
    add_dart(1);  // 0: 0->1
    add_dart(0);  // 1: 1->0
    add_dart(2);  // 2: 1->2
    add_dart(1);  // 3: 2->1
    add_dart(0);  // 4: 2->0
    add_dart(2);  // 5: 0->2
    nextf[0] = 2;
    nextf[2] = 4;
    nextf[4] = 0;
    nextf[5] = 3;
    nextf[3] = 1;
    nextf[1] = 5;
    std::vector<int> face_rep{0, 5};
    int verts = 3;
    while (verts < n) {
        int fi = static_cast<int>(rng.below(face_rep.size()));
        int d1 = face_rep[fi];
        int d2 = nextf[d1], d3 = nextf[d2];
        int x = to[d3], y = to[d1], z = to[d2];
        int u = verts++;
        int a1 = add_dart(u), a1t = add_dart(y);   // y->u, u->y
        int b1 = add_dart(u), b1t = add_dart(z);   // z->u, u->z
        int c1 = add_dart(u), c1t = add_dart(x);   // x->u, u->x
        nextf[d1] = a1;
        nextf[a1] = c1t;
        nextf[c1t] = d1;
        nextf[d2] = b1;
        nextf[b1] = a1t;
        nextf[a1t] = d2;
        nextf[d3] = c1;
        nextf[c1] = b1t;
        nextf[b1t] = d3;
        face_rep[fi] = d1;
        face_rep.push_back(d2);
        face_rep.push_back(d3);
    }
    int m = static_cast<int>(to.size()) / 2;
    EmbeddedGraph eg(n);
    for (int e = 0; e < m; ++e) {
        eg.g.add_edge(to[2 * e + 1], to[2 * e]);
        eg.sig.push_back(1);
    }
    // rotation: next outgoing dart around the tail is nextf[twin]
    std::vector<char> used(to.size(), 0);
    for (int d0 = 0; d0 < static_cast<int>(to.size()); ++d0) {
        if (used[d0]) continue;
        int v = to[d0 ^ 1];  // tail of d0
        int d = d0;
        do {
            used[d] = 1;
            int e = d / 2;
            int side = (eg.g.edges[e][0] == v && (d % 2) == 0) || (d % 2) == 0 ? 0 : 1;
            // dart 2e runs tail=edges[e][0] -> head=edges[e][1]; dart 2e+1 reversed
            side = (d % 2 == 0) ? 0 : 1;
            eg.rot[v].push_back({e, side});
            d = nextf[d ^ 1];
        } while (d != d0);
    }
    Report rep = validate_embedding(eg);
    if (!rep.ok() || euler_genus(eg) != 0)
        throw ValidationError("gen_planar_triangulation: invalid output (bug):\n" + rep.summary());
    return eg;
}

// ---------------------------------------------------------------------------
// Random connected subgraphs (BFS growth with random frontier picks).

inline std::vector<int> random_connected_subgraph(const Multigraph& g, SplitMix64& rng,
                                                  int target_size,
                                                  const std::vector<char>& forbidden = {}) {
    std::vector<char> forb = forbidden.empty() ? std::vector<char>(g.n, 0) : forbidden;
    std::vector<int> starts;
    for (int v = 0; v < g.n; ++v)
        if (!forb[v]) starts.push_back(v);
    if (starts.empty()) return {};
    int s = starts[rng.below(starts.size())];
    std::vector<int> grown{s};
    std::vector<char> in(g.n, 0);
    in[s] = 1;
    while (static_cast<int>(grown.size()) < target_size) {
        std::vector<int> frontier;
        for (int v : grown)
            for (auto [w, e] : g.adj[v])
                if (!in[w] && !forb[w]) frontier.push_back(w);
        frontier = sorted_unique(frontier);
        if (frontier.empty()) break;
        int w = frontier[rng.below(frontier.size())];
        in[w] = 1;
        grown.push_back(w);
    }
    return sorted_unique(grown);
}

// ---------------------------------------------------------------------------
// gen_vortex_instance: triangulation + hub obstruction + random width-k
// interval bags along the hub's neighbor ring.

inline PlaneQuasiVortex gen_vortex_instance(int n, int k, uint64_t seed) {
    if (n < 4) throw ValidationError("gen_vortex_instance: n must be at least 4");
    if (k < 0) throw ValidationError("gen_vortex_instance: k must be nonnegative");
    SplitMix64 rng(seed);
    PlaneQuasiVortex lam;
    lam.g0plus = gen_planar_triangulation(n, rng.next());
    // hub: maximum degree, lowest id tie-break
    int hub = 0;
    for (int v = 1; v < n; ++v)
        if (lam.g0plus.g.degree(v) > lam.g0plus.g.degree(hub)) hub = v;
    lam.w = {hub};
    // ring: neighbors of the hub in rotation order
    std::vector<int> ring;
    for (const End& x : lam.g0plus.rot[hub]) {
        int e = x.e;
        ring.push_back(lam.g0plus.g.edges[e][1 - x.side]);
    }
    const int t = static_cast<int>(ring.size());
    EmbeddedSubgraph sub = delete_vertices(lam.g0plus, lam.w);
    FaceSet subfs = trace_faces(sub.eg);
    lam.disc.face = locate_obstruction_face(lam.g0plus, lam.w, sub, subfs);
    lam.disc.bs = ring;
    QuasiVortex& vx = lam.vx;
    vx.ring = ring;
    vx.bags.assign(t, {});
    for (int i = 0; i < t; ++i) vx.bags[i] = {ring[i]};
    lam.total_n = n;
    if (k >= 1 && t >= 2) {
        int extras = std::max(1, t * k / 2);
        for (int xi = 0; xi < extras; ++xi) {
            int start = static_cast<int>(rng.below(t));
            int len = 1 + static_cast<int>(rng.below(std::min(3, t)));
            std::vector<int> arc;
            bool fits = true;
            for (int off = 0; off < len; ++off) {
                int p = (start + off) % t;
                if (static_cast<int>(vx.bags[p].size()) >= k + 1) {
                    fits = false;
                    break;
                }
                arc.push_back(p);
            }
            if (!fits || arc.empty()) continue;
            int v = lam.total_n++;
            vx.extra_verts.push_back(v);
            for (int p : arc) vx.bags[p].push_back(v);
            vx.witness[v] = arc;
            // attach the vortex vertex into H': an edge to a planted ring
            // vertex of its first bag keeps H' connected enough to matter
            vx.h_edges.push_back({v, ring[arc[0]]});
        }
        // extra co-bagged edges
        for (int i = 0; i < t; ++i)
            for (std::size_t a = 0; a < vx.bags[i].size(); ++a)
                for (std::size_t b = a + 1; b < vx.bags[i].size(); ++b)
                    if (rng.coin() && rng.coin())
                        vx.h_edges.push_back({vx.bags[i][a], vx.bags[i][b]});
    }
    for (int i = 0; i < t; ++i) vx.bags[i] = sorted_unique(vx.bags[i]);
    // ring vertices: singleton witnesses
    for (int i = 0; i < t; ++i) vx.witness[ring[i]] = {i};
    Report rep = validate_lambda(lam);
    if (!rep.ok())
        throw ValidationError("gen_vortex_instance: invalid output (bug):\n" + rep.summary());
    return lam;
}

// ---------------------------------------------------------------------------
// Tree-decomposition fixtures.

struct TdFixture {
    Multigraph g;
    RootedTreeDecomposition td;
    std::vector<NodeDecomposition> nds;
    int b = 2, m = 2, j = 0;
    double c = 0, q = 0;
    double suggested_d = 0;
};

namespace detail {

// complete any connected plane graph to a quasi-triangulation (no disc, no s)
inline EmbeddedGraph complete_to_qt(const EmbeddedGraph& eg) {
    FacialCriterion crit = clique_criteria_extension(never_criterion());
    return complete_faces(eg, crit, {}, {}).eg;
}

}  // namespace detail

inline TdFixture gen_tree_decomposition_fixture(const std::string& kind, int n, uint64_t seed) {
    SplitMix64 rng(seed);
    TdFixture fx;
    if (kind == "path-of-cliques") {
        int bags = std::max(1, (n - 1) / 2);
        fx.g = Multigraph(2 * bags + 1);
        fx.td.root = 0;
        for (int i = 0; i < bags; ++i) {
            int a = 2 * i, b = 2 * i + 1, c = 2 * i + 2;
            if (!fx.g.has_edge(a, b)) fx.g.add_edge(a, b);
            fx.g.add_edge(b, c);
            fx.g.add_edge(a, c);
            fx.td.bags.push_back({a, b, c});
            fx.td.parent.push_back(i == 0 ? -1 : i - 1);
        }
        fx.td.g = fx.g;
        fx.b = 2;
        fx.m = 0;
        fx.j = 2;
        fx.suggested_d = 8;
    } else if (kind == "k-tree") {
        const int k = 3;
        fx.g = Multigraph(std::max(n, k + 1));
        for (int i = 0; i <= k; ++i)
            for (int jj = i + 1; jj <= k; ++jj) fx.g.add_edge(i, jj);
        fx.td.bags.push_back({0, 1, 2, 3});
        fx.td.parent.push_back(-1);
        fx.td.root = 0;
        for (int v = k + 1; v < fx.g.n; ++v) {
            int tnode = static_cast<int>(rng.below(fx.td.bags.size()));
            std::vector<int> bag = fx.td.bags[tnode];
            while (static_cast<int>(bag.size()) > k) bag.erase(bag.begin() + rng.below(bag.size()));
            for (int u : bag) fx.g.add_edge(v, u);
            bag.push_back(v);
            fx.td.bags.push_back(sorted_unique(bag));
            fx.td.parent.push_back(tnode);
        }
        fx.td.g = fx.g;
        fx.b = 2;
        fx.m = 0;
        fx.j = 3;
        fx.suggested_d = 10;
    } else if (kind == "planar-layered") {
        // a tree of plane triangulations glued along facial triangles
        struct Torso {
            EmbeddedGraph eg;
            std::vector<int> host_of;  // torso vertex -> host vertex
            int parent = -1;
            std::array<int, 3> adhesion_local{-1, -1, -1};  // in torso ids
        };
        std::vector<Torso> torsos;
        fx.g = Multigraph(0);
        int remaining = n;
        std::vector<int> queue_nodes;
        auto make_torso = [&](int parent, std::array<int, 3> glue_host) {
            int size = std::max(8, static_cast<int>(rng.below(std::max(8, remaining / 2))) + 8);
            size = std::min(size, std::max(8, remaining));
            Torso tor;
            tor.eg = gen_planar_triangulation(size, rng.next());
            tor.parent = parent;
            tor.host_of.assign(size, -1);
            if (parent >= 0) {
                tor.adhesion_local = {0, 1, 2};  // the seed triangle is a clique
                for (int i = 0; i < 3; ++i) tor.host_of[i] = glue_host[i];
            }
            for (int v = 0; v < size; ++v)
                if (tor.host_of[v] < 0) tor.host_of[v] = fx.g.add_vertex();
            std::set<std::pair<int, int>> glue_edges;
            if (parent >= 0)
                for (int i = 0; i < 3; ++i)
                    for (int jj = i + 1; jj < 3; ++jj)
                        glue_edges.insert({std::min(glue_host[i], glue_host[jj]),
                                           std::max(glue_host[i], glue_host[jj])});
            for (auto& e : tor.eg.g.edges) {
                int a = tor.host_of[e[0]], b = tor.host_of[e[1]];
                if (glue_edges.count({std::min(a, b), std::max(a, b)})) continue;
                fx.g.add_edge(a, b);
            }
            torsos.push_back(std::move(tor));
            remaining -= (parent >= 0 ? size - 3 : size);
            return static_cast<int>(torsos.size()) - 1;
        };
        make_torso(-1, {-1, -1, -1});
        queue_nodes.push_back(0);
        while (remaining > 12 && !queue_nodes.empty()) {
            int pi = queue_nodes.front();
            queue_nodes.erase(queue_nodes.begin());
            int kids = 1 + static_cast<int>(rng.below(3));
            auto ft = facial_triangles(torsos[pi].eg);
            std::vector<std::array<int, 3>> ftl(ft.begin(), ft.end());
            for (int c = 0; c < kids && remaining > 12 && !ftl.empty(); ++c) {
                auto tri = ftl[rng.below(ftl.size())];
                std::array<int, 3> glue{torsos[pi].host_of[tri[0]], torsos[pi].host_of[tri[1]],
                                        torsos[pi].host_of[tri[2]]};
                int ci = make_torso(pi, glue);
                queue_nodes.push_back(ci);
            }
        }
        fx.td.root = 0;
        for (auto& tor : torsos) {
            std::vector<int> bag;
            for (int h : tor.host_of) bag.push_back(h);
            fx.td.bags.push_back(sorted_unique(bag));
            fx.td.parent.push_back(tor.parent);
        }
        fx.td.g = fx.g;
        fx.b = 2;
        fx.m = 2;
        fx.j = 3;
        double maxtorso = 0;
        for (auto& tor : torsos) maxtorso = std::max(maxtorso, static_cast<double>(tor.eg.g.n));
        fx.suggested_d = 2.0 * 12.0 * std::sqrt(3.0 * maxtorso) + 2;

        // per-node partitions of the reduced torsos via planarpart
        for (int ti = 0; ti < static_cast<int>(torsos.size()); ++ti) {
            Torso& tor = torsos[ti];
            NodeDecomposition nd;
            nd.node = ti;
            std::vector<int> kt_local;
            if (tor.parent >= 0)
                kt_local = {tor.adhesion_local[0], tor.adhesion_local[1], tor.adhesion_local[2]};
            EmbeddedSubgraph red = delete_vertices(tor.eg, kt_local);
            Partition parts_local;
            if (red.eg.g.n > 0) {
                CompletionResult conn = make_two_cell(red.eg, {});
                EmbeddedGraph qt = detail::complete_to_qt(conn.eg);
                ConPlanarResult cp = con_planar(qt, {0});
                parts_local = cp.parts;
            }
            for (auto& part : parts_local) {
                nd.ap.parts.emplace_back();
                for (int v : part) nd.ap.parts.back().push_back(tor.host_of[red.orig_of[v]]);
                nd.ap.parts.back() = sorted_unique(nd.ap.parts.back());
            }
            fx.nds.push_back(std::move(nd));
        }
        // witnesses for the queried cliques, per facialConcentrated
        auto chs = fx.td.children();
        for (int ti = 0; ti < static_cast<int>(torsos.size()); ++ti) {
            NodeDecomposition& nd = fx.nds[ti];
            std::vector<int> part_of(fx.g.n, -1);
            for (int i = 0; i < static_cast<int>(nd.ap.parts.size()); ++i)
                for (int v : nd.ap.parts[i]) part_of[v] = i;
            std::vector<std::vector<int>> adhesions;
            for (int ch : chs[ti]) {
                std::vector<int> ks = fx.td.parent_adhesion(ch);
                std::vector<int> ksm = fx.td.reduced_bag(ti);
                std::vector<int> kk;
                std::set_intersection(ks.begin(), ks.end(), ksm.begin(), ksm.end(),
                                      std::back_inserter(kk));
                adhesions.push_back(kk);
            }
            nd.adhesions = adhesions;
            for (int ch : chs[ti]) {
                std::vector<int> ks = fx.td.parent_adhesion(ch);
                std::vector<int> qs;
                for (int v : ks)
                    if (part_of[v] >= 0) qs.push_back(part_of[v]);
                qs = sorted_unique(qs);
                if (nd.witness.count(qs)) continue;
                // one vertex from each adhesion meeting >= 3 parts of qs
                std::vector<int> sq;
                if (qs.size() >= 3) {
                    for (const auto& kk : adhesions) {
                        std::set<int> met;
                        for (int v : kk)
                            if (part_of[v] >= 0 &&
                                std::binary_search(qs.begin(), qs.end(), part_of[v]))
                                met.insert(part_of[v]);
                        if (static_cast<int>(met.size()) >= 3) sq.push_back(kk[0]);
                    }
                    sq = sorted_unique(sq);
                }
                nd.witness[qs] = sq;
                nd.m = std::max(nd.m, static_cast<int>(sq.size()));
            }
        }
        return fx;
    } else {
        throw ValidationError("gen_tree_decomposition_fixture: unknown kind " + kind);
    }
    // shared tail for the two simple kinds: singleton-ish partitions
    auto chs = fx.td.children();
    for (int t = 0; t < fx.td.num_nodes(); ++t) {
        NodeDecomposition nd;
        nd.node = t;
        std::vector<int> red = fx.td.reduced_bag(t);
        if (kind == "k-tree" && t == fx.td.root) {
            nd.ap.parts = {{red[0], red[1]}, {red[2], red[3]}};
        } else {
            for (int v : red) nd.ap.parts.push_back({v});
        }
        std::vector<int> part_of(fx.g.n, -1);
        for (int i = 0; i < static_cast<int>(nd.ap.parts.size()); ++i)
            for (int v : nd.ap.parts[i]) part_of[v] = i;
        for (int ch : chs[t]) {
            std::vector<int> ks = fx.td.parent_adhesion(ch);
            std::vector<int> qs;
            for (int v : ks)
                if (part_of[v] >= 0) qs.push_back(part_of[v]);
            nd.witness[sorted_unique(qs)] = {};
        }
        fx.nds.push_back(std::move(nd));
    }
    return fx;
}

// ---------------------------------------------------------------------------
// brute_menger: independent DFS-based unit-capacity augmenting-path flow on
// an explicitly built split digraph. Counts pairwise fully-vertex-disjoint
// X-Y paths (a vertex of X ∩ Y is a path).

inline int brute_menger(const Multigraph& g, const std::vector<int>& xs,
                        const std::vector<int>& ys) {
    if (g.n > 60) throw ValidationError("brute_menger: size guard exceeded (n > 60)");
    int N = 2 * g.n + 2;
    int S = 2 * g.n, T = 2 * g.n + 1;
    std::vector<std::map<int, int>> cap(N);
    auto arc = [&](int a, int b, int c) { cap[a][b] += c; };
    for (int v = 0; v < g.n; ++v) arc(2 * v, 2 * v + 1, 1);
    for (int v : sorted_unique(xs)) arc(S, 2 * v, 1000000);
    for (int v : sorted_unique(ys)) arc(2 * v + 1, T, 1000000);
    for (auto& e : g.edges) {
        if (e[0] == e[1]) continue;
        arc(2 * e[0] + 1, 2 * e[1], 1000000);
        arc(2 * e[1] + 1, 2 * e[0], 1000000);
    }
    int flow = 0;
    for (;;) {
        std::vector<int> prev(N, -1);
        std::vector<char> seen(N, 0);
        std::vector<int> stack{S};
        seen[S] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (u == T) break;
            for (auto& [w, c] : cap[u])
                if (c > 0 && !seen[w]) {
                    seen[w] = 1;
                    prev[w] = u;
                    stack.push_back(w);
                }
        }
        if (!seen[T]) break;
        for (int u = T; u != S; u = prev[u]) {
            cap[prev[u]][u] -= 1;
            cap[u][prev[u]] += 1;
        }
        ++flow;
    }
    return flow;
}

// Exhaustive search for the maximum number of fully-disjoint X-Y paths.
namespace detail {

inline int disjoint_paths_rec(const Multigraph& g, const std::vector<char>& isx,
                              const std::vector<char>& isy, std::vector<char>& used) {
    // pick the lowest unused X vertex and try every simple path from it
    int start = -1;
    for (int v = 0; v < g.n && start < 0; ++v)
        if (isx[v] && !used[v]) start = v;
    if (start < 0) return 0;
    int best;
    {
        // not using `start` at all
        used[start] = 1;
        best = disjoint_paths_rec(g, isx, isy, used);
        used[start] = 0;
    }
    std::vector<int> path{start};
    std::function<void(int)> extend = [&](int v) {
        if (isy[v]) {
            for (int p : path) used[p] = 1;
            int sub = 1 + disjoint_paths_rec(g, isx, isy, used);
            for (int p : path) used[p] = 0;
            best = std::max(best, sub);
        }
        for (auto [w, e] : g.adj[v]) {
            if (used[w] || w == v) continue;
            bool onpath = false;
            for (int p : path)
                if (p == w) onpath = true;
            if (onpath) continue;
            path.push_back(w);
            extend(w);
            path.pop_back();
        }
    };
    used[start] = 1;
    extend(start);
    used[start] = 0;
    return best;
}

}  // namespace detail

inline int exhaustive_disjoint_paths(const Multigraph& g, const std::vector<int>& xs,
                                     const std::vector<int>& ys) {
    if (g.n > 12) throw ValidationError("exhaustive_disjoint_paths: guard exceeded (n > 12)");
    std::vector<char> isx(g.n, 0), isy(g.n, 0), used(g.n, 0);
    for (int v : xs) isx[v] = 1;
    for (int v : ys) isy[v] = 1;
    return detail::disjoint_paths_rec(g, isx, isy, used);
}

// ---------------------------------------------------------------------------
// brute_concentration_check: exhaustive witness search over the relevant
// vertex universe for every clique of the quotient.

inline bool brute_concentration_check(const Multigraph& g, const AlmostPartition& ap, int b, int m,
                                      const std::vector<std::vector<int>>& kliste) {
    if (g.n > 25 || m > 6) throw ValidationError("brute_concentration_check: guards exceeded");
    std::vector<char> in_loss(g.n, 0);
    for (int v : ap.loss) in_loss[v] = 1;
    std::vector<int> part_of(g.n, -1);
    for (int i = 0; i < static_cast<int>(ap.parts.size()); ++i)
        for (int v : ap.parts[i]) part_of[v] = i;
    int np = static_cast<int>(ap.parts.size());
    std::vector<std::set<int>> qadj(np);
    for (auto& e : g.edges) {
        if (in_loss[e[0]] || in_loss[e[1]]) continue;
        int a = part_of[e[0]], bb = part_of[e[1]];
        if (a >= 0 && bb >= 0 && a != bb) {
            qadj[a].insert(bb);
            qadj[bb].insert(a);
        }
    }
    // candidate witness universe: vertices of the K sets
    std::vector<int> universe;
    for (const auto& kk : kliste)
        for (int v : kk) universe.push_back(v);
    universe = sorted_unique(universe);

    auto clique_ok = [&](const std::vector<int>& q) {
        // exists S, |S| <= m, such that every K in the list meets <= b parts
        // of q after deleting S
        std::vector<std::vector<int>> offenders;
        for (const auto& kk : kliste) {
            std::set<int> met;
            for (int v : kk)
                if (part_of[v] >= 0 && std::binary_search(q.begin(), q.end(), part_of[v]))
                    met.insert(part_of[v]);
            if (static_cast<int>(met.size()) > b) offenders.push_back(kk);
        }
        if (offenders.empty()) return true;
        // search subsets of the universe up to size m
        std::vector<int> chosen;
        std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
            bool all_ok = true;
            for (const auto& kk : offenders) {
                std::set<int> met;
                for (int v : kk) {
                    if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
                    if (part_of[v] >= 0 && std::binary_search(q.begin(), q.end(), part_of[v]))
                        met.insert(part_of[v]);
                }
                if (static_cast<int>(met.size()) > b) {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok) return true;
            if (static_cast<int>(chosen.size()) == m || idx >= universe.size()) return false;
            for (std::size_t i = idx; i < universe.size(); ++i) {
                chosen.push_back(universe[i]);
                if (rec(i + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        return rec(0);
    };
    // enumerate cliques of the quotient of size 2..b+2 (larger cliques only
    // make the condition harder but cannot exist above treewidth bounds)
    std::vector<int> q;
    std::function<bool(int)> enum_cliques = [&](int minv) -> bool {
        if (q.size() >= 2 && !clique_ok(q)) return false;
        for (int v = minv; v < np; ++v) {
            bool adj = true;
            for (int u : q)
                if (!qadj[u].count(v)) adj = false;
            if (!adj) continue;
            q.push_back(v);
            if (!enum_cliques(v + 1)) return false;
            q.pop_back();
        }
        return true;
    };
    return enum_cliques(0);
}

// ---------------------------------------------------------------------------
// Vortex instance file format: the embedded block, then
//   W <v...>
//   disc <face> <b...>
//   vn <total_n>
//   vx <x> : <bag members...>
//   ve <u> <v>
//   vw <v> : <ring positions of the witness path, 1-indexed>

inline void write_instance(std::ostream& os, const PlaneQuasiVortex& lam) {
    write_embedded(os, lam.g0plus);
    os << "W";
    for (int v : lam.w) os << " " << v + 1;
    os << "\n";
    write_disc(os, lam.disc);
    os << "vn " << lam.total_n << "\n";
    for (int i = 0; i < static_cast<int>(lam.vx.ring.size()); ++i) {
        os << "vx " << lam.vx.ring[i] + 1 << " :";
        for (int v : lam.vx.bags[i]) os << " " << v + 1;
        os << "\n";
    }
    for (auto& e : lam.vx.h_edges) os << "ve " << e.first + 1 << " " << e.second + 1 << "\n";
    for (auto& [v, path] : lam.vx.witness) {
        os << "vw " << v + 1 << " :";
        for (int p : path) os << " " << p + 1;
        os << "\n";
    }
}

// ---------------------------------------------------------------------------
// Tree-decomposition fixture file: plain graph block, PACE-style td block,
// then per-node sections
//   nd <t> P <v...>      per part (empty "nd <t> P" lines allowed)
//   nd <t> X <v...>      loss set
//   nd <t> w <part...> : <v...>   witness for a quotient clique
//   params <b> <m> <c> <q> <j> <d>

inline void write_fixture(std::ostream& os, const TdFixture& fx) {
    write_graph(os, fx.g);
    write_rtd(os, fx.td);
    for (const auto& nd : fx.nds) {
        for (const auto& part : nd.ap.parts) {
            os << "nd " << nd.node + 1 << " P";
            for (int v : part) os << " " << v + 1;
            os << "\n";
        }
        if (!nd.ap.loss.empty()) {
            os << "nd " << nd.node + 1 << " X";
            for (int v : nd.ap.loss) os << " " << v + 1;
            os << "\n";
        }
        for (const auto& [q, s] : nd.witness) {
            os << "nd " << nd.node + 1 << " w";
            for (int p : q) os << " " << p + 1;
            os << " :";
            for (int v : s) os << " " << v + 1;
            os << "\n";
        }
    }
    os << "params " << fx.b << " " << fx.m << " " << fx.c << " " << fx.q << " " << fx.j << " "
       << fx.suggested_d << "\n";
}

inline TdFixture parse_fixture_text(const std::string& text) {
    TdFixture fx;
    std::istringstream head(text);
    fx.g = parse_graph(head);
    // split the td block from the nd/params lines
    std::istringstream all(text);
    std::string line;
    std::string td_block;
    std::vector<std::string> nd_lines;
    std::string params_line;
    while (std::getline(all, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "nd") nd_lines.push_back(line);
        else if (kind == "params") params_line = line;
        else if (kind == "s" || kind == "b" || kind == "r" ||
                 (kind != "p" && kind != "e" && !kind.empty() && isdigit(kind[0])))
            td_block += line + "\n";
    }
    std::istringstream tds(td_block);
    fx.td = parse_rtd(tds, fx.g);
    std::map<int, NodeDecomposition> nds;
    for (const auto& l : nd_lines) {
        std::istringstream ls(l);
        std::string kind, sub;
        int t;
        ls >> kind >> t >> sub;
        NodeDecomposition& nd = nds[t - 1];
        nd.node = t - 1;
        if (sub == "P") {
            std::vector<int> part;
            int v;
            while (ls >> v) part.push_back(v - 1);
            nd.ap.parts.push_back(part);
        } else if (sub == "X") {
            int v;
            while (ls >> v) nd.ap.loss.push_back(v - 1);
        } else if (sub == "w") {
            std::vector<int> q, s;
            std::string tok;
            bool after_colon = false;
            while (ls >> tok) {
                if (tok == ":") {
                    after_colon = true;
                    continue;
                }
                (after_colon ? s : q).push_back(std::stoi(tok) - 1);
            }
            nd.witness[q] = s;
            nd.m = std::max(nd.m, static_cast<int>(s.size()));
        }
    }
    for (auto& [t, nd] : nds) fx.nds.push_back(std::move(nd));
    if (!params_line.empty()) {
        std::istringstream ls(params_line);
        std::string kind;
        ls >> kind >> fx.b >> fx.m >> fx.c >> fx.q >> fx.j >> fx.suggested_d;
    }
    return fx;
}

// ---------------------------------------------------------------------------
// RunReport: claimed-vs-measured bound lines for the CLI's JSON output.

struct RunReport {
    struct Bound {
        std::string name;
        double claimed = 0;
        double measured = 0;
        std::string verdict;  // pass / fail / flagged
    };
    std::string tool;
    uint64_t seed = 0;
    std::map<std::string, double> instance_stats;
    std::vector<Bound> bounds;
    std::vector<std::pair<std::string, std::string>> verdicts;  // check -> verdict
    double wall_ms = 0;

    void add_bound(const std::string& name, double claimed, double measured, bool flag_only = false) {
        Bound b{name, claimed, measured, ""};
        b.verdict = measured <= claimed ? "pass" : (flag_only ? "flagged" : "fail");
        bounds.push_back(b);
    }
    void add_report(const std::string& prefix, const Report& rep) {
        for (const auto& l : rep.lines)
            verdicts.push_back({prefix + ": " + l.check,
                                l.verdict == Report::Pass ? "pass"
                                : l.verdict == Report::Flag ? "flagged"
                                                            : "fail"});
    }
    bool pass() const {
        for (const auto& b : bounds)
            if (b.verdict == "fail") return false;
        for (const auto& [k, v] : verdicts)
            if (v == "fail") return false;
        return true;
    }
};

inline PlaneQuasiVortex parse_instance(std::istream& is) {
    PlaneQuasiVortex lam;
    lam.g0plus = parse_embedded(is);
    lam.total_n = lam.g0plus.g.n;
    std::string line;
    bool have_vn = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "W") {
            int v;
            while (ls >> v) lam.w.push_back(v - 1);
        } else if (kind == "disc") {
            lam.disc = parse_disc_line(line);
        } else if (kind == "vn") {
            ls >> lam.total_n;
            have_vn = true;
        } else if (kind == "vx") {
            int x;
            std::string colon;
            if (!(ls >> x >> colon) || colon != ":")
                throw ValidationError("parse_instance: bad vx line");
            lam.vx.ring.push_back(x - 1);
            lam.vx.bags.emplace_back();
            int v;
            while (ls >> v) lam.vx.bags.back().push_back(v - 1);
        } else if (kind == "ve") {
            int u, v;
            if (!(ls >> u >> v)) throw ValidationError("parse_instance: bad ve line");
            lam.vx.h_edges.push_back({u - 1, v - 1});
        } else if (kind == "vw") {
            int v;
            std::string colon;
            if (!(ls >> v >> colon) || colon != ":")
                throw ValidationError("parse_instance: bad vw line");
            std::vector<int> path;
            int p;
            while (ls >> p) path.push_back(p - 1);
            lam.vx.witness[v - 1] = path;
        }
    }
    // recover extras and total_n when absent
    std::vector<int> hv;
    for (auto& b : lam.vx.bags)
        for (int v : b) hv.push_back(v);
    for (auto& e : lam.vx.h_edges) {
        hv.push_back(e.first);
        hv.push_back(e.second);
    }
    hv = sorted_unique(hv);
    for (int v : hv) {
        if (!have_vn) lam.total_n = std::max(lam.total_n, v + 1);
        if (v >= lam.g0plus.g.n) lam.vx.extra_verts.push_back(v);
    }
    lam.vx.extra_verts = sorted_unique(lam.vx.extra_verts);
    return lam;
}

}  // namespace decomp

#endif

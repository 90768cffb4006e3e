#ifndef DECOMP_SURFACE_HPP
#define DECOMP_SURFACE_HPP

// Tree-cotree cutting subgraphs and cutting a 2-cell embedded graph open
// into a plane graph with explicit projection maps.

#include "embed.hpp"

namespace decomp {

struct RootedSpanningTree {
    int root = 0;
    std::vector<int> parent;       // parent[root] == -1
    std::vector<int> parent_edge;  // host edge id, -1 at the root
    std::vector<int> dist;
};

// BFS spanning tree with the distance property. `preferred` edges win when
// several edges could first reach a vertex; remaining ties go to the lowest
// edge id.
inline RootedSpanningTree bfs_spanning_tree(const Multigraph& g, int root,
                                            const std::vector<int>& preferred = {}) {
    if (root < 0 || root >= g.n) throw ValidationError("bfs_spanning_tree: root out of range");
    std::vector<char> pref(g.num_edges(), 0);
    for (int e : preferred) pref[e] = 1;
    RootedSpanningTree t;
    t.root = root;
    t.parent.assign(g.n, -1);
    t.parent_edge.assign(g.n, -1);
    t.dist.assign(g.n, -1);
    t.dist[root] = 0;
    std::vector<int> frontier{root};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            // deterministic edge scan: preferred first, then lowest edge id
            std::vector<std::pair<int, int>> cand;  // (edge, neighbor)
            for (auto [w, e] : g.adj[v]) cand.push_back({e, w});
            std::sort(cand.begin(), cand.end(), [&](auto& a, auto& b) {
                if (pref[a.first] != pref[b.first]) return pref[a.first] > pref[b.first];
                return a.first < b.first;
            });
            for (auto [e, w] : cand)
                if (t.dist[w] < 0) {
                    t.dist[w] = t.dist[v] + 1;
                    t.parent[w] = v;
                    t.parent_edge[w] = e;
                    next.push_back(w);
                }
        }
        frontier = std::move(next);
    }
    for (int v = 0; v < g.n; ++v)
        if (t.dist[v] < 0)
            throw ValidationError("bfs_spanning_tree: vertex " + std::to_string(v) +
                                  " unreachable");
    return t;
}

// ---------------------------------------------------------------------------
// Embedded restriction to a subgraph (vertex and edge subsets).

struct RestrictedEmbedding {
    EmbeddedGraph eg;
    std::vector<int> vert_orig, vert_new;  // maps between host and restricted ids
    std::vector<int> edge_orig, edge_new;
};

inline RestrictedEmbedding restrict_embedded(const EmbeddedGraph& host,
                                             const std::vector<int>& verts,
                                             const std::vector<int>& edges) {
    RestrictedEmbedding r;
    r.vert_new.assign(host.g.n, -1);
    for (int v : sorted_unique(verts)) {
        r.vert_new[v] = static_cast<int>(r.vert_orig.size());
        r.vert_orig.push_back(v);
    }
    r.edge_new.assign(host.g.num_edges(), -1);
    r.eg = EmbeddedGraph(static_cast<int>(r.vert_orig.size()));
    for (int e : sorted_unique(edges)) {
        int u = host.g.edges[e][0], v = host.g.edges[e][1];
        if (r.vert_new[u] < 0 || r.vert_new[v] < 0)
            throw ValidationError("restrict_embedded: edge endpoint outside vertex set");
        r.edge_new[e] = r.eg.g.add_edge(r.vert_new[u], r.vert_new[v]);
        r.eg.sig.push_back(host.sig[e]);
        r.edge_orig.push_back(e);
    }
    for (int v = 0; v < host.g.n; ++v) {
        if (r.vert_new[v] < 0) continue;
        for (const End& x : host.rot[v])
            if (r.edge_new[x.e] >= 0) r.eg.rot[r.vert_new[v]].push_back({r.edge_new[x.e], x.side});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Cutting subgraphs.

struct CuttingSubgraph {
    std::vector<int> verts;  // host vertex ids
    std::vector<int> edges;  // host edge ids
    int genus = 0;           // host genus at construction time
};

inline Report validate_cutting(const EmbeddedGraph& host, const CuttingSubgraph& m) {
    Report rep;
    rep.add("cutting subgraph nonempty", !m.verts.empty());
    int g = euler_genus(host);
    rep.add("|E(M)| = |V(M)| + g - 1",
            static_cast<int>(m.edges.size()) == static_cast<int>(m.verts.size()) + g - 1,
            "|E(M)| = " + std::to_string(m.edges.size()) + ", |V(M)| = " +
                std::to_string(m.verts.size()) + ", g = " + std::to_string(g));
    if (m.edges.empty()) {
        rep.add("M has exactly one face", m.verts.size() == 1);
        return rep;
    }
    RestrictedEmbedding rm = restrict_embedded(host, m.verts, m.edges);
    bool conn = is_connected(rm.eg.g);
    int nf = conn ? static_cast<int>(trace_faces(rm.eg).faces.size()) : -1;
    rep.add("M has exactly one face", conn && nf == 1,
            conn ? std::to_string(nf) + " faces" : "M disconnected");
    return rep;
}

// find_cutting: tree-cotree. The dual spanning tree
// leaves exactly g non-tree edges; M is t' plus the root paths to their
// endpoints plus those edges.
inline CuttingSubgraph find_cutting(const EmbeddedGraph& host, const RootedSpanningTree& t,
                                    const std::vector<int>& tprime_verts) {
    if (tprime_verts.empty()) throw ValidationError("find_cutting: t' must be nonempty");
    int g = euler_genus(host);
    FaceSet fs = trace_faces(host);
    int nf = static_cast<int>(fs.faces.size());

    std::vector<char> in_tree(host.g.num_edges(), 0);
    for (int v = 0; v < host.g.n; ++v)
        if (t.parent_edge[v] >= 0) in_tree[t.parent_edge[v]] = 1;

    // dual graph on faces; one dual edge per non-tree edge
    std::vector<std::vector<int>> edge_faces(host.g.num_edges());
    for (int fi = 0; fi < nf; ++fi)
        for (const Dart& d : fs.faces[fi].walk) edge_faces[d.e].push_back(fi);
    for (int e = 0; e < host.g.num_edges(); ++e)
        if (edge_faces[e].size() != 2)
            throw ValidationError("find_cutting: edge not on exactly two face slots (bug)");

    // BFS spanning tree of the dual restricted to non-tree duals
    std::vector<char> dual_seen(nf, 0);
    std::vector<char> dual_tree_edge(host.g.num_edges(), 0);
    std::queue<int> bq;
    dual_seen[0] = 1;
    bq.push(0);
    std::vector<std::vector<std::pair<int, int>>> dual_adj(nf);  // (face, via edge)
    for (int e = 0; e < host.g.num_edges(); ++e) {
        if (in_tree[e]) continue;
        int f1 = edge_faces[e][0], f2 = edge_faces[e][1];
        dual_adj[f1].push_back({f2, e});
        dual_adj[f2].push_back({f1, e});
    }
    while (!bq.empty()) {
        int f = bq.front();
        bq.pop();
        for (auto [f2, e] : dual_adj[f])
            if (!dual_seen[f2]) {
                dual_seen[f2] = 1;
                dual_tree_edge[e] = 1;
                bq.push(f2);
            }
    }
    for (int fi = 0; fi < nf; ++fi)
        if (!dual_seen[fi])
            throw ValidationError("find_cutting: dual graph disconnected (bug)");

    std::vector<int> eprime;
    for (int e = 0; e < host.g.num_edges(); ++e)
        if (!in_tree[e] && !dual_tree_edge[e]) eprime.push_back(e);
    if (static_cast<int>(eprime.size()) != g)
        throw ValidationError("find_cutting: expected exactly g co-tree edges (bug)");

    std::vector<char> mv(host.g.n, 0), me(host.g.num_edges(), 0);
    auto add_root_path = [&](int v) {
        while (v >= 0 && !mv[v]) {
            mv[v] = 1;
            if (t.parent_edge[v] >= 0) me[t.parent_edge[v]] = 1;
            v = t.parent[v];
        }
    };
    // t' itself (its vertices plus connecting tree edges)
    std::vector<char> in_tp(host.g.n, 0);
    for (int v : tprime_verts) in_tp[v] = 1;
    for (int v : tprime_verts) {
        mv[v] = 1;
        if (t.parent[v] >= 0 && in_tp[t.parent[v]] && t.parent_edge[v] >= 0)
            me[t.parent_edge[v]] = 1;
    }
    bool need_root = g >= 1;
    for (int e : eprime) {
        me[e] = 1;
        add_root_path(host.g.edges[e][0]);
        add_root_path(host.g.edges[e][1]);
    }
    if (need_root && !mv[t.root]) add_root_path(t.root);
    if (need_root) {
        // connect t' to the root when it hangs below it
        int r2 = tprime_verts[0];
        for (int v : tprime_verts)
            if (t.dist[v] < t.dist[r2]) r2 = v;
        add_root_path(r2);
    }
    CuttingSubgraph m;
    m.genus = g;
    for (int v = 0; v < host.g.n; ++v)
        if (mv[v]) m.verts.push_back(v);
    for (int e = 0; e < host.g.num_edges(); ++e)
        if (me[e]) m.edges.push_back(e);
    Report rep = validate_cutting(host, m);
    if (!rep.ok()) throw ValidationError("find_cutting: invariants violated (bug):\n" + rep.summary());
    return m;
}

// ---------------------------------------------------------------------------
// cut_open: unfold the host along M into a plane graph.

struct Projection {
    std::vector<int> phi;        // G' vertex -> host vertex
    std::vector<int> psi;        // G' edge -> host edge
    std::vector<int> eta;        // host face -> G' face
    std::vector<int> vertex_new; // host vertex -> G' vertex, -1 on V(M)
    std::vector<int> vm;         // V(M)
    std::vector<int> c_verts;    // cut cycle vertices in G'
    std::vector<int> c_edges;    // cut cycle edges in G'
    bool degenerate = false;     // |E(M)| = 0 relabel branch
};

struct CutResult {
    EmbeddedGraph gprime;
    Projection proj;
    int fstar = -1;  // the face of G' outside eta's image
};

namespace detail {

// Boundary walks are compared as alternating edge/vertex sequences
// ("e_1, v_1, ..., e_n, v_n"), matching the paper's transport clause; a
// loop's traversal direction is not pinned by the maps, the head sequence is.
using PairWalk = std::vector<std::pair<int, int>>;  // (edge, head vertex)

inline bool cyclic_pair_match(const PairWalk& a, const PairWalk& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    int L = static_cast<int>(a.size());
    for (int s = 0; s < L; ++s) {
        bool ok = true;
        for (int i = 0; i < L && ok; ++i)
            if (a[i] != b[(s + i) % L]) ok = false;
        if (ok) return true;
    }
    return false;
}

// the reverse traversal of e_1,v_1,...,e_n,v_n is e_n,v_{n-1},...,e_1,v_n
inline PairWalk mirror_pairs(const PairWalk& w) {
    int L = static_cast<int>(w.size());
    PairWalk out(L);
    for (int j = 0; j < L; ++j)
        out[j] = {w[(L - 1 - j) % L].first, w[((L - 2 - j) % L + L) % L].second};
    return out;
}

}  // namespace detail

inline CutResult cut_open(const EmbeddedGraph& host, const CuttingSubgraph& m) {
    require_wellformed(host);
    int g = euler_genus(host);
    if (static_cast<int>(m.edges.size()) != static_cast<int>(m.verts.size()) + g - 1)
        throw ValidationError("cut_open: |E(M)| != |V(M)| + g - 1");
    const int n_host = host.g.n, m_host = host.g.num_edges();
    FaceSet hostfs = trace_faces(host);

    CutResult res;
    std::vector<char> in_mv(n_host, 0), in_me(m_host, 0);
    for (int v : m.verts) in_mv[v] = 1;
    for (int e : m.edges) in_me[e] = 1;

    if (m.edges.empty()) {
        // pure relabel: C is a single fresh vertex
        if (g != 0 || m.verts.size() != 1)
            throw ValidationError("cut_open: edgeless M only valid at genus 0 with one vertex");
        int vm = m.verts[0];
        res.proj.degenerate = true;
        res.proj.vm = m.verts;
        EmbeddedGraph gp(n_host);
        std::vector<int> map_v(n_host, -1);
        int idx = 0;
        for (int v = 0; v < n_host; ++v)
            if (v != vm) map_v[v] = idx++;
        map_v[vm] = idx;  // the relabeled vertex goes last
        for (int e = 0; e < m_host; ++e) {
            gp.g.add_edge(map_v[host.g.edges[e][0]], map_v[host.g.edges[e][1]]);
            gp.sig.push_back(host.sig[e]);
        }
        for (int v = 0; v < n_host; ++v) gp.rot[map_v[v]] = host.rot[v];
        res.gprime = std::move(gp);
        res.proj.phi.assign(n_host, -1);
        for (int v = 0; v < n_host; ++v) res.proj.phi[map_v[v]] = v;
        res.proj.psi.resize(m_host);
        std::iota(res.proj.psi.begin(), res.proj.psi.end(), 0);
        res.proj.vertex_new = map_v;
        res.proj.vertex_new[vm] = -1;
        res.proj.c_verts = {map_v[vm]};
        // faces coincide (same edge ids and rotations): eta is the identity
        res.proj.eta.resize(hostfs.faces.size());
        std::iota(res.proj.eta.begin(), res.proj.eta.end(), 0);
        res.fstar = -1;
        return res;
    }

    // trace the single face of M inside the host rotation
    RestrictedEmbedding rm = restrict_embedded(host, m.verts, m.edges);
    if (!is_connected(rm.eg.g)) throw ValidationError("cut_open: M must be connected");
    FaceSet mfs = trace_faces(rm.eg);
    if (mfs.faces.size() != 1) throw ValidationError("cut_open: M must have exactly one face");
    std::vector<Dart> walk;  // in host edge ids
    for (const Dart& d : mfs.faces[0].walk) walk.push_back(Dart{rm.edge_orig[d.e], d.d});
    const int nw = static_cast<int>(walk.size());  // = 2|E(M)|

    // running signatures along the walk
    std::vector<int> lam(nw, 1);
    {
        int s = 1;
        for (int i = 0; i < nw; ++i) {
            s *= host.sig[walk[i].e];
            lam[i] = s;
        }
        if (lam[nw - 1] != 1) throw ValidationError("cut_open: walk signature product != 1 (bug)");
    }

    // E_i: non-M ends strictly between arrival of walk[i] and departure of
    // walk[i+1] at v_i, read in direction lam[i]
    std::vector<std::vector<End>> runs(nw);
    std::vector<int> run_of_end(2 * m_host, -1);  // (e*2+side) -> run index
    for (int i = 0; i < nw; ++i) {
        int v = host.head(walk[i]);
        End arrive{walk[i].e, 1 - walk[i].d};
        const Dart& nxt = walk[(i + 1) % nw];
        End depart{nxt.e, nxt.d};
        int k = static_cast<int>(host.rot[v].size());
        int pa = host.find_end(v, arrive);
        if (pa < 0) throw ValidationError("cut_open: arrival end missing (bug)");
        int step = lam[i] > 0 ? 1 : k - 1;
        for (int j = (pa + step) % k;; j = (j + step) % k) {
            const End& x = host.rot[v][j];
            if (x == depart) break;
            if (in_me[x.e])
                throw ValidationError("cut_open: M end inside a corner run (bug)");
            runs[i].push_back(x);
            run_of_end[x.e * 2 + x.side] = i;
        }
    }

    // G' vertex space: survivors first, then the cut cycle block
    std::vector<int> map_v(n_host, -1);
    int n_surv = 0;
    for (int v = 0; v < n_host; ++v)
        if (!in_mv[v]) map_v[v] = n_surv++;
    const int n_gp = n_surv + nw;
    auto cyc = [&](int i) { return n_surv + ((i % nw) + nw) % nw; };

    EmbeddedGraph gp(n_gp);
    std::vector<int> psi;           // new edge -> host edge
    std::vector<int> new_of_edge(m_host, -1);  // host non-M edge -> new edge
    // non-M edges, side-preserving endpoint mapping
    for (int e = 0; e < m_host; ++e) {
        if (in_me[e]) continue;
        std::array<int, 2> ep{-1, -1};
        for (int side = 0; side < 2; ++side) {
            int v = host.g.edges[e][side];
            if (!in_mv[v]) ep[side] = map_v[v];
            else {
                int run = run_of_end[e * 2 + side];
                if (run < 0) throw ValidationError("cut_open: end missing from runs (bug)");
                ep[side] = cyc(run);
            }
        }
        int ne = gp.g.add_edge(ep[0], ep[1]);
        gp.sig.push_back(host.sig[e]);
        new_of_edge[e] = ne;
        psi.push_back(e);
    }
    // cut edges: ce_i joins cyc(i-1) and cyc(i), psi(ce_i) = walk[i].e
    std::vector<int> ce(nw, -1);
    for (int i = 0; i < nw; ++i) {
        ce[i] = gp.g.add_edge(cyc(i - 1), cyc(i));
        gp.sig.push_back(host.sig[walk[i].e]);
        psi.push_back(walk[i].e);
    }

    // rotations: survivors keep their order; cycle vertices get
    // [ce_i, E_i..., ce_{i+1}], reversed when lam[i] = -1
    for (int v = 0; v < n_host; ++v) {
        if (in_mv[v]) continue;
        for (const End& x : host.rot[v])
            if (new_of_edge[x.e] >= 0) gp.rot[map_v[v]].push_back({new_of_edge[x.e], x.side});
    }
    for (int i = 0; i < nw; ++i) {
        std::vector<End> order;
        order.push_back({ce[i], 1});  // arriving side at cyc(i)
        for (const End& x : runs[i]) order.push_back({new_of_edge[x.e], x.side});
        order.push_back({ce[(i + 1) % nw], 0});
        if (lam[i] < 0) std::reverse(order.begin(), order.end());
        gp.rot[cyc(i)] = std::move(order);
    }
    require_wellformed(gp);

    // bookkeeping and the planarity conclusion
    if (gp.g.n != n_host + static_cast<int>(m.verts.size()) + 2 * g - 2)
        throw ValidationError("cut_open: |V(G')| formula violated (bug)");
    if (gp.g.num_edges() != m_host + static_cast<int>(m.edges.size()))
        throw ValidationError("cut_open: |E(G')| formula violated (bug)");
    if (euler_genus(gp) != 0) throw ValidationError("cut_open: result not plane (bug)");
    FaceSet gpfs = trace_faces(gp);
    if (gpfs.faces.size() != hostfs.faces.size() + 1)
        throw ValidationError("cut_open: face count bookkeeping violated (bug)");

    // locate F*: the all-cut-edge face of length nw (when M != G there is
    // exactly one; when M == G pick the one that cannot transport)
    std::vector<char> is_cut_edge(gp.g.num_edges(), 0);
    for (int e : ce) is_cut_edge[e] = 1;
    std::vector<int> allcut;
    for (int fi = 0; fi < static_cast<int>(gpfs.faces.size()); ++fi) {
        bool ac = true;
        for (const Dart& d : gpfs.faces[fi].walk)
            if (!is_cut_edge[d.e]) ac = false;
        if (ac) allcut.push_back(fi);
    }

    // transport G' walks to host (edge, head) pair sequences
    std::vector<int> phi_of(n_gp, -1);
    for (int v = 0; v < n_host; ++v)
        if (!in_mv[v]) phi_of[map_v[v]] = v;
    for (int i = 0; i < nw; ++i) phi_of[cyc(i)] = host.head(walk[i]);
    auto project_pairs = [&](const Face& f) {
        detail::PairWalk out;
        for (const Dart& d : f.walk) out.push_back({psi[d.e], phi_of[gp.head(d)]});
        return out;
    };
    std::vector<detail::PairWalk> host_pairs;
    for (const auto& f : hostfs.faces) {
        detail::PairWalk w;
        for (const Dart& d : f.walk) w.push_back({d.e, host.head(d)});
        host_pairs.push_back(std::move(w));
    }

    // match faces of G' (except F*) to host faces: forward matches first,
    // mirrored matches as a fallback, never reusing a host face
    res.proj.eta.assign(hostfs.faces.size(), -1);
    int fstar = -1;
    for (int fi = 0; fi < static_cast<int>(gpfs.faces.size()); ++fi) {
        detail::PairWalk pw = project_pairs(gpfs.faces[fi]);
        detail::PairWalk mw = detail::mirror_pairs(pw);
        int match = -1;
        for (int pass = 0; pass < 2 && match < 0; ++pass)
            for (int hf = 0; hf < static_cast<int>(hostfs.faces.size()) && match < 0; ++hf) {
                if (res.proj.eta[hf] != -1) continue;
                if (detail::cyclic_pair_match(host_pairs[hf], pass == 0 ? pw : mw)) match = hf;
            }
        bool forced_star = fstar == -1 && allcut.size() == gpfs.faces.size() && fi == allcut[0];
        if (match >= 0 && !forced_star) {
            res.proj.eta[match] = fi;
        } else if (fstar == -1) {
            fstar = fi;
        } else {
            throw ValidationError("cut_open: face transport failed (bug)");
        }
    }
    for (int hf = 0; hf < static_cast<int>(hostfs.faces.size()); ++hf)
        if (res.proj.eta[hf] < 0)
            throw ValidationError("cut_open: eta not total (bug)");
    if (fstar < 0) throw ValidationError("cut_open: F* not found (bug)");
    res.fstar = fstar;

    res.gprime = std::move(gp);
    res.proj.psi = std::move(psi);
    res.proj.phi.assign(n_gp, -1);
    for (int v = 0; v < n_host; ++v)
        if (!in_mv[v]) res.proj.phi[map_v[v]] = v;
    for (int i = 0; i < nw; ++i) res.proj.phi[cyc(i)] = host.head(walk[i]);
    res.proj.vertex_new = map_v;
    res.proj.vm = m.verts;
    for (int i = 0; i < nw; ++i) res.proj.c_verts.push_back(cyc(i));
    res.proj.c_edges = ce;
    return res;
}

// ---------------------------------------------------------------------------
// verify_projection: clause-by-clause audit of a cut.

inline Report verify_projection(const EmbeddedGraph& host, const CuttingSubgraph& m,
                                const EmbeddedGraph& gp, const Projection& p, int fstar) {
    Report rep;
    const int n_host = host.g.n;
    std::vector<char> in_mv(n_host, 0);
    for (int v : p.vm) in_mv[v] = 1;
    std::vector<char> in_me(host.g.num_edges(), 0);
    for (int e : m.edges) in_me[e] = 1;
    std::vector<char> in_c(gp.g.n, 0);
    for (int v : p.c_verts) in_c[v] = 1;
    std::vector<char> in_ce(gp.g.num_edges(), 0);
    for (int e : p.c_edges) in_ce[e] = 1;

    if (p.degenerate) rep.flag("degenerate |E(M)| = 0 relabel cut", "C is a single fresh vertex");

    // phi identity off V(C), onto V(M)
    bool phi_id = true;
    for (int v = 0; v < gp.g.n; ++v)
        if (!in_c[v] && (p.phi[v] < 0 || in_mv[p.phi[v]] ||
                         (p.vertex_new[p.phi[v]] != v)))
            phi_id = false;
    rep.add("phi identity off V(C)", phi_id);
    {
        std::vector<int> img;
        for (int v : p.c_verts) img.push_back(p.phi[v]);
        rep.add("phi(V(C)) = V(M)", sorted_unique(img) == sorted_unique(p.vm));
    }
    // |phi^-1(v)| = deg_M(v)
    if (!p.degenerate) {
        std::vector<int> degm(n_host, 0);
        for (int e : m.edges) {
            degm[host.g.edges[e][0]]++;
            degm[host.g.edges[e][1]]++;
        }
        std::vector<int> cnt(n_host, 0);
        for (int v : p.c_verts) cnt[p.phi[v]]++;
        bool ok = true;
        for (int v : p.vm)
            if (cnt[v] != degm[v]) ok = false;
        rep.add("|phi^-1(v)| = deg_M(v) on V(M)", ok);
    }
    // psi: endpoint compatibility, identity off E(G'-V(C)), bijection off E(C)
    bool psi_ok = true, psi_endpoint = true;
    std::vector<int> pre(host.g.num_edges(), 0);
    for (int e = 0; e < gp.g.num_edges(); ++e) {
        int he = p.psi[e];
        if (he < 0 || he >= host.g.num_edges()) {
            psi_ok = false;
            continue;
        }
        pre[he]++;
        std::vector<int> a{p.phi[gp.g.edges[e][0]], p.phi[gp.g.edges[e][1]]};
        std::vector<int> b{host.g.edges[he][0], host.g.edges[he][1]};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) psi_endpoint = false;
    }
    rep.add("psi endpoint compatibility", psi_endpoint);
    for (int e = 0; e < host.g.num_edges(); ++e) {
        if (in_me[e] && !p.degenerate && pre[e] != 2) psi_ok = false;
        if (!in_me[e] && pre[e] != 1) psi_ok = false;
    }
    rep.add("|psi^-1(e)| = 2 on E(M), = 1 elsewhere", psi_ok);

    // G ∩ G' = G - V(M) = G' - V(C) as edge multisets under the maps
    {
        std::vector<std::pair<int, int>> hostside, gpside;
        for (int e = 0; e < host.g.num_edges(); ++e) {
            int u = host.g.edges[e][0], v = host.g.edges[e][1];
            if (!in_mv[u] && !in_mv[v]) hostside.push_back({std::min(u, v), std::max(u, v)});
        }
        for (int e = 0; e < gp.g.num_edges(); ++e) {
            int u = gp.g.edges[e][0], v = gp.g.edges[e][1];
            if (!in_c[u] && !in_c[v]) {
                int a = p.phi[u], b = p.phi[v];
                gpside.push_back({std::min(a, b), std::max(a, b)});
            }
        }
        std::sort(hostside.begin(), hostside.end());
        std::sort(gpside.begin(), gpside.end());
        rep.add("G - V(M) = G' - V(C)", hostside == gpside);
    }
    // neighborhood cover
    {
        std::vector<std::vector<int>> inv(n_host);
        for (int v = 0; v < gp.g.n; ++v)
            if (p.phi[v] >= 0) inv[p.phi[v]].push_back(v);
        bool cover = true;
        for (int v = 0; v < n_host && cover; ++v) {
            std::set<int> img;
            for (int x : inv[v]) {
                img.insert(p.phi[x]);
                for (auto [w, e] : gp.g.adj[x]) img.insert(p.phi[w]);
            }
            if (!img.count(v)) cover = false;
            for (auto [w, e] : host.g.adj[v])
                if (!img.count(w)) cover = false;
        }
        rep.add("N_G[v] ⊆ phi(N_G'[phi^-1(v)])", cover);
    }
    // facial triangle transfer
    {
        auto fth = facial_triangles(host);
        auto ftp = facial_triangles(gp);
        bool ok = true;
        for (const auto& t : fth) {
            bool found = false;
            for (const auto& s : ftp) {
                std::array<int, 3> img{p.phi[s[0]], p.phi[s[1]], p.phi[s[2]]};
                std::sort(img.begin(), img.end());
                if (img == t) found = true;
            }
            if (!found) ok = false;
        }
        rep.add("facial triangle transfer", ok);
    }
    // eta: injection, one face outside the image, boundary-walk transport
    {
        FaceSet hostfs = trace_faces(host);
        FaceSet gpfs = trace_faces(gp);
        std::vector<char> used(gpfs.faces.size(), 0);
        bool inj = true;
        for (int hf = 0; hf < static_cast<int>(hostfs.faces.size()); ++hf) {
            int fi = p.eta[hf];
            if (fi < 0 || fi >= static_cast<int>(gpfs.faces.size()) || used[fi]) inj = false;
            else used[fi] = 1;
        }
        rep.add("eta injective and total", inj);
        int outside = 0;
        for (char u : used)
            if (!u) ++outside;
        if (p.degenerate)
            rep.add("faces outside eta's image", outside == 0, "degenerate cut keeps all faces");
        else
            rep.add("exactly one face outside eta's image", outside == 1 && !used[fstar]);
        if (inj && !p.degenerate) {
            // transport check: walks as (edge, head) pair sequences
            bool transport = true;
            for (int hf = 0; hf < static_cast<int>(hostfs.faces.size()); ++hf) {
                const Face& f = gpfs.faces[p.eta[hf]];
                detail::PairWalk pw, hw;
                for (const Dart& d : f.walk) pw.push_back({p.psi[d.e], p.phi[gp.head(d)]});
                for (const Dart& d : hostfs.faces[hf].walk) hw.push_back({d.e, host.head(d)});
                if (!detail::cyclic_pair_match(hw, pw) &&
                    !detail::cyclic_pair_match(hw, detail::mirror_pairs(pw)))
                    transport = false;
            }
            rep.add("eta boundary-walk transport", transport);
            // F* boundary is C
            const Face& fsf = gpfs.faces[fstar];
            std::vector<int> fedges;
            for (const Dart& d : fsf.walk) fedges.push_back(d.e);
            rep.add("F* boundary walk is C",
                    sorted_unique(fedges) == sorted_unique(p.c_edges) &&
                        fsf.walk.size() == p.c_edges.size());
        }
    }
    // counts and planarity
    int g = m.genus;
    rep.add("|V(G')| = |V(G)| + |V(M)| + 2g - 2",
            p.degenerate || gp.g.n == n_host + static_cast<int>(p.vm.size()) + 2 * g - 2);
    rep.add("|E(G')| = |E(G)| + |E(M)|",
            gp.g.num_edges() == host.g.num_edges() + static_cast<int>(m.edges.size()));
    rep.add("euler_genus(G') = 0", euler_genus(gp) == 0);
    return rep;
}

}  // namespace decomp

#endif

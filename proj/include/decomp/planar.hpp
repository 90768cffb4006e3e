#ifndef DECOMP_PLANAR_HPP
#define DECOMP_PLANAR_HPP

// Quasi-triangulation completion via facial criteria, contraction of
// connected subgraphs, minimal separators, the 3*sqrt(3n) separator ladder,
// and the connected treewidth-2 partition with the 12*sqrt(3n) width bound.

#include <cmath>

#include "embed.hpp"

namespace decomp {

// ---------------------------------------------------------------------------
// Facial criteria.

struct FacialCriterion {
    // satisfied(eg, s_mask, num_discs, faces, face_index)
    std::function<bool(const EmbeddedGraph&, const std::vector<char>&, int, const FaceSet&, int)>
        satisfied;
    bool consistent = false;
    bool reducible = false;
};

inline bool face_boundary_clique(const EmbeddedGraph& eg, const Face& f) {
    std::vector<int> vs = sorted_unique(face_vertices(eg, f));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!eg.g.has_edge(vs[i], vs[j])) return false;
    return true;
}

// The clique extension of a consistent criterion is
// reducible. A face additionally satisfies the extension when it is 2-cell
// with a clique boundary, or when s is empty and a disc is present.
inline FacialCriterion clique_criteria_extension(const FacialCriterion& base) {
    FacialCriterion out;
    out.consistent = base.consistent;
    out.reducible = base.consistent;
    auto base_fn = base.satisfied;
    out.satisfied = [base_fn](const EmbeddedGraph& eg, const std::vector<char>& smask,
                              int num_discs, const FaceSet& fs, int fi) {
        if (base_fn && base_fn(eg, smask, num_discs, fs, fi)) return true;
        if (!fs.two_cell) return false;
        bool s_empty = true;
        for (char c : smask)
            if (c) s_empty = false;
        if (s_empty && num_discs > 0) return true;
        return face_boundary_clique(eg, fs.faces[fi]);
    };
    return out;
}

inline FacialCriterion never_criterion() {
    FacialCriterion c;
    c.consistent = true;
    c.reducible = false;
    c.satisfied = [](const EmbeddedGraph&, const std::vector<char>&, int, const FaceSet&, int) {
        return false;
    };
    return c;
}

inline FacialCriterion two_cell_criterion() {
    FacialCriterion c;
    c.consistent = true;
    c.reducible = true;
    c.satisfied = [](const EmbeddedGraph&, const std::vector<char>&, int, const FaceSet& fs, int) {
        return fs.two_cell;
    };
    return c;
}

// ---------------------------------------------------------------------------
// complete_faces: drive every face to the criterion.
//
// Repeatedly pick an unsatisfied face, choose x on its walk (preferring a
// vertex of s), and insert an edge from x to the second-next walk vertex,
// splitting the face into a triangle and a shorter face. Edges without an
// endpoint in s never enter the s-containing face of g - s, so the disc
// host never splits.

struct CompletionResult {
    EmbeddedGraph eg;
    std::vector<CleanDisc> discs;  // re-located hosts in the result
    int edges_added = 0;
};

namespace detail {

// host face of the first disc in g - s, identified by a surviving host dart
struct DiscAnchor {
    bool trivial = true;  // no boundary edges to anchor on (t <= 1 or edgeless)
    int host_edge = -1;   // host edge id of the anchor dart
    int dir = 0;
};

inline DiscAnchor disc_anchor(const EmbeddedGraph& eg, const std::vector<int>& s,
                              const CleanDisc& d) {
    DiscAnchor a;
    EmbeddedSubgraph sub = delete_vertices(eg, s);
    if (sub.eg.g.num_edges() == 0) return a;
    FaceSet fs = trace_faces(sub.eg);
    if (d.face < 0 || d.face >= static_cast<int>(fs.faces.size()))
        throw ValidationError("complete_faces: disc host face out of range in g - s");
    Report rep = validate_disc(sub.eg, fs, d);
    // disc vertices are host ids; remap for validation
    CleanDisc local = d;
    for (int& v : local.bs) {
        if (v < 0 || v >= static_cast<int>(sub.new_of.size()) || sub.new_of[v] < 0)
            throw ValidationError("complete_faces: disc boundary vertex missing from g - s");
        v = sub.new_of[v];
    }
    Report rep2 = validate_disc(sub.eg, fs, local);
    if (!rep2.ok())
        throw ValidationError("complete_faces: disc invalid in g - s:\n" + rep2.summary());
    (void)rep;
    const Dart& d0 = fs.faces[d.face].walk.front();
    a.trivial = false;
    a.host_edge = sub.edge_orig[d0.e];
    a.dir = d0.d;
    return a;
}

inline int relocate_disc_face(const CleanDisc& d, const DiscAnchor& a,
                              const EmbeddedSubgraph& sub, const FaceSet& fs) {
    if (!a.trivial) {
        int le = sub.edge_new[a.host_edge];
        if (le < 0) throw ValidationError("complete_faces: disc anchor edge vanished (bug)");
        for (int fi = 0; fi < static_cast<int>(fs.faces.size()); ++fi)
            for (const Dart& dd : fs.faces[fi].walk)
                if (dd.e == le && dd.d == a.dir) return fi;
        throw ValidationError("complete_faces: disc anchor dart not on any face (bug)");
    }
    // no anchor: find any face realizing the boundary list
    CleanDisc local = d;
    for (int& v : local.bs) v = sub.new_of[v];
    for (int fi = 0; fi < static_cast<int>(fs.faces.size()); ++fi) {
        CleanDisc cand = local;
        cand.face = fi;
        if (validate_disc(sub.eg, fs, cand).ok()) return fi;
    }
    if (fs.faces.empty()) return 0;
    throw ValidationError("complete_faces: no face realizes the disc boundary (bug)");
}

}  // namespace detail

inline CompletionResult complete_faces(const EmbeddedGraph& eg0, const FacialCriterion& crit,
                                       const std::vector<int>& s,
                                       const std::vector<CleanDisc>& discs) {
    if (!crit.reducible) throw ValidationError("complete_faces: criterion is not reducible");
    if (eg0.g.n == 0) throw ValidationError("complete_faces: empty graph");
    if (!is_connected(eg0.g)) throw ValidationError("complete_faces: host must be connected");
    EmbeddedGraph eg = normalize_orientation(eg0);
    std::vector<char> smask(eg.g.n, 0);
    for (int v : s) smask[v] = 1;

    std::vector<detail::DiscAnchor> anchors;
    for (const auto& d : discs) anchors.push_back(detail::disc_anchor(eg, s, d));

    auto ft_before_all = facial_triangles(eg);
    CompletionResult out;

    // Euler-style growth budget: every insertion shrinks the total face
    // overhang sum by at least one.
    FaceSet fs = trace_faces(eg);
    long budget = 4;
    for (const auto& f : fs.faces)
        budget += std::max<long>(0, static_cast<long>(f.walk.size()) - 3);

    for (;;) {
        int target = -1;
        for (int fi = 0; fi < static_cast<int>(fs.faces.size()); ++fi)
            if (!crit.satisfied(eg, smask, static_cast<int>(discs.size()), fs, fi)) {
                target = fi;
                break;
            }
        if (target < 0) break;
        const Face& f = fs.faces[target];
        if (f.walk.size() < 4)
            throw ValidationError("complete_faces: criterion rejects a short face (not reducible)");
        // choose x: prefer an s vertex on the walk, lowest id; else lowest vertex
        int L = static_cast<int>(f.walk.size());
        int px = -1;
        for (int i = 0; i < L; ++i) {
            int h = eg.head(f.walk[i]);
            if (smask[h] && (px < 0 || !smask[eg.head(f.walk[px])] || h < eg.head(f.walk[px])))
                px = i;
        }
        if (px < 0)
            for (int i = 0; i < L; ++i)
                if (px < 0 || eg.head(f.walk[i]) < eg.head(f.walk[px])) px = i;
        auto ft_before = facial_triangles(eg);
        insert_edge_at_corners(eg, f, px, (px + 2) % L);
        ++out.edges_added;
        if (--budget < 0) throw ValidationError("complete_faces: growth budget exceeded (bug)");
        fs = trace_faces(eg);
        // facial triangles must survive every insertion
        auto ft_after = facial_triangles(eg);
        for (const auto& t : ft_before)
            if (!ft_after.count(t))
                throw ValidationError("complete_faces: insertion destroyed a facial triangle (bug)");
    }

    auto ft_after_all = facial_triangles(eg);
    for (const auto& t : ft_before_all)
        if (!ft_after_all.count(t))
            throw ValidationError("complete_faces: facial triangle lost (bug)");

    out.discs = discs;
    if (!discs.empty()) {
        EmbeddedSubgraph sub = delete_vertices(eg, s);
        FaceSet subfs = trace_faces(sub.eg);
        for (std::size_t i = 0; i < discs.size(); ++i)
            out.discs[i].face = detail::relocate_disc_face(discs[i], anchors[i], sub, subfs);
    }
    out.eg = std::move(eg);
    return out;
}

// ---------------------------------------------------------------------------
// make_two_cell. In the rotation-system world every face
// of a connected host is 2-cell, so the work is joining components.

inline CompletionResult make_two_cell(const EmbeddedGraph& eg0,
                                      const std::vector<CleanDisc>& discs) {
    if (eg0.g.n == 0) throw ValidationError("make_two_cell: the graph must be nonempty");
    CompletionResult out;
    out.eg = eg0;
    auto comp = component_ids(out.eg.g);
    int nc = *std::max_element(comp.begin(), comp.end()) + 1;
    if (nc > 1) {
        std::vector<int> rep(nc, -1);
        for (int v = 0; v < out.eg.g.n; ++v)
            if (rep[comp[v]] < 0) rep[comp[v]] = v;
        for (int c = 1; c < nc; ++c) {
            out.eg.g.add_edge(rep[0], rep[c]);
            out.eg.sig.push_back(1);
            out.eg.rot[rep[0]].push_back({out.eg.g.num_edges() - 1, 0});
            out.eg.rot[rep[c]].push_back({out.eg.g.num_edges() - 1, 1});
            ++out.edges_added;
        }
        auto ft0 = facial_triangles(eg0);
        auto ft1 = facial_triangles(out.eg);
        for (const auto& t : ft0)
            if (!ft1.count(t)) throw ValidationError("make_two_cell: facial triangle lost (bug)");
    }
    out.discs = discs;
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-triangulations.

inline bool is_quasi_triangulation(const EmbeddedGraph& eg) {
    if (!is_connected(eg.g)) return false;  // quasi-triangulations are connected
    if (eg.g.num_edges() == 0) return eg.g.n <= 1;
    FaceSet fs = trace_faces(eg);
    for (const auto& f : fs.faces)
        if (!face_boundary_clique(eg, f)) return false;
    return true;
}

// make_quasi_triangulation: complete every face
// boundary to a clique; s sits inside the disc and absorbs the insertions
// around it.
inline CompletionResult make_quasi_triangulation(const EmbeddedGraph& eg, const std::vector<int>& s,
                                                 const CleanDisc& d) {
    if (s.empty()) throw ValidationError("make_quasi_triangulation: s must be nonempty");
    FacialCriterion crit = clique_criteria_extension(never_criterion());
    CompletionResult r = complete_faces(eg, crit, s, {d});
    if (!is_quasi_triangulation(r.eg))
        throw ValidationError("make_quasi_triangulation: result not a quasi-triangulation (bug)");
    return r;
}

// ---------------------------------------------------------------------------
// contract_connected: delete A, then grow a fresh vertex
// adjacent into the face that held A until the hole is triangulated again.

struct ContractResult {
    EmbeddedGraph eg;
    int new_vertex = -1;
    std::vector<int> orig_of;  // result vertex -> host vertex (-1 for the new one)
    std::vector<int> new_of;   // host vertex -> result vertex (-1 for deleted)
};

inline ContractResult contract_connected(const EmbeddedGraph& eg, const std::vector<int>& a) {
    if (a.empty()) throw ValidationError("contract_connected: a must be nonempty");
    if (!is_connected_subset(eg.g, a))
        throw ValidationError("contract_connected: a must induce a connected subgraph");
    if (a.size() == 1) {
        ContractResult r;
        r.eg = eg;
        r.new_vertex = a[0];
        r.orig_of.resize(eg.g.n);
        std::iota(r.orig_of.begin(), r.orig_of.end(), 0);
        r.orig_of[a[0]] = -1;
        r.new_of = r.orig_of;
        r.new_of[a[0]] = a[0];
        for (int v = 0; v < eg.g.n; ++v) r.new_of[v] = v;
        return r;
    }
    std::vector<int> hood = sorted_unique([&] {
        std::vector<int> h;
        std::vector<char> ina(eg.g.n, 0);
        for (int v : a) ina[v] = 1;
        for (int v : a)
            for (auto [w, e] : eg.g.adj[v])
                if (!ina[w]) h.push_back(w);
        return h;
    }());

    EmbeddedGraph host = normalize_orientation(eg);
    EmbeddedSubgraph sub = delete_vertices(host, a);
    if (sub.eg.g.n == 0)
        throw ValidationError("contract_connected: a covers the whole graph");
    ContractResult r;

    // The hole left by A may border several faces of g - A (g - A can be
    // disconnected when A is ring-shaped). Collect every such face.
    FaceSet subfs = trace_faces(sub.eg);
    std::map<std::pair<int, int>, int> face_of_dart;
    for (int fi = 0; fi < static_cast<int>(subfs.faces.size()); ++fi)
        for (const Dart& dd : subfs.faces[fi].walk) face_of_dart[{dd.e, dd.d}] = fi;
    FaceSet hostfs = trace_faces(host);
    std::vector<char> ina(host.g.n, 0);
    for (int v : a) ina[v] = 1;
    std::set<int> hole_faces;
    for (const auto& f : hostfs.faces) {
        bool touches = false;
        for (const Dart& dd : f.walk)
            if (ina[host.head(dd)]) touches = true;
        if (!touches) continue;
        for (const Dart& dd : f.walk)
            if (sub.edge_new[dd.e] >= 0)
                hole_faces.insert(face_of_dart.at({sub.edge_new[dd.e], dd.d}));
    }
    // isolated survivors adjacent only to A have no darts at all
    std::vector<int> lonely;
    for (int v = 0; v < sub.eg.g.n; ++v)
        if (sub.eg.g.degree(v) == 0) lonely.push_back(v);

    EmbeddedGraph work = sub.eg;  // already all-positive: host was normalized
    int nv = work.g.add_vertex();
    work.rot.emplace_back();
    // bootstrap one fan edge into each hole face and each isolated survivor
    for (int fi : hole_faces) {
        const Dart& d0 = subfs.faces[fi].walk[0];
        int v0 = work.head(d0);
        int e = work.g.add_edge(v0, nv);
        work.sig.push_back(1);
        int p = work.find_end(v0, End{d0.e, 1 - d0.d});
        work.rot[v0].insert(work.rot[v0].begin() + p + 1, End{e, 0});
        work.rot[nv].push_back({e, 1});
    }
    for (int v0 : lonely) {
        int e = work.g.add_edge(v0, nv);
        work.sig.push_back(1);
        work.rot[v0].push_back({e, 0});
        work.rot[nv].push_back({e, 1});
    }
    if (!is_connected(work.g))
        throw ValidationError("contract_connected: could not reach every remainder component");
    // complete around nv with the quasi-triangulation criterion, s = {nv}
    FacialCriterion crit = clique_criteria_extension(never_criterion());
    CompletionResult done = complete_faces(work, crit, {nv}, {});
    r.eg = std::move(done.eg);
    r.new_vertex = nv;
    r.orig_of = sub.orig_of;
    r.orig_of.push_back(-1);
    r.new_of = sub.new_of;

    // PQTContract postconditions
    std::vector<int> na;
    for (auto [w, e] : r.eg.g.adj[nv])
        if (w != nv) na.push_back(w);
    na = sorted_unique(na);
    for (int& v : na) v = r.orig_of[v];
    std::sort(na.begin(), na.end());
    if (na != hood)
        throw ValidationError("contract_connected: N(a) != N_G(V(A)) "
                              "(host not a quasi-triangulation?)");
    if (!is_quasi_triangulation(r.eg))
        throw ValidationError("contract_connected: result not a quasi-triangulation (bug)");
    return r;
}

// ---------------------------------------------------------------------------
// Menger machinery: unit-capacity vertex-split max flow restricted to an
// allowed vertex set.

struct MengerResult {
    int flow = 0;
    std::vector<int> cut;  // only meaningful when the flow was not capped
    bool capped = false;
};

// Max pairwise vertex-disjoint X-Y paths inside g[allowed]; a vertex of
// X ∩ Y counts as a path. When endpoints_cuttable is false (classic internal
// Menger), vertices of X ∪ Y get infinite capacity and never enter the cut.
inline MengerResult menger_vertex_disjoint(const Multigraph& g, const std::vector<char>& allowed,
                                           const std::vector<int>& X, const std::vector<int>& Y,
                                           int cap = -1, bool endpoints_cuttable = true) {
    const int n = g.n;
    const int S = 2 * n, T = 2 * n + 1, N = 2 * n + 2;
    const int INF = 1 << 28;
    struct Arc {
        int to, capacity;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out(N);
    auto add_arc = [&](int u, int v, int c) {
        out[u].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({v, c});
        out[v].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({u, 0});
    };
    std::vector<char> isx(n, 0), isy(n, 0);
    for (int v : X)
        if (allowed[v]) isx[v] = 1;
    for (int v : Y)
        if (allowed[v]) isy[v] = 1;
    for (int v = 0; v < n; ++v) {
        if (!allowed[v]) continue;
        int vc = (!endpoints_cuttable && (isx[v] || isy[v])) ? INF : 1;
        add_arc(2 * v, 2 * v + 1, vc);
        if (isx[v]) add_arc(S, 2 * v, INF);
        if (isy[v]) add_arc(2 * v + 1, T, INF);
    }
    for (auto& e : g.edges) {
        int u = e[0], v = e[1];
        if (u == v || !allowed[u] || !allowed[v]) continue;
        add_arc(2 * u + 1, 2 * v, INF);
        add_arc(2 * v + 1, 2 * u, INF);
    }
    MengerResult res;
    std::vector<int> pre(N);
    for (;;) {
        if (cap >= 0 && res.flow > cap) {
            res.capped = true;
            return res;
        }
        std::fill(pre.begin(), pre.end(), -1);
        std::queue<int> bfs;
        bfs.push(S);
        pre[S] = -2;
        while (!bfs.empty() && pre[T] == -1) {
            int u = bfs.front();
            bfs.pop();
            for (int ai : out[u]) {
                if (arcs[ai].capacity <= 0) continue;
                int w = arcs[ai].to;
                if (pre[w] != -1) continue;
                pre[w] = ai;
                bfs.push(w);
            }
        }
        if (pre[T] == -1) break;
        for (int u = T; u != S;) {
            int ai = pre[u];
            arcs[ai].capacity -= 1;
            arcs[ai ^ 1].capacity += 1;
            u = arcs[ai ^ 1].to;
        }
        ++res.flow;
    }
    // min cut: split arcs saturated with the in-node reachable
    std::vector<char> reach(N, 0);
    std::vector<int> stack{S};
    reach[S] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int ai : out[u])
            if (arcs[ai].capacity > 0 && !reach[arcs[ai].to]) {
                reach[arcs[ai].to] = 1;
                stack.push_back(arcs[ai].to);
            }
    }
    for (int v = 0; v < n; ++v)
        if (allowed[v] && reach[2 * v] && !reach[2 * v + 1]) res.cut.push_back(v);
    return res;
}

// Is S a separator between X and Y in g[allowed]? (Paper flavor: every
// component of g[allowed] - S meets at most one of X, Y.)
inline bool is_separator(const Multigraph& g, const std::vector<char>& allowed,
                         const std::vector<int>& X, const std::vector<int>& Y,
                         const std::vector<int>& S) {
    std::vector<char> alive = allowed;
    for (int v : S) alive[v] = 0;
    std::vector<char> isx(g.n, 0), isy(g.n, 0);
    for (int v : X) isx[v] = 1;
    for (int v : Y) isy[v] = 1;
    std::vector<int> comp(g.n, -1);
    int c = 0;
    for (int s0 = 0; s0 < g.n; ++s0) {
        if (!alive[s0] || comp[s0] >= 0) continue;
        bool hasx = false, hasy = false;
        std::vector<int> stack{s0};
        comp[s0] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (isx[v]) hasx = true;
            if (isy[v]) hasy = true;
            for (auto [w, e] : g.adj[v])
                if (alive[w] && comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        if (hasx && hasy) return false;
        ++c;
    }
    return true;
}

// Greedy lowest-id minimalization under the paper-flavor separator notion.
inline std::vector<int> minimalize_separator(const Multigraph& g, const std::vector<char>& allowed,
                                             const std::vector<int>& X, const std::vector<int>& Y,
                                             std::vector<int> S) {
    S = sorted_unique(S);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < S.size(); ++i) {
            std::vector<int> trial = S;
            trial.erase(trial.begin() + i);
            if (is_separator(g, allowed, X, Y, trial)) {
                S = trial;
                changed = true;
                break;
            }
        }
    }
    return S;
}

// The planarpart op: inclusion-minimal separator between x and y, classic
// internal flavor (disjoint from x ∪ y), built from the Menger cut.
inline std::vector<int> minimal_separator(const Multigraph& c, const std::vector<int>& x,
                                          const std::vector<int>& y) {
    if (x.empty() || y.empty()) return {};
    std::vector<char> isx(c.n, 0);
    for (int v : x) isx[v] = 1;
    for (int v : y) {
        if (isx[v]) throw ValidationError("minimal_separator: x and y intersect");
        for (auto [w, e] : c.adj[v])
            if (isx[w]) throw ValidationError("minimal_separator: x adjacent to y, no separator");
    }
    std::vector<char> allowed(c.n, 1);
    MengerResult mr = menger_vertex_disjoint(c, allowed, x, y, -1, false);
    std::vector<int> S = mr.cut;
    // greedy removal, lowest id first: min cuts are already inclusion-minimal,
    // but the pass keeps the contract explicit
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < S.size(); ++i) {
            std::vector<int> trial = S;
            trial.erase(trial.begin() + i);
            if (is_separator(c, allowed, x, y, trial)) {
                S = trial;
                changed = true;
                break;
            }
        }
    }
    return S;
}

// ---------------------------------------------------------------------------
// planar_small_sep (Cor. planarSmallSep): strategy ladder. Empty S when all
// per-component kappa already fit; otherwise peel shortest N(a)-N(b) paths
// inside the worst component; flag with measured constants when the ladder
// exceeds the budget.

struct SeparatorResult {
    std::vector<int> s;
    std::vector<std::vector<int>> components;  // of g - a - b - s
    std::vector<int> kappa;                    // per component, exact
    int closed_neighborhood_size = 0;          // |N[S]|
    double bound = 0.0;                        // 3*sqrt(3n)
    bool bounds_met = true;
};

namespace detail {

inline std::vector<std::vector<int>> components_of_mask(const Multigraph& g,
                                                        const std::vector<char>& alive) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n, 0);
    for (int s0 = 0; s0 < g.n; ++s0) {
        if (!alive[s0] || seen[s0]) continue;
        comps.emplace_back();
        std::vector<int> stack{s0};
        seen[s0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (auto [w, e] : g.adj[v])
                if (alive[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

inline std::vector<int> neighbors_in_mask(const Multigraph& g, const std::vector<int>& set,
                                          const std::vector<char>& mask) {
    std::vector<int> out;
    std::vector<char> inset(g.n, 0);
    for (int v : set) inset[v] = 1;
    for (int v : set)
        for (auto [w, e] : g.adj[v])
            if (!inset[w] && mask[w]) out.push_back(w);
    return sorted_unique(out);
}

}  // namespace detail

inline SeparatorResult planar_small_sep(const Multigraph& g, const std::vector<int>& a,
                                        const std::vector<int>& b) {
    if (!is_connected_subset(g, a) || !is_connected_subset(g, b))
        throw ValidationError("planar_small_sep: a and b must induce connected subgraphs");
    std::vector<char> ina(g.n, 0), inb(g.n, 0);
    for (int v : a) ina[v] = 1;
    for (int v : b) {
        if (ina[v]) throw ValidationError("planar_small_sep: a and b must be disjoint");
        inb[v] = 1;
    }
    bool adjacent = false;
    for (int v : a)
        for (auto [w, e] : g.adj[v])
            if (inb[w]) adjacent = true;
    if (!adjacent) throw ValidationError("planar_small_sep: N(a) must intersect b");

    SeparatorResult res;
    double n = static_cast<double>(g.n);
    res.bound = 3.0 * std::sqrt(3.0 * n);
    int cap = static_cast<int>(std::floor(res.bound)) + 1;

    std::vector<char> in_s(g.n, 0);
    std::vector<char> alive(g.n, 1);
    for (int v = 0; v < g.n; ++v)
        if (ina[v] || inb[v]) alive[v] = 0;

    auto kappa_of = [&](const std::vector<int>& comp, int capk) {
        std::vector<char> mask(g.n, 0);
        for (int v : comp) mask[v] = 1;
        std::vector<int> X = detail::neighbors_in_mask(g, a, mask);
        std::vector<int> Y = detail::neighbors_in_mask(g, b, mask);
        return menger_vertex_disjoint(g, mask, X, Y, capk, true);
    };

    for (;;) {
        auto comps = detail::components_of_mask(g, alive);
        int worst = -1;
        for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci) {
            MengerResult mr = kappa_of(comps[ci], cap);
            if (mr.capped || static_cast<double>(mr.flow) > res.bound) {
                worst = ci;
                break;
            }
        }
        if (worst < 0) break;
        // peel a shortest N(a)∩C -> N(b)∩C path inside the worst component
        std::vector<char> mask(g.n, 0);
        for (int v : comps[worst]) mask[v] = 1;
        std::vector<int> X = detail::neighbors_in_mask(g, a, mask);
        std::vector<int> Y = detail::neighbors_in_mask(g, b, mask);
        std::vector<char> tgt(g.n, 0);
        for (int v : Y) tgt[v] = 1;
        std::vector<int> par(g.n, -1);
        std::queue<int> bfs;
        std::vector<char> seen(g.n, 0);
        for (int v : X) {
            seen[v] = 1;
            par[v] = v;
            bfs.push(v);
        }
        int hit = -1;
        for (int v : X)
            if (tgt[v]) hit = std::min(hit < 0 ? v : hit, v);
        while (hit < 0 && !bfs.empty()) {
            int v = bfs.front();
            bfs.pop();
            std::vector<int> ns;
            for (auto [w, e] : g.adj[v])
                if (mask[w] && !seen[w]) ns.push_back(w);
            for (int w : sorted_unique(ns)) {
                seen[w] = 1;
                par[w] = v;
                if (tgt[w]) {
                    hit = w;
                    break;
                }
                bfs.push(w);
            }
        }
        if (hit < 0) throw ValidationError("planar_small_sep: positive kappa but no path (bug)");
        for (int v = hit;; v = par[v]) {
            in_s[v] = 1;
            alive[v] = 0;
            if (par[v] == v) break;
        }
    }

    for (int v = 0; v < g.n; ++v)
        if (in_s[v]) res.s.push_back(v);
    res.components = detail::components_of_mask(g, alive);
    for (const auto& comp : res.components) {
        MengerResult mr = kappa_of(comp, -1);
        res.kappa.push_back(mr.flow);
        if (static_cast<double>(mr.flow) > res.bound) res.bounds_met = false;
    }
    std::vector<char> all(g.n, 1);
    std::vector<int> ns = detail::neighbors_in_mask(g, res.s, all);
    res.closed_neighborhood_size = static_cast<int>(ns.size() + res.s.size());
    if (static_cast<double>(res.closed_neighborhood_size) > res.bound) res.bounds_met = false;
    // connectivity contract: each peeled path meets N(a) and N(b)
    if (!res.s.empty()) {
        std::vector<int> as = a, bs = b;
        for (int v : res.s) {
            as.push_back(v);
            bs.push_back(v);
        }
        if (!is_connected_subset(g, as) || !is_connected_subset(g, bs))
            throw ValidationError("planar_small_sep: a∪S or b∪S disconnected (bug)");
    }
    return res;
}

// ---------------------------------------------------------------------------
// connected_partition_pqt and con_planar.

struct PqtPartitionStats {
    int recursion_nodes = 0;
    int max_depth = 0;
};

namespace detail {

struct CppContext {
    const Multigraph* g;
    double bound12;  // 12*sqrt(3n)
    double bound6;   // 6*sqrt(3n)
    PqtPartitionStats* stats;
    int depth_guard;
};

inline bool same_set(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline Partition cpp_rec(CppContext& ctx, std::vector<std::vector<int>> hs, int depth) {
    const Multigraph& g = *ctx.g;
    ++ctx.stats->recursion_nodes;
    ctx.stats->max_depth = std::max(ctx.stats->max_depth, depth);
    if (depth > ctx.depth_guard)
        throw ValidationError("connected_partition_pqt: recursion depth guard tripped");

    std::size_t covered = 0;
    for (const auto& h : hs) covered += h.size();
    if (covered == static_cast<std::size_t>(g.n)) return Partition(hs.begin(), hs.end());

    if (hs.empty()) {
        return cpp_rec(ctx, {{0}}, depth + 1);
    }
    if (hs.size() == 1 && hs[0].empty()) {
        Partition p = cpp_rec(ctx, {}, depth + 1);
        p.push_back({});  // explicit empty-part branch; isolated in the quotient
        return p;
    }
    if (hs.size() == 1) {
        const std::vector<int>& A = hs[0];
        std::vector<char> ina(g.n, 0);
        for (int v : A) ina[v] = 1;
        int v0 = -1;
        for (int u : A)
            for (auto [w, e] : g.adj[u])
                if (!ina[w] && (v0 < 0 || w < v0)) v0 = w;
        if (v0 < 0)
            throw ValidationError("connected_partition_pqt: host disconnected (not a PQT)");
        SeparatorResult sep = planar_small_sep(g, A, {v0});
        std::vector<int> B = sep.s;
        B.push_back(v0);
        B = sorted_unique(B);
        return cpp_rec(ctx, {A, B}, depth + 1);
    }

    // |hs| == 2
    std::vector<int> A = hs[0], B = hs[1];
    std::vector<char> ina(g.n, 0), inb(g.n, 0);
    for (int v : A) ina[v] = 1;
    for (int v : B) inb[v] = 1;
    auto nbhd_within = [&](const std::vector<int>& set, const std::vector<char>& inset) {
        std::vector<int> out;
        for (int v : set)
            for (auto [w, e] : g.adj[v])
                if (!inset[w]) out.push_back(w);
        return sorted_unique(out);
    };
    std::vector<int> nA = nbhd_within(A, ina), nB = nbhd_within(B, inb);
    auto subset_of = [&](const std::vector<int>& xs, const std::vector<char>& mask) {
        for (int v : xs)
            if (!mask[v]) return false;
        return true;
    };
    if (subset_of(nB, ina) || subset_of(nA, inb)) {
        // one side is swallowed: merge, recurse, split the merged part back
        std::vector<int> merged = A;
        merged.insert(merged.end(), B.begin(), B.end());
        merged = sorted_unique(merged);
        Partition p = cpp_rec(ctx, {merged}, depth + 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (same_set(p[i], merged)) {
                p[i] = sorted_unique(A);
                p.push_back(sorted_unique(B));
                return p;
            }
        throw ValidationError("connected_partition_pqt: merged part vanished (bug)");
    }

    std::vector<char> alive(g.n, 1);
    for (int v : A) alive[v] = 0;
    for (int v : B) alive[v] = 0;
    auto comps = components_of_mask(g, alive);

    std::vector<int> S;
    std::vector<std::vector<int>> s_per_comp(comps.size());
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        std::vector<char> mask(g.n, 0);
        for (int v : comps[ci]) mask[v] = 1;
        std::vector<int> X = neighbors_in_mask(g, A, mask);
        std::vector<int> Y = neighbors_in_mask(g, B, mask);
        if (X.empty() || Y.empty()) continue;
        MengerResult mr = menger_vertex_disjoint(g, mask, X, Y, -1, true);
        if (static_cast<double>(mr.flow) > ctx.bound6)
            throw ValidationError("connected_partition_pqt: kappa precondition violated (" +
                                  std::to_string(mr.flow) + " > 6*sqrt(3n))");
        std::vector<int> sc = minimalize_separator(g, mask, X, Y, mr.cut);
        if (!is_connected_subset(g, sc))
            throw ValidationError("connected_partition_pqt: minimal separator disconnected (bug)");
        s_per_comp[ci] = sc;
        for (int v : sc) S.push_back(v);
    }
    S = sorted_unique(S);
    std::vector<char> ins(g.n, 0);
    for (int v : S) {
        ins[v] = 1;
        alive[v] = 0;
    }
    auto comps2 = components_of_mask(g, alive);
    std::vector<char> in_na(g.n, 0), in_nb(g.n, 0);
    for (int v : nA) in_na[v] = 1;
    for (int v : nB) in_nb[v] = 1;
    std::vector<int> CA, CB, CD;  // unions of the classified components
    for (const auto& c2 : comps2) {
        bool ta = false, tb = false;
        for (int v : c2) {
            if (in_na[v]) ta = true;
            if (in_nb[v]) tb = true;
        }
        if (ta && tb)
            throw ValidationError("connected_partition_pqt: component meets both sides (bug)");
        auto& dst = ta ? CA : tb ? CB : CD;
        for (int v : c2) dst.push_back(v);
    }
    std::sort(CA.begin(), CA.end());
    std::sort(CB.begin(), CB.end());
    std::sort(CD.begin(), CD.end());

    auto union_sets = [](std::initializer_list<const std::vector<int>*> sets) {
        std::vector<int> out;
        for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
        return sorted_unique(out);
    };

    // H = A side
    std::vector<int> Aprime = union_sets({&CA, &A, &CD, &S});
    SeparatorResult sepA = planar_small_sep(g, Aprime, B);
    std::vector<int> SA = sepA.s;  // inside CB
    std::vector<int> A2 = union_sets({&Aprime, &SA});
    Partition pA = cpp_rec(ctx, {A2, B}, depth + 1);
    Partition pA2;
    bool dropA = false, dropB_A = false;
    std::vector<int> Bs = sorted_unique(B);
    for (auto& part : pA) {
        if (!dropA && same_set(part, A2)) {
            dropA = true;
            continue;
        }
        if (!dropB_A && same_set(part, Bs)) {
            dropB_A = true;
            continue;
        }
        pA2.push_back(part);
    }
    if (!dropA || !dropB_A)
        throw ValidationError("connected_partition_pqt: expected parts missing (bug)");

    // H = B side
    std::vector<int> Bprime = union_sets({&CB, &B, &CD, &S});
    SeparatorResult sepB = planar_small_sep(g, Bprime, A);
    std::vector<int> SB = sepB.s;  // inside CA
    std::vector<int> B2 = union_sets({&Bprime, &SB});
    Partition pB = cpp_rec(ctx, {B2, A}, depth + 1);
    Partition pB2;
    bool dropB = false, dropA_B = false;
    std::vector<int> As = sorted_unique(A);
    for (auto& part : pB) {
        if (!dropB && same_set(part, B2)) {
            dropB = true;
            continue;
        }
        if (!dropA_B && same_set(part, As)) {
            dropA_B = true;
            continue;
        }
        pB2.push_back(part);
    }
    if (!dropB || !dropA_B)
        throw ValidationError("connected_partition_pqt: expected parts missing (bug)");

    // D region
    Partition pD2;
    if (!CD.empty()) {
        std::vector<int> Dprime = union_sets({&A, &B, &CA, &CB, &S});
        Partition pD = cpp_rec(ctx, {Dprime}, depth + 1);
        bool dropD = false;
        for (auto& part : pD) {
            if (!dropD && same_set(part, Dprime)) {
                dropD = true;
                continue;
            }
            pD2.push_back(part);
        }
        if (!dropD) throw ValidationError("connected_partition_pqt: D' part missing (bug)");
    }

    // assemble: S'_C = S_C ∪ (S_A ∩ C) ∪ (S_B ∩ C) per original component
    std::vector<char> in_sa(g.n, 0), in_sb(g.n, 0);
    for (int v : SA) in_sa[v] = 1;
    for (int v : SB) in_sb[v] = 1;
    Partition out;
    out.push_back(As);
    out.push_back(Bs);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        std::vector<int> sc = s_per_comp[ci];
        for (int v : comps[ci])
            if (in_sa[v] || in_sb[v]) sc.push_back(v);
        sc = sorted_unique(sc);
        if (sc.empty()) continue;
        if (static_cast<double>(sc.size()) > ctx.bound12)
            throw ValidationError("connected_partition_pqt: S'_C exceeds 12*sqrt(3n) (bug)");
        if (!is_connected_subset(g, sc))
            throw ValidationError("connected_partition_pqt: S'_C disconnected (bug)");
        out.push_back(sc);
    }
    for (auto& p : pA2) out.push_back(p);
    for (auto& p : pB2) out.push_back(p);
    for (auto& p : pD2) out.push_back(p);
    return out;
}

}  // namespace detail

inline Partition connected_partition_pqt(const EmbeddedGraph& eg,
                                         const std::vector<std::vector<int>>& hs,
                                         PqtPartitionStats* stats = nullptr) {
    if (!is_quasi_triangulation(eg))
        throw ValidationError("connected_partition_pqt: host must be a plane quasi-triangulation");
    if (euler_genus(eg) != 0)
        throw ValidationError("connected_partition_pqt: host must be plane");
    if (hs.size() > 2)
        throw ValidationError("connected_partition_pqt: at most two given subgraphs");
    std::vector<std::vector<int>> hs2;
    for (const auto& h : hs) {
        if (!is_connected_subset(eg.g, h))
            throw ValidationError("connected_partition_pqt: given subgraphs must be connected");
        hs2.push_back(sorted_unique(h));
    }
    double n = static_cast<double>(eg.g.n);
    PqtPartitionStats local;
    detail::CppContext ctx{&eg.g, 12.0 * std::sqrt(3.0 * n), 6.0 * std::sqrt(3.0 * n),
                           stats ? stats : &local, 4 * eg.g.n + 64};
    if (hs2.size() == 2) {
        // verify the kappa precondition up front
        std::vector<char> alive(eg.g.n, 1);
        for (const auto& h : hs2)
            for (int v : h) alive[v] = 0;
        bool adj = false;
        std::vector<char> inb(eg.g.n, 0);
        for (int v : hs2[1]) inb[v] = 1;
        for (int v : hs2[0])
            for (auto [w, e] : eg.g.adj[v])
                if (inb[w]) adj = true;
        if (!adj)
            throw ValidationError("connected_partition_pqt: N(A) must intersect B when |h| = 2");
        for (auto& comp : detail::components_of_mask(eg.g, alive)) {
            std::vector<char> mask(eg.g.n, 0);
            for (int v : comp) mask[v] = 1;
            std::vector<int> X = detail::neighbors_in_mask(eg.g, hs2[0], mask);
            std::vector<int> Y = detail::neighbors_in_mask(eg.g, hs2[1], mask);
            MengerResult mr = menger_vertex_disjoint(eg.g, mask, X, Y, -1, true);
            if (static_cast<double>(mr.flow) > ctx.bound6)
                throw ValidationError("connected_partition_pqt: kappa precondition violated");
        }
    }
    Partition p = detail::cpp_rec(ctx, hs2, 0);
    require_partition(eg.g, p, "connected_partition_pqt");
    return p;
}

// con_planar: contract W, partition, un-contract.
struct ConPlanarResult {
    Partition parts;
    int w_part = -1;  // index of the part V(W)
    double bound = 0.0;
    PqtPartitionStats stats;
};

inline ConPlanarResult con_planar(const EmbeddedGraph& eg, const std::vector<int>& w) {
    if (w.empty()) throw ValidationError("con_planar: w must be nonempty");
    if (!is_connected_subset(eg.g, w)) throw ValidationError("con_planar: w must be connected");
    ConPlanarResult out;
    double n = static_cast<double>(eg.g.n - static_cast<int>(w.size()) + 1);
    out.bound = 12.0 * std::sqrt(3.0 * n);
    if (static_cast<int>(w.size()) == eg.g.n) {
        out.parts.push_back(sorted_unique(w));
        out.w_part = 0;
        return out;
    }
    ContractResult cr = contract_connected(eg, w);
    Partition p = connected_partition_pqt(cr.eg, {{cr.new_vertex}}, &out.stats);
    for (auto& part : p) {
        std::vector<int> host;
        bool is_w = false;
        for (int v : part) {
            if (v == cr.new_vertex && cr.orig_of[v] < 0) is_w = true;
            else if (cr.orig_of[v] >= 0) host.push_back(cr.orig_of[v]);
            else is_w = true;
        }
        if (is_w) {
            std::vector<int> wp = sorted_unique(w);
            for (int v : host) wp.push_back(v);
            out.w_part = static_cast<int>(out.parts.size());
            out.parts.push_back(sorted_unique(wp));
        } else {
            out.parts.push_back(sorted_unique(host));
        }
    }
    if (out.w_part < 0) throw ValidationError("con_planar: W part missing (bug)");
    return out;
}

// The con_planar output contract as a validator: connected partition, V(W)
// a part, every other part <= 12*sqrt(3n), quotient treewidth <= 2.
inline Report validate_con_planar(const EmbeddedGraph& eg, const std::vector<int>& w,
                                  const ConPlanarResult& r) {
    Report rep;
    bool part_ok = true;
    try {
        require_partition(eg.g, r.parts, "validate_con_planar");
    } catch (const ValidationError& e) {
        part_ok = false;
        rep.add("partition of V(G)", false, e.what());
    }
    if (part_ok) rep.add("partition of V(G)", true);
    rep.add("connected parts", is_connected_partition(eg.g, r.parts));
    bool wok = r.w_part >= 0 && r.w_part < static_cast<int>(r.parts.size()) &&
               r.parts[r.w_part] == sorted_unique(w);
    rep.add("V(W) is a part", wok);
    bool width_ok = true;
    for (int i = 0; i < static_cast<int>(r.parts.size()); ++i)
        if (i != r.w_part && static_cast<double>(r.parts[i].size()) > r.bound) width_ok = false;
    rep.add("non-W parts <= 12*sqrt(3n)", width_ok, "bound " + std::to_string(r.bound));
    if (part_ok) rep.add("quotient treewidth <= 2", treewidth_at_most_2(quotient(eg.g, r.parts)));
    return rep;
}

}  // namespace decomp

#endif

#ifndef DECOMP_VORTEX_HPP
#define DECOMP_VORTEX_HPP

// Plane+quasi-vortex embeddings with identity projection: graph-
// decompositions along the disc boundary, vortex modification, breaks,
// breakpoints, raises, and the almost-partition they induce.

#include "planar.hpp"
#include "treedec.hpp"

namespace decomp {

// Planted boundary-indexed decomposition of the quasi-vortex. Vertex ids live
// in one shared universe: plane vertices 0..n0-1, vortex-only vertices above.
// The index graph U is the disc's underlying cycle over `ring` (a path when
// t <= 2).
struct QuasiVortex {
    std::vector<int> ring;                    // B' in cyclic order (= disc.bs)
    std::vector<std::vector<int>> bags;       // aligned with ring; J'_x contains x
    std::vector<std::pair<int, int>> h_edges; // edges of H'
    std::vector<int> extra_verts;             // vortex vertices outside the ring
    std::map<int, std::vector<int>> witness;  // v -> ring positions, T_v path order

    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }
    std::vector<int> h_vertices() const {
        std::vector<int> vs = ring;
        for (int v : extra_verts) vs.push_back(v);
        for (const auto& b : bags)
            for (int v : b) vs.push_back(v);
        for (auto& e : h_edges) {
            vs.push_back(e.first);
            vs.push_back(e.second);
        }
        return sorted_unique(vs);
    }
    // positions of v's bag interval C_v
    std::vector<int> interval_of(int v) const {
        std::vector<int> pos;
        for (int i = 0; i < static_cast<int>(ring.size()); ++i)
            for (int x : bags[i])
                if (x == v) pos.push_back(i);
        return pos;
    }
};

struct PlaneQuasiVortex {
    EmbeddedGraph g0plus;
    std::vector<int> w;  // obstruction subgraph vertices
    CleanDisc disc;      // face indexes trace_faces(g0plus - w); bs in plane ids
    QuasiVortex vx;
    int total_n = 0;

    Multigraph total_graph() const {
        Multigraph g(total_n);
        for (auto& e : g0plus.g.edges) g.add_edge(e[0], e[1]);
        for (auto& e : vx.h_edges) g.add_edge(e.first, e.second);
        return g;
    }
};

// ---------------------------------------------------------------------------
// The face of g0 = g0plus - w holding the obstruction: every W-incident face
// of g0plus with a surviving dart must descend to the same g0 face.

inline int locate_obstruction_face(const EmbeddedGraph& g0plus, const std::vector<int>& w,
                                   const EmbeddedSubgraph& sub, const FaceSet& subfs) {
    std::map<std::pair<int, int>, int> face_of_dart;
    for (int fi = 0; fi < static_cast<int>(subfs.faces.size()); ++fi)
        for (const Dart& d : subfs.faces[fi].walk) face_of_dart[{d.e, d.d}] = fi;
    std::vector<char> inw(g0plus.g.n, 0);
    for (int v : w) inw[v] = 1;
    FaceSet hostfs = trace_faces(g0plus);
    int fa = -1;
    for (const auto& f : hostfs.faces) {
        bool touches = false;
        for (const Dart& d : f.walk)
            if (inw[g0plus.head(d)]) touches = true;
        if (!touches) continue;
        for (const Dart& d : f.walk) {
            if (sub.edge_new[d.e] < 0) continue;
            int fi = face_of_dart.at({sub.edge_new[d.e], d.d});
            if (fa >= 0 && fa != fi)
                throw ValidationError("obstruction region spans two faces of g0");
            fa = fi;
        }
    }
    if (fa < 0) {
        if (subfs.faces.empty()) return 0;
        throw ValidationError("could not locate the obstruction face");
    }
    return fa;
}

// U-connectivity of a position set: contiguous cyclic arc (or everything)
// when U is a cycle, a contiguous segment when it is a path.
inline bool interval_connected(const std::vector<int>& pos, int t, bool cycle) {
    if (pos.empty()) return false;
    std::vector<char> in(t, 0);
    for (int p : pos) in[p] = 1;
    int blocks = 0;
    for (int i = 0; i < t; ++i) {
        int prev = (i + t - 1) % t;
        bool joined = in[i] && in[prev] && (cycle || i > 0);
        if (in[i] && !joined) ++blocks;
    }
    return blocks <= 1;
}

inline Report validate_lambda(const PlaneQuasiVortex& lam) {
    Report rep;
    const int n0 = lam.g0plus.g.n;
    rep.add("plane graph well-formed and plane",
            [&] {
                try {
                    require_wellformed(lam.g0plus);
                    return euler_genus(lam.g0plus) == 0;
                } catch (const ValidationError&) {
                    return false;
                }
            }());
    bool w_ok = !lam.w.empty() && is_connected_subset(lam.g0plus.g, lam.w);
    for (int v : lam.w)
        if (v < 0 || v >= n0) w_ok = false;
    rep.add("W nonempty, connected, inside the plane graph", w_ok);
    if (!w_ok) return rep;

    std::vector<char> inw(n0, 0);
    for (int v : lam.w) inw[v] = 1;
    const auto& vx = lam.vx;
    const int t = static_cast<int>(vx.ring.size());
    bool ring_ok = static_cast<int>(vx.bags.size()) == t;
    std::vector<int> pos_of(lam.total_n, -1);
    for (int i = 0; i < t && ring_ok; ++i) {
        int x = vx.ring[i];
        if (x < 0 || x >= n0 || inw[x] || pos_of[x] != -1) ring_ok = false;
        else pos_of[x] = i;
    }
    rep.add("ring: distinct plane vertices outside W", ring_ok);
    if (!ring_ok) return rep;

    // vortex vertex universe
    std::vector<int> hverts = vx.h_vertices();
    bool hv_ok = true;
    std::vector<char> ish(lam.total_n, 0);
    for (int v : hverts) {
        if (v < 0 || v >= lam.total_n || (v < n0 && inw[v])) hv_ok = false;
        else ish[v] = 1;
    }
    for (int v : hverts)
        if (v < n0 && pos_of[v] < 0) hv_ok = false;  // plane ∩ H must be the ring
    rep.add("V(G0+ ∩ H') = B' (ring)", hv_ok);

    bool planted = true;
    for (int i = 0; i < t; ++i) {
        bool has = false;
        for (int x : vx.bags[i])
            if (x == vx.ring[i]) has = true;
        if (!has) planted = false;
    }
    rep.add("decomposition planted (x in J_x)", planted);

    bool cv_ok = true;
    std::string cv_bad;
    bool cycle = t >= 3;
    for (int v : hverts) {
        auto pos = vx.interval_of(v);
        if (!interval_connected(pos, t, cycle)) {
            cv_ok = false;
            cv_bad = "vertex " + std::to_string(v);
        }
    }
    rep.add("C_v nonempty and connected in U", cv_ok, cv_bad);

    bool share = true;
    for (auto& e : vx.h_edges) {
        bool found = false;
        for (int i = 0; i < t && !found; ++i) {
            bool a = false, bb = false;
            for (int x : vx.bags[i]) {
                if (x == e.first) a = true;
                if (x == e.second) bb = true;
            }
            if (a && bb) found = true;
        }
        if (e.first == e.second) found = true;
        if (!found) share = false;
    }
    rep.add("adjacent H' vertices share a bag", share);

    // the disc: valid in g0 = g0plus - W, hosted at the obstruction face
    EmbeddedSubgraph sub = delete_vertices(lam.g0plus, lam.w);
    bool disc_ok = true;
    std::string disc_detail;
    try {
        FaceSet subfs = trace_faces(sub.eg);
        CleanDisc local = lam.disc;
        for (int& v : local.bs) {
            if (v < 0 || v >= n0 || sub.new_of[v] < 0) throw ValidationError("bad disc vertex");
            v = sub.new_of[v];
        }
        Report drep = validate_disc(sub.eg, subfs, local);
        if (!drep.ok()) {
            disc_ok = false;
            disc_detail = "disc invalid in g0";
        }
        int fa = locate_obstruction_face(lam.g0plus, lam.w, sub, subfs);
        if (fa != lam.disc.face) {
            disc_ok = false;
            disc_detail = "disc host is not the obstruction face";
        }
        if (lam.disc.bs != vx.ring) {
            disc_ok = false;
            disc_detail = "ring differs from the disc boundary";
        }
    } catch (const ValidationError& e) {
        disc_ok = false;
        disc_detail = e.what();
    }
    rep.add("disc (g0plus, V(W))-clean with B(D) = B'", disc_ok, disc_detail);

    // smoothness witnesses: T_v spans C_v with U-edges whose endpoints are
    // adjacent in g0
    bool smooth = true;
    std::string smooth_bad;
    for (int v : hverts) {
        auto pos = sorted_unique(vx.interval_of(v));
        auto it = vx.witness.find(v);
        if (it == vx.witness.end()) {
            smooth = false;
            smooth_bad = "missing witness for " + std::to_string(v);
            break;
        }
        const auto& path = it->second;
        if (sorted_unique(path) != pos) {
            smooth = false;
            smooth_bad = "witness does not span C_v for " + std::to_string(v);
            break;
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int pa = path[i], pb = path[i + 1];
            bool uedge = (std::abs(pa - pb) == 1) || (cycle && std::abs(pa - pb) == t - 1);
            if (!uedge) {
                smooth = false;
                smooth_bad = "witness edge not in U for " + std::to_string(v);
                break;
            }
            int va = vx.ring[pa], vb = vx.ring[pb];
            if (!sub.eg.g.has_edge(sub.new_of[va], sub.new_of[vb])) {
                smooth = false;
                smooth_bad = "witness edge endpoints not adjacent in g0 (" + std::to_string(va) +
                             "," + std::to_string(vb) + ")";
                break;
            }
        }
        if (!smooth) break;
    }
    rep.add("decomposition smooth in g0", smooth, smooth_bad);

    bool std_ok = true;
    for (int x : vx.ring) {
        bool adj = false;
        for (auto [u, e] : lam.g0plus.g.adj[x])
            if (inw[u]) adj = true;
        if (!adj) std_ok = false;
    }
    rep.add("standardised: B' ⊆ N(V(W))", std_ok);
    rep.add("vortex width", true, std::to_string(vx.width()));
    return rep;
}

// ---------------------------------------------------------------------------
// modify_vortex: delete the bags indexed by S.

struct ModifyVortexResult {
    std::vector<int> x;  // union of the deleted bags
    QuasiVortex vx;      // over U - S (ring shrinks, gaps close later)
};

inline ModifyVortexResult modify_vortex(const QuasiVortex& in, const std::vector<int>& s_verts) {
    const int t = static_cast<int>(in.ring.size());
    std::vector<char> is_s(t, 0);
    std::vector<int> pos_of_ring;
    {
        std::map<int, int> pos;
        for (int i = 0; i < t; ++i) pos[in.ring[i]] = i;
        for (int v : s_verts) {
            auto it = pos.find(v);
            if (it == pos.end()) throw ValidationError("modify_vortex: s not inside V(U)");
            is_s[it->second] = 1;
        }
    }
    ModifyVortexResult out;
    for (int i = 0; i < t; ++i)
        if (is_s[i])
            for (int v : in.bags[i]) out.x.push_back(v);
    out.x = sorted_unique(out.x);
    auto in_x = [&](int v) { return std::binary_search(out.x.begin(), out.x.end(), v); };

    std::vector<int> newpos(t, -1);
    for (int i = 0; i < t; ++i) {
        if (is_s[i]) continue;
        newpos[i] = static_cast<int>(out.vx.ring.size());
        out.vx.ring.push_back(in.ring[i]);
        std::vector<int> bag;
        for (int v : in.bags[i])
            if (!in_x(v)) bag.push_back(v);
        bag.push_back(in.ring[i]);  // planting element
        out.vx.bags.push_back(sorted_unique(bag));
    }
    for (auto& e : in.h_edges)
        if (!in_x(e.first) && !in_x(e.second)) out.vx.h_edges.push_back(e);
    for (int v : in.extra_verts)
        if (!in_x(v)) out.vx.extra_verts.push_back(v);
    // witnesses: untouched vertices keep their paths (now avoiding S);
    // isolated re-added ring vertices get singletons
    int t2 = static_cast<int>(out.vx.ring.size());
    for (int v : out.vx.h_vertices()) {
        if (in_x(v)) {
            // re-added isolated ring vertex
            for (int i = 0; i < t2; ++i)
                if (out.vx.ring[i] == v) out.vx.witness[v] = {i};
        } else {
            auto it = in.witness.find(v);
            if (it == in.witness.end()) continue;
            std::vector<int> path;
            for (int p : it->second)
                if (newpos[p] >= 0) path.push_back(newpos[p]);
            out.vx.witness[v] = path;
        }
    }
    // lemma clauses that are cheap to assert here
    for (int v : s_verts)
        if (!in_x(v)) throw ValidationError("modify_vortex: S ⊄ X (bug)");
    if (out.vx.width() > in.width())
        throw ValidationError("modify_vortex: width increased (bug)");
    return out;
}

// ---------------------------------------------------------------------------
// Partitioned Lambda: a standardised Lambda plus a connected plane partition
// containing V(W) and the loss set (universe ids).

struct PartitionedLambda {
    PlaneQuasiVortex lam;
    Partition parts;   // parts of the plane graph (plane vertex ids)
    int w_part = -1;
    std::vector<int> loss;  // universe ids
    int k = 0;              // vortex-width budget
    int b = 2;              // treewidth budget of the plane partition

    double near_width() const {
        std::size_t w = 0;
        for (int i = 0; i < static_cast<int>(parts.size()); ++i)
            if (i != w_part) w = std::max(w, parts[i].size());
        return static_cast<double>(w);
    }
};

inline Report validate_partitioned_lambda(const PartitionedLambda& pl) {
    Report rep = validate_lambda(pl.lam);
    bool pok = true;
    try {
        require_partition(pl.lam.g0plus.g, pl.parts, "partitioned lambda");
    } catch (const ValidationError& e) {
        pok = false;
        rep.add("plane partition valid", false, e.what());
    }
    if (pok) rep.add("plane partition valid", true);
    rep.add("plane partition connected", is_connected_partition(pl.lam.g0plus.g, pl.parts));
    rep.add("V(W) is a part",
            pl.w_part >= 0 && pl.w_part < static_cast<int>(pl.parts.size()) &&
                pl.parts[pl.w_part] == sorted_unique(pl.lam.w));
    if (pok)
        rep.add("plane partition treewidth <= " + std::to_string(pl.b),
                treewidth_at_most(quotient(pl.lam.g0plus.g, pl.parts), pl.b));
    return rep;
}

// pl - S: move the bags of S into the loss set.
inline PartitionedLambda lambda_minus(const PartitionedLambda& pl, const std::vector<int>& s) {
    PartitionedLambda out = pl;
    std::vector<int> xs;
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(pl.lam.vx.ring.size()); ++i) pos[pl.lam.vx.ring[i]] = i;
    for (int v : s) {
        auto it = pos.find(v);
        if (it == pos.end()) throw ValidationError("lambda_minus: s outside B'");
        for (int x : pl.lam.vx.bags[it->second]) xs.push_back(x);
    }
    for (int x : xs) out.loss.push_back(x);
    out.loss = sorted_unique(out.loss);
    return out;
}

// ---------------------------------------------------------------------------
// apply_adjustment, identity-projection mode. The
// in-scope pipeline only produces S = ∅ adjustments (plane graph swap).

struct Adjustment {
    EmbeddedGraph g0minus;   // spanning plane supergraph of g0plus - S
    std::vector<int> s;      // deleted plane vertices (disjoint from W)
    std::vector<int> plane_map;  // old plane id -> new plane id, -1 on S
};

struct AppliedAdjustment {
    PlaneQuasiVortex lam;
    std::vector<int> new_loss;     // universe ids added to the loss set
    std::vector<int> universe_map; // old universe id -> new universe id, -1 dropped
};

inline AppliedAdjustment apply_adjustment(const PlaneQuasiVortex& lam, const Adjustment& adj) {
    const int n0 = lam.g0plus.g.n;
    std::vector<char> inw(n0, 0);
    for (int v : lam.w) inw[v] = 1;
    for (int v : adj.s)
        if (v < 0 || v >= n0 || inw[v])
            throw ValidationError("apply_adjustment: S must avoid V(W)");
    if (static_cast<int>(adj.plane_map.size()) != n0)
        throw ValidationError("apply_adjustment: plane_map size mismatch");

    // FT preservation for S-disjoint triangles
    {
        auto ft0 = facial_triangles(lam.g0plus);
        auto ft1 = facial_triangles(adj.g0minus);
        std::vector<char> ins(n0, 0);
        for (int v : adj.s) ins[v] = 1;
        for (const auto& tda : ft0) {
            if (ins[tda[0]] || ins[tda[1]] || ins[tda[2]]) continue;
            std::array<int, 3> img{adj.plane_map[tda[0]], adj.plane_map[tda[1]],
                                   adj.plane_map[tda[2]]};
            std::sort(img.begin(), img.end());
            if (!ft1.count(img))
                throw ValidationError("apply_adjustment: facial triangle lost by the adjustment");
        }
    }

    std::vector<int> s_b;
    {
        std::vector<char> ins(n0, 0);
        for (int v : adj.s) ins[v] = 1;
        for (int x : lam.vx.ring)
            if (ins[x]) s_b.push_back(x);
    }
    ModifyVortexResult mv = modify_vortex(lam.vx, s_b);

    AppliedAdjustment out;
    // universe remap: plane part per plane_map; vortex extras appended
    out.universe_map.assign(lam.total_n, -1);
    int next = adj.g0minus.g.n;
    for (int v = 0; v < n0; ++v) out.universe_map[v] = adj.plane_map[v];
    std::vector<char> dropped(lam.total_n, 0);
    for (int x : mv.x) dropped[x] = 1;
    for (int v = n0; v < lam.total_n; ++v)
        if (!dropped[v]) out.universe_map[v] = next++;

    out.lam.g0plus = adj.g0minus;
    out.lam.total_n = next;
    for (int v : lam.w) out.lam.w.push_back(adj.plane_map[v]);
    out.lam.w = sorted_unique(out.lam.w);

    // rebuild the vortex over the new universe
    QuasiVortex& vx = out.lam.vx;
    for (int x : mv.vx.ring) vx.ring.push_back(adj.plane_map[x]);
    for (const auto& bag : mv.vx.bags) {
        vx.bags.emplace_back();
        for (int v : bag) vx.bags.back().push_back(out.universe_map[v]);
        vx.bags.back() = sorted_unique(vx.bags.back());
    }
    for (auto& e : mv.vx.h_edges)
        vx.h_edges.push_back({out.universe_map[e.first], out.universe_map[e.second]});
    for (int v : mv.vx.extra_verts) vx.extra_verts.push_back(out.universe_map[v]);
    for (auto& [v, path] : mv.vx.witness) vx.witness[out.universe_map[v]] = path;

    // disc: boundary shrinks by S, host face recomputed via the obstruction
    EmbeddedSubgraph sub = delete_vertices(out.lam.g0plus, out.lam.w);
    FaceSet subfs = trace_faces(sub.eg);
    out.lam.disc.face = locate_obstruction_face(out.lam.g0plus, out.lam.w, sub, subfs);
    out.lam.disc.bs = vx.ring;

    // loss: X_H plus the deleted plane vertices (identity projection)
    for (int x : mv.x) out.new_loss.push_back(x);
    for (int v : adj.s) out.new_loss.push_back(v);
    out.new_loss = sorted_unique(out.new_loss);

    Report rep = validate_lambda(out.lam);
    if (!rep.ok())
        throw ValidationError("apply_adjustment: result not standardised:\n" + rep.summary());
    return out;
}

// ---------------------------------------------------------------------------
// Breaks.

struct BreakSet {
    std::vector<std::vector<int>> members;  // vertex sets in g0' = g0plus - W
    std::vector<int> part_of;               // part index when the member is a part, else -1
};

inline Report validate_break(const PartitionedLambda& pl, const BreakSet& br) {
    Report rep;
    const Multigraph& g0p = pl.lam.g0plus.g;
    std::vector<char> inw(g0p.n, 0);
    for (int v : pl.lam.w) inw[v] = 1;
    std::vector<char> inring(g0p.n, 0);
    for (int x : pl.lam.vx.ring) inring[x] = 1;
    std::vector<int> part_of(g0p.n, -1);
    for (int i = 0; i < static_cast<int>(pl.parts.size()); ++i)
        for (int v : pl.parts[i]) part_of[v] = i;

    std::vector<char> in_member(g0p.n, 0);
    bool disjoint = true, connected = true, respects = true, form = true;
    for (int mi = 0; mi < static_cast<int>(br.members.size()); ++mi) {
        const auto& mem = br.members[mi];
        std::set<int> touched;
        for (int v : mem) {
            if (v < 0 || v >= g0p.n || inw[v]) form = false;
            else {
                if (in_member[v]) disjoint = false;
                in_member[v] = 1;
                touched.insert(part_of[v]);
            }
        }
        if (!is_connected_subset(g0p, mem)) connected = false;
        // part-respecting: every touched part is inside the member
        std::vector<char> inm(g0p.n, 0);
        for (int v : mem) inm[v] = 1;
        for (int p : touched) {
            if (p < 0) continue;
            for (int v : pl.parts[p])
                if (!inm[v]) respects = false;
        }
        // 2a/2b: a part distinct from W, or disjoint from B'
        bool is_part = br.part_of[mi] >= 0 && br.part_of[mi] != pl.w_part &&
                       sorted_unique(mem) == sorted_unique(pl.parts[br.part_of[mi]]);
        bool off_ring = true;
        for (int v : mem)
            if (inring[v]) off_ring = false;
        if (!is_part && !off_ring) form = false;
    }
    rep.add("break members pairwise disjoint", disjoint);
    rep.add("break members connected in g0'", connected);
    rep.add("break members part-respecting", respects);
    rep.add("break members are parts or avoid B'", form);
    // condition 3: components of g0' minus the members sit inside single parts
    std::vector<char> alive(g0p.n, 1);
    for (int v = 0; v < g0p.n; ++v)
        if (inw[v] || in_member[v]) alive[v] = 0;
    bool cover = true;
    for (auto& comp : detail::components_of_mask(g0p, alive)) {
        int p = part_of[comp[0]];
        for (int v : comp)
            if (part_of[v] != p) cover = false;
    }
    rep.add("residual components sit inside single parts", cover);
    return rep;
}

// find_break: merge non-boundary structure into radius-2
// quotient components, split the weighted quotient with tw_split, and keep
// the selected nodes as break members.
struct FindBreakResult {
    PartitionedLambda pl;  // merged partition, same loss
    BreakSet brk;
    int b_q = 0;           // achieved tree-decomposition width of the quotient
    bool bq_within_planar_bound = true;  // radius-2 planar quotients admit width <= 6
    double size_bound = 0.0;
};

inline FindBreakResult find_break(const PartitionedLambda& pl, double d) {
    if (d < pl.near_width())
        throw ValidationError("find_break: d below the current near-width");
    const Multigraph& g0p = pl.lam.g0plus.g;
    std::vector<char> inw(g0p.n, 0);
    for (int v : pl.lam.w) inw[v] = 1;
    std::vector<char> inring(g0p.n, 0);
    for (int x : pl.lam.vx.ring) inring[x] = 1;

    std::vector<int> part_of(g0p.n, -1);
    for (int i = 0; i < static_cast<int>(pl.parts.size()); ++i)
        for (int v : pl.parts[i]) part_of[v] = i;

    // boundary parts and the residual components
    std::vector<char> is_bpart(pl.parts.size(), 0);
    for (int x : pl.lam.vx.ring)
        if (part_of[x] >= 0) is_bpart[part_of[x]] = 1;
    if (pl.w_part >= 0) is_bpart[pl.w_part] = 0;
    std::vector<char> alive(g0p.n, 1);
    for (int v = 0; v < g0p.n; ++v)
        if (inw[v] || (part_of[v] >= 0 && is_bpart[part_of[v]])) alive[v] = 0;
    auto comps = detail::components_of_mask(g0p, alive);

    // quotient nodes: boundary parts then components
    std::vector<int> node_of_part(pl.parts.size(), -1);
    std::vector<std::vector<int>> node_verts;
    std::vector<char> node_is_comp;
    for (int i = 0; i < static_cast<int>(pl.parts.size()); ++i)
        if (is_bpart[i]) {
            node_of_part[i] = static_cast<int>(node_verts.size());
            node_verts.push_back(pl.parts[i]);
            node_is_comp.push_back(0);
        }
    std::vector<int> comp_node(comps.size());
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        comp_node[ci] = static_cast<int>(node_verts.size());
        node_verts.push_back(comps[ci]);
        node_is_comp.push_back(1);
    }
    std::vector<int> node_of_vertex(g0p.n, -1);
    for (int ni = 0; ni < static_cast<int>(node_verts.size()); ++ni)
        for (int v : node_verts[ni]) node_of_vertex[v] = ni;

    Multigraph q(static_cast<int>(node_verts.size()));
    {
        std::set<std::pair<int, int>> seen;
        for (auto& e : g0p.edges) {
            if (inw[e[0]] || inw[e[1]]) continue;
            int a = node_of_vertex[e[0]], b = node_of_vertex[e[1]];
            if (a < 0 || b < 0 || a == b) continue;
            if (seen.insert({std::min(a, b), std::max(a, b)}).second)
                q.add_edge(std::min(a, b), std::max(a, b));
        }
    }
    HeuristicTd htd = heuristic_tree_decomposition(q, 6, 30);
    FindBreakResult out;
    out.b_q = htd.width;
    out.bq_within_planar_bound = htd.width <= 6;

    std::vector<double> node_weight(q.n, 0.0);
    double total = 0;
    for (int ni = 0; ni < q.n; ++ni) {
        node_weight[ni] = static_cast<double>(node_verts[ni].size());
        total += node_weight[ni];
    }
    std::vector<int> split_nodes =
        q.n == 0 ? std::vector<int>{} : tw_split(q, htd.td, d, node_weight);
    out.size_bound = (out.b_q + 1) * total / d;
    if (static_cast<double>(split_nodes.size()) > out.size_bound)
        throw ValidationError("find_break: tw_split exceeded its bound (bug)");

    std::vector<char> in_split(q.n, 0);
    for (int ni : split_nodes) in_split[ni] = 1;

    // merged partition: survivors of q - split merge per component; split
    // component-nodes fall back to their original parts
    std::vector<char> qalive(q.n, 1);
    for (int ni : split_nodes) qalive[ni] = 0;
    auto qcomps = detail::components_of_mask(q, qalive);
    std::vector<int> qcomp_of(q.n, -1);
    for (int qi = 0; qi < static_cast<int>(qcomps.size()); ++qi)
        for (int ni : qcomps[qi]) qcomp_of[ni] = qi;

    PartitionedLambda merged = pl;
    merged.parts.clear();
    merged.w_part = 0;
    merged.parts.push_back(sorted_unique(pl.lam.w));
    std::map<int, int> part_for_qcomp, part_for_oldpart;
    for (int v = 0; v < g0p.n; ++v) {
        if (inw[v]) continue;
        int ni = node_of_vertex[v];
        int target;
        if (ni >= 0 && !in_split[ni]) {
            auto [it, fresh] = part_for_qcomp.try_emplace(qcomp_of[ni],
                                                          static_cast<int>(merged.parts.size()));
            if (fresh) merged.parts.emplace_back();
            target = it->second;
        } else {
            int p = part_of[v];
            auto [it, fresh] =
                part_for_oldpart.try_emplace(p, static_cast<int>(merged.parts.size()));
            if (fresh) merged.parts.emplace_back();
            target = it->second;
        }
        merged.parts[target].push_back(v);
    }
    for (auto& p : merged.parts) p = sorted_unique(p);

    // break members
    for (int ni : split_nodes) {
        out.brk.members.push_back(sorted_unique(node_verts[ni]));
        if (!node_is_comp[ni]) {
            // locate the (merged) part equal to this member
            int found = -1;
            for (int i = 0; i < static_cast<int>(merged.parts.size()); ++i)
                if (merged.parts[i] == out.brk.members.back()) found = i;
            out.brk.part_of.push_back(found);
        } else {
            out.brk.part_of.push_back(-1);
        }
    }

    // merging must not raise the quotient treewidth, and the merged parts
    // must stay connected (the breakpoint witnesses lean on this)
    if (!treewidth_at_most(quotient(g0p, merged.parts), pl.b))
        throw ValidationError("find_break: merged quotient treewidth grew (bug)");
    if (!is_connected_partition(g0p, merged.parts))
        throw ValidationError("find_break: merged partition disconnected (bug)");
    if (merged.near_width() > d)
        throw ValidationError("find_break: near-width above d (bug)");
    Report brep = validate_break(merged, out.brk);
    if (!brep.ok()) throw ValidationError("find_break: invalid break (bug):\n" + brep.summary());
    out.pl = std::move(merged);
    return out;
}

// ---------------------------------------------------------------------------
// find_breakpoints: first/last boundary vertex of
// each member under the anchored linear order of the ring.

inline std::vector<int> find_breakpoints(const std::vector<int>& ring,
                                         const std::vector<std::vector<int>>& members) {
    if (ring.empty()) return {};
    int t = static_cast<int>(ring.size());
    int anchor = 0;
    for (int i = 0; i < t; ++i)
        if (ring[i] < ring[anchor]) anchor = i;
    std::map<int, int> linpos;
    for (int i = 0; i < t; ++i) linpos[ring[(anchor + i) % t]] = i;
    std::vector<int> s;
    for (const auto& mem : members) {
        std::vector<std::pair<int, int>> onb;  // (linear pos, vertex)
        for (int v : mem) {
            auto it = linpos.find(v);
            if (it != linpos.end()) onb.push_back({it->second, v});
        }
        std::sort(onb.begin(), onb.end());
        if (onb.empty()) continue;
        if (onb.size() <= 2)
            for (auto& [p, v] : onb) s.push_back(v);
        else {
            s.push_back(onb.front().second);
            s.push_back(onb.back().second);
        }
    }
    return sorted_unique(s);
}

// The two breakpoint properties, by exhaustive interval scan.
inline bool breakpoints_properties_hold(const Multigraph& g0prime_host,
                                        const std::vector<int>& ring,
                                        const std::vector<std::vector<int>>& members,
                                        const std::vector<int>& s) {
    int t = static_cast<int>(ring.size());
    std::vector<char> in_s_pos(t, 0);
    std::map<int, int> pos;
    for (int i = 0; i < t; ++i) pos[ring[i]] = i;
    for (int v : s) in_s_pos[pos.at(v)] = 1;
    // maximal intervals of U - S
    std::vector<std::vector<int>> intervals;  // ring positions
    bool cycle = t >= 3;
    {
        std::vector<char> seen(t, 0);
        for (int i = 0; i < t; ++i) {
            if (in_s_pos[i] || seen[i]) continue;
            // walk backwards to the interval start
            int st = i;
            while (true) {
                int prev = (st + t - 1) % t;
                if (!cycle && st == 0) break;
                if (in_s_pos[prev] || prev == i) break;
                st = prev;
                if (st == i) break;
            }
            std::vector<int> iv;
            int cur = st;
            while (!in_s_pos[cur] && !seen[cur]) {
                seen[cur] = 1;
                iv.push_back(cur);
                int nxt = (cur + 1) % t;
                if (!cycle && cur == t - 1) break;
                if (nxt == st) break;
                cur = nxt;
                if (in_s_pos[cur]) break;
            }
            intervals.push_back(iv);
        }
    }
    auto verts_of = [&](const std::vector<int>& poss) {
        std::vector<int> vs;
        for (int p : poss) vs.push_back(ring[p]);
        return sorted_unique(vs);
    };
    auto intersects = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int v : a)
            if (std::binary_search(b.begin(), b.end(), v)) return true;
        return false;
    };
    // property 1: every maximal interval (hence every subinterval) meets at
    // most one member of each disjoint pair
    for (std::size_t h1 = 0; h1 < members.size(); ++h1)
        for (std::size_t h2 = h1 + 1; h2 < members.size(); ++h2) {
            auto m1 = sorted_unique(members[h1]);
            auto m2 = sorted_unique(members[h2]);
            if (intersects(m1, m2)) continue;
            for (auto& iv : intervals) {
                auto vs = verts_of(iv);
                if (intersects(vs, m1) && intersects(vs, m2)) return false;
            }
            // property 2: linked subintervals of disjoint-from-members
            // intervals cannot bridge the pair
            for (auto& i1 : intervals)
                for (auto& i2 : intervals) {
                    auto v1 = verts_of(i1), v2 = verts_of(i2);
                    bool hit1 = (intersects(v1, m1) || intersects(v2, m1));
                    bool hit2 = (intersects(v1, m2) || intersects(v2, m2));
                    if (!(hit1 && hit2)) continue;
                    // subintervals disjoint from both members with a linking edge
                    auto sub_ok = [&](const std::vector<int>& iv) {
                        std::vector<std::vector<int>> subs;
                        for (std::size_t a = 0; a < iv.size(); ++a) {
                            std::vector<int> cur;
                            for (std::size_t b = a; b < iv.size(); ++b) {
                                cur.push_back(iv[b]);
                                auto vs = verts_of(cur);
                                if (intersects(vs, m1) || intersects(vs, m2)) break;
                                subs.push_back(cur);
                            }
                        }
                        return subs;
                    };
                    for (auto& s1 : sub_ok(i1))
                        for (auto& s2 : sub_ok(i2)) {
                            auto vs1 = verts_of(s1), vs2 = verts_of(s2);
                            bool linked = false;
                            for (int u : vs1) {
                                for (auto [w, e] : g0prime_host.adj[u])
                                    if (std::binary_search(vs2.begin(), vs2.end(), w))
                                        linked = true;
                                if (std::binary_search(vs2.begin(), vs2.end(), u)) linked = true;
                            }
                            if (linked) return false;
                        }
                }
        }
    return true;
}

// ---------------------------------------------------------------------------
// Raises.

struct Raise {
    std::vector<int> tau;  // universe vertex -> part index of the plane partition
};

inline Report validate_raise(const PartitionedLambda& pl, const Raise& r) {
    Report rep;
    const Multigraph& g0p = pl.lam.g0plus.g;
    std::vector<char> inring(g0p.n, 0);
    for (int x : pl.lam.vx.ring) inring[x] = 1;
    std::vector<int> part_of(g0p.n, -1);
    for (int i = 0; i < static_cast<int>(pl.parts.size()); ++i)
        for (int v : pl.parts[i]) part_of[v] = i;

    bool total = static_cast<int>(r.tau.size()) == pl.lam.total_n;
    for (int v = 0; v < pl.lam.total_n && total; ++v)
        if (r.tau[v] < 0 || r.tau[v] >= static_cast<int>(pl.parts.size())) total = false;
    rep.add("raise total into the plane parts", total);
    if (!total) return rep;

    bool cl1 = true;
    for (int v = 0; v < g0p.n; ++v)
        if (!inring[v] && r.tau[v] != part_of[v]) cl1 = false;
    rep.add("raise clause 1: plane non-boundary vertices stay put", cl1);

    bool cl2 = true;
    std::vector<int> hv = pl.lam.vx.h_vertices();
    for (int v : hv) {
        bool ok = false;
        for (int i = 0; i < static_cast<int>(pl.lam.vx.ring.size()); ++i) {
            if (part_of[pl.lam.vx.ring[i]] != r.tau[v]) continue;
            for (int x : pl.lam.vx.bags[i])
                if (x == v) ok = true;
        }
        if (!ok) cl2 = false;
    }
    rep.add("raise clause 2: vortex vertices ride a boundary bag of their part", cl2);

    std::vector<char> in_loss(pl.lam.total_n, 0);
    for (int v : pl.loss) in_loss[v] = 1;
    // plane quotient adjacency, computed once
    int np = static_cast<int>(pl.parts.size());
    std::set<std::pair<int, int>> padj;
    for (auto& e : g0p.edges) {
        int a = part_of[e[0]], b = part_of[e[1]];
        if (a >= 0 && b >= 0 && a != b) padj.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<char> nonempty(np, 0);
    for (int i = 0; i < np; ++i) nonempty[i] = !pl.parts[i].empty();
    bool cl3 = true;
    auto check_edge = [&](int u, int v) {
        if (in_loss[u] || in_loss[v]) return;
        int pu = r.tau[u], pv = r.tau[v];
        if (pu == pv) {
            if (!nonempty[pu]) cl3 = false;
            return;
        }
        if (!padj.count({std::min(pu, pv), std::max(pu, pv)})) cl3 = false;
    };
    for (auto& e : g0p.edges) check_edge(e[0], e[1]);
    for (auto& e : pl.lam.vx.h_edges) check_edge(e.first, e.second);
    rep.add("raise clause 3: no new quotient adjacencies", cl3);
    return rep;
}

// use_break: breakpoints from the members and guarded
// neighborhoods; vortex vertices route through their smoothness trees.
struct UseBreakResult {
    std::vector<int> s;  // breakpoints (ring vertex ids)
    PartitionedLambda pl;
    Raise raise;
};

inline UseBreakResult use_break(const PartitionedLambda& pl0, const BreakSet& br) {
    const Multigraph& g0p = pl0.lam.g0plus.g;
    const QuasiVortex& vx = pl0.lam.vx;
    const int t = static_cast<int>(vx.ring.size());
    std::vector<char> inw(g0p.n, 0);
    for (int v : pl0.lam.w) inw[v] = 1;
    std::vector<char> in_member(g0p.n, 0);
    for (const auto& mem : br.members)
        for (int v : mem) in_member[v] = 1;

    // guarded neighborhoods M'
    std::vector<std::vector<int>> hset;
    for (const auto& mem : br.members) {
        hset.push_back(sorted_unique(mem));
        std::vector<int> mprime = mem;
        std::vector<char> inm(g0p.n, 0);
        for (int v : mem) inm[v] = 1;
        for (int v : mem)
            for (auto [w, e] : g0p.adj[v])
                if (!inw[w] && !inm[w] && !in_member[w]) mprime.push_back(w);
        hset.push_back(sorted_unique(mprime));
    }
    UseBreakResult out;
    out.s = find_breakpoints(vx.ring, hset);
    if (out.s.size() > 4 * br.members.size())
        throw ValidationError("use_break: |S| > 4q (bug)");
    out.pl = lambda_minus(pl0, out.s);

    std::vector<int> part_of(g0p.n, -1);
    for (int i = 0; i < static_cast<int>(pl0.parts.size()); ++i)
        for (int v : pl0.parts[i]) part_of[v] = i;
    std::vector<char> inring(g0p.n, 0);
    std::vector<int> pos_of(g0p.n, -1);
    for (int i = 0; i < t; ++i) {
        inring[vx.ring[i]] = 1;
        pos_of[vx.ring[i]] = i;
    }
    std::vector<char> s_pos(t, 0);
    for (int v : out.s) s_pos[pos_of[v]] = 1;

    // the unique part an interval may ride: either its container, or
    // the single part-member of the break it touches
    auto assign_interval = [&](const std::vector<int>& poss) -> int {
        std::set<int> touched;
        bool all_in_one = true;
        int first_part = -2;
        for (int p : poss) {
            int pp = part_of[vx.ring[p]];
            touched.insert(pp);
            if (first_part == -2) first_part = pp;
            if (pp != first_part) all_in_one = false;
        }
        if (all_in_one && first_part >= 0) return first_part;
        // must meet exactly one break member that is a part
        int found = -1;
        for (int mi = 0; mi < static_cast<int>(br.members.size()); ++mi) {
            if (br.part_of[mi] < 0) continue;
            bool meets = false;
            for (int p : poss)
                if (part_of[vx.ring[p]] == br.part_of[mi]) meets = true;
            if (meets) {
                if (found >= 0 && found != br.part_of[mi])
                    throw ValidationError("use_break: interval touches two break parts (bug)");
                found = br.part_of[mi];
            }
        }
        if (found < 0)
            throw ValidationError("use_break: no part for an interval (bug)");
        return found;
    };

    out.raise.tau.assign(pl0.lam.total_n, -1);
    for (int v = 0; v < g0p.n; ++v)
        if (!inw[v] && !inring[v]) out.raise.tau[v] = part_of[v];
    for (int v : pl0.lam.w) out.raise.tau[v] = part_of[v];
    // X_S vertices follow the lowest breakpoint whose bag holds them
    for (int s : out.s) {
        int i = pos_of[s];
        for (int v : vx.bags[i])
            if (out.raise.tau[v] < 0) out.raise.tau[v] = part_of[s];
    }
    // remaining vortex vertices route through their witness trees
    for (int v : vx.h_vertices()) {
        if (out.raise.tau[v] >= 0) continue;
        auto it = vx.witness.find(v);
        if (it == vx.witness.end())
            throw ValidationError("use_break: missing smoothness witness");
        std::vector<int> poss;
        for (int p : it->second)
            if (!s_pos[p]) poss.push_back(p);
        if (poss.empty())
            throw ValidationError("use_break: unassigned vertex with an all-breakpoint interval");
        out.raise.tau[v] = assign_interval(poss);
    }
    // universe ids that appear in no structure (possible in hand-written
    // files) become isolated singleton parts; any label works for them
    for (int v = 0; v < pl0.lam.total_n; ++v)
        if (out.raise.tau[v] < 0) out.raise.tau[v] = 0;

    Report rep = validate_raise(out.pl, out.raise);
    if (!rep.ok()) throw ValidationError("use_break: raise invalid (bug):\n" + rep.summary());
    return out;
}

// ---------------------------------------------------------------------------
// Concentration witnesses: small blocker sets per quotient clique.

namespace detail {

// S for an ordered part pair (p1, p2): bags of the two blocking boundary
// vertices of p1 around the region of p2.
inline std::vector<int> pair_witness(const PartitionedLambda& pl, int p1, int p2) {
    if (p1 == pl.w_part || p2 == pl.w_part) return {};
    const QuasiVortex& vx = pl.lam.vx;
    const Multigraph& g0p = pl.lam.g0plus.g;
    int t = static_cast<int>(vx.ring.size());
    if (pl.parts[p1].empty() || pl.parts[p2].empty()) return {};
    std::vector<int> pos_of(g0p.n, -1);
    for (int i = 0; i < t; ++i) pos_of[vx.ring[i]] = i;
    std::vector<int> p1b;
    for (int v : pl.parts[p1])
        if (v < g0p.n && pos_of[v] >= 0) p1b.push_back(pos_of[v]);
    std::sort(p1b.begin(), p1b.end());
    std::vector<int> result;
    auto add_bag = [&](int pos) {
        for (int v : vx.bags[pos]) result.push_back(v);
    };
    if (p1b.size() <= 2) {
        for (int p : p1b) add_bag(p);
        return sorted_unique(result);
    }
    // Y: boundary positions of N[P2] \ P1
    std::vector<char> inp1(g0p.n, 0), inp2(g0p.n, 0);
    for (int v : pl.parts[p1]) inp1[v] = 1;
    for (int v : pl.parts[p2]) inp2[v] = 1;
    std::vector<int> y;
    for (int v : pl.parts[p2]) {
        if (v >= g0p.n) continue;
        if (pos_of[v] >= 0 && !inp1[v]) y.push_back(pos_of[v]);
        for (auto [u, e] : g0p.adj[v])
            if (!inp1[u] && pos_of[u] >= 0) y.push_back(pos_of[u]);
    }
    y = sorted_unique(y);
    // the gap (a, b) of consecutive p1 positions containing all of Y
    int m = static_cast<int>(p1b.size());
    for (int i = 0; i < m; ++i) {
        int a = p1b[i], b = p1b[(i + 1) % m];
        bool ok = true;
        for (int p : y) {
            bool inside = a < b ? (a < p && p < b) : (p > a || p < b);
            if (!inside && p != a && p != b) ok = false;
        }
        if (ok) {
            add_bag(a);
            add_bag(b);
            return sorted_unique(result);
        }
    }
    throw ValidationError("pair_witness: no gap contains the other side (non-crossing violated?)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// raise_to_partition at identity projection, with
// concentration witnesses attached.

struct RaisedPartition {
    AlmostPartition ap;          // over the universe
    std::vector<int> plane_part; // final part -> source plane part index
    std::vector<int> comp_of;    // final part -> component index
    double width_bound = 0.0;
    Report report;
};

inline RaisedPartition raise_to_partition(const PartitionedLambda& pl, const Raise& r) {
    Report rrep = validate_raise(pl, r);
    if (!rrep.ok()) throw ValidationError("raise_to_partition: invalid raise:\n" + rrep.summary());
    Multigraph total = pl.lam.total_graph();
    std::vector<char> in_loss(total.n, 0);
    for (int v : pl.loss) in_loss[v] = 1;
    std::vector<char> alive(total.n, 1);
    for (int v : pl.loss) alive[v] = 0;
    auto comps = detail::components_of_mask(total, alive);
    std::vector<int> comp_of_vertex(total.n, -1);
    for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci)
        for (int v : comps[ci]) comp_of_vertex[v] = ci;

    RaisedPartition out;
    out.ap.loss = sorted_unique(pl.loss);
    std::map<std::pair<int, int>, int> slot;  // (comp, plane part) -> final part
    for (int v = 0; v < total.n; ++v) {
        if (in_loss[v]) continue;
        std::pair<int, int> key{comp_of_vertex[v], r.tau[v]};
        auto it = slot.find(key);
        if (it == slot.end()) {
            it = slot.insert({key, static_cast<int>(out.ap.parts.size())}).first;
            out.ap.parts.emplace_back();
            out.comp_of.push_back(key.first);
            out.plane_part.push_back(key.second);
        }
        out.ap.parts[it->second].push_back(v);
    }
    for (auto& p : out.ap.parts) p = sorted_unique(p);

    // raiseInv sandwich: (P \ B') ⊆ tau^-1(P) ⊆ (P \ B') ∪ bags over P ∩ B'
    {
        const Multigraph& g0p = pl.lam.g0plus.g;
        std::vector<int> pos_of(g0p.n, -1);
        for (int i = 0; i < static_cast<int>(pl.lam.vx.ring.size()); ++i)
            pos_of[pl.lam.vx.ring[i]] = i;
        for (int pi = 0; pi < static_cast<int>(pl.parts.size()); ++pi) {
            std::vector<char> allowed(total.n, 0);
            for (int v : pl.parts[pi]) {
                if (pos_of[v] < 0) {
                    if (r.tau[v] != pi)
                        throw ValidationError("raise_to_partition: raiseInv lower bound (bug)");
                    allowed[v] = 1;
                } else {
                    for (int x : pl.lam.vx.bags[pos_of[v]]) allowed[x] = 1;
                }
            }
            for (int v = 0; v < total.n; ++v)
                if (r.tau[v] == pi && !allowed[v] &&
                    !(v < g0p.n && pos_of[v] < 0 && r.tau[v] == pi))
                    throw ValidationError("raise_to_partition: raiseInv upper bound (bug)");
        }
    }

    // width bound: max((k+1) * near-width, remainder widths of the W part)
    double wpartmax = 0;
    std::vector<char> inw_total(total.n, 0);
    for (int v : pl.lam.w) inw_total[v] = 1;
    for (auto& comp : comps) {
        double c = 0;
        for (int v : comp)
            if (inw_total[v]) ++c;
        wpartmax = std::max(wpartmax, c);
    }
    out.width_bound = std::max(static_cast<double>(pl.k + 1) * pl.near_width(), wpartmax);
    out.report = validate_almost_partition(total, out.ap, pl.b, out.width_bound,
                                           static_cast<double>(out.ap.loss.size()));
    if (!out.report.ok())
        throw ValidationError("raise_to_partition: invalid almost-partition (bug):\n" +
                              out.report.summary());
    return out;
}

// Witness families per final-quotient clique.
inline void concentration_witnesses(const PartitionedLambda& pl, RaisedPartition& rp) {
    Multigraph total = pl.lam.total_graph();
    std::vector<char> in_loss(total.n, 0);
    for (int v : rp.ap.loss) in_loss[v] = 1;
    int np = static_cast<int>(rp.ap.parts.size());
    std::vector<int> part_of(total.n, -1);
    for (int i = 0; i < np; ++i)
        for (int v : rp.ap.parts[i]) part_of[v] = i;
    std::vector<std::set<int>> qadj(np);
    for (auto& e : total.edges) {
        if (in_loss[e[0]] || in_loss[e[1]]) continue;
        int a = part_of[e[0]], b = part_of[e[1]];
        if (a != b && a >= 0 && b >= 0) {
            qadj[a].insert(b);
            qadj[b].insert(a);
        }
    }
    auto ft = facial_triangles(pl.lam.g0plus);
    std::vector<std::array<int, 3>> ftl(ft.begin(), ft.end());

    WitnessFamily f1, f2;
    f1.kind = "vortex-cliques";
    f1.b = 1;
    f1.m = pl.b * (pl.b + 1) * (pl.k + 1);
    f2.kind = "attachable-cliques";
    f2.b = 2;
    int bp1 = pl.b + 1;
    f2.m = (6 * pl.k + 8) * (bp1 * (bp1 - 1) * (bp1 - 2) / 6);

    // order parts inside a clique: W-sourced part last, then by plane index
    auto order_clique = [&](std::vector<int> q) {
        std::stable_sort(q.begin(), q.end(), [&](int a, int b) {
            bool wa = rp.plane_part[a] == pl.w_part, wb = rp.plane_part[b] == pl.w_part;
            if (wa != wb) return wb;
            return rp.plane_part[a] < rp.plane_part[b];
        });
        return q;
    };
    auto emit = [&](std::vector<int> q) {
        std::vector<int> key = sorted_unique(q);
        if (f1.per_clique.count(key)) return;
        std::vector<int> ord = order_clique(key);
        std::vector<int> s1, s2;
        for (std::size_t i = 0; i < ord.size(); ++i)
            for (std::size_t j = i + 1; j < ord.size(); ++j)
                for (int v :
                     detail::pair_witness(pl, rp.plane_part[ord[i]], rp.plane_part[ord[j]]))
                    s1.push_back(v);
        if (ord.size() == 3) {
            int p1 = rp.plane_part[ord[0]], p2 = rp.plane_part[ord[1]],
                p3 = rp.plane_part[ord[2]];
            // facial triangles meeting all three plane parts: at most two
            std::vector<char> m1(pl.lam.g0plus.g.n, 0), m2(pl.lam.g0plus.g.n, 0),
                m3(pl.lam.g0plus.g.n, 0);
            for (int v : pl.parts[p1]) m1[v] = 1;
            for (int v : pl.parts[p2]) m2[v] = 1;
            for (int v : pl.parts[p3]) m3[v] = 1;
            int found = 0;
            for (const auto& tri : ftl) {
                bool h1 = false, h2 = false, h3 = false;
                for (int v : tri) {
                    if (m1[v]) h1 = true;
                    if (m2[v]) h2 = true;
                    if (m3[v]) h3 = true;
                }
                if (h1 && h2 && h3) {
                    ++found;
                    if (found > 2)
                        throw ValidationError(
                            "concentration_witnesses: >2 facial triangles on a quotient "
                            "triangle in a plane connected partition (bug)");
                    s2.push_back(*std::min_element(tri.begin(), tri.end()));
                }
            }
            for (int v : detail::pair_witness(pl, p1, p2)) s2.push_back(v);
            for (int v : detail::pair_witness(pl, p2, p1)) s2.push_back(v);
            for (int v : detail::pair_witness(pl, p3, p1)) s2.push_back(v);
        }
        f1.per_clique[key] = sorted_unique(s1);
        f2.per_clique[key] = sorted_unique(s2);
    };
    for (int a = 0; a < np; ++a)
        for (int b : qadj[a]) {
            if (b <= a) continue;
            emit({a, b});
            for (int c : qadj[a])
                if (c > b && qadj[b].count(c)) emit({a, b, c});
        }
    rp.ap.witnesses.push_back(std::move(f1));
    rp.ap.witnesses.push_back(std::move(f2));
}

// ---------------------------------------------------------------------------
// The end-to-end pipeline at genus 0 with identity projection.

struct PipelineResult {
    AlmostPartition ap;        // of the total graph
    Report report;
    int b_q = 0;
    bool bq_within_planar_bound = true;
    double loss_bound = 0.0;
    double width_bound = 0.0;
    std::size_t break_size = 0;
    std::size_t breakpoints = 0;
};

inline PipelineResult pipeline_planar_vortex(const PlaneQuasiVortex& lam0, double d) {
    PipelineResult out;
    Report lrep = validate_lambda(lam0);
    if (!lrep.ok())
        throw ValidationError("pipeline: instance not standardised:\n" + lrep.summary());
    int k = std::max(0, lam0.vx.width());
    double n = static_cast<double>(lam0.total_n);
    double dprime = d / (k + 1);

    // adjustment: quasi-triangulation completion, loss 0
    CompletionResult comp = make_quasi_triangulation(lam0.g0plus, lam0.w, lam0.disc);
    ConPlanarResult cp = con_planar(comp.eg, lam0.w);
    if (cp.bound > dprime)
        out.report.flag("near-width budget", "12*sqrt(3n') = " + std::to_string(cp.bound) +
                                                 " > d' = " + std::to_string(dprime));

    Adjustment adj;
    adj.g0minus = comp.eg;
    adj.plane_map.resize(lam0.g0plus.g.n);
    std::iota(adj.plane_map.begin(), adj.plane_map.end(), 0);
    AppliedAdjustment applied = apply_adjustment(lam0, adj);

    PartitionedLambda pl;
    pl.lam = applied.lam;
    pl.parts = cp.parts;
    pl.w_part = cp.w_part;
    pl.loss = applied.new_loss;  // empty for S = ∅
    pl.k = k;
    pl.b = 2;
    Report plrep = validate_partitioned_lambda(pl);
    if (!plrep.ok())
        throw ValidationError("pipeline: partitioned lambda invalid:\n" + plrep.summary());

    FindBreakResult fb = find_break(pl, dprime);
    out.b_q = fb.b_q;
    out.bq_within_planar_bound = fb.bq_within_planar_bound;
    out.break_size = fb.brk.members.size();

    UseBreakResult ub = use_break(fb.pl, fb.brk);
    out.breakpoints = ub.s.size();

    RaisedPartition rp = raise_to_partition(ub.pl, ub.raise);
    concentration_witnesses(ub.pl, rp);

    out.loss_bound = 4.0 * (k + 1) * (fb.b_q + 1) * n / dprime;
    out.width_bound = d;
    out.ap = rp.ap;
    Multigraph total = ub.pl.lam.total_graph();
    Report final =
        validate_almost_partition(total, out.ap, 2, out.width_bound, out.loss_bound);
    for (auto& l : final.lines) out.report.lines.push_back(l);
    Report raiserep = validate_raise(ub.pl, ub.raise);
    for (auto& l : raiserep.lines) out.report.lines.push_back(l);
    if (!out.bq_within_planar_bound)
        out.report.flag("quotient width above the paper's 6", "b_q = " + std::to_string(fb.b_q));
    return out;
}

}  // namespace decomp

#endif

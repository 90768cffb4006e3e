#ifndef DECOMP_EMBED_HPP
#define DECOMP_EMBED_HPP

// Combinatorial embeddings: rotation systems with edge signatures, face
// tracing, Euler genus, facial triangles, clean discs, and the non-crossing
// check.

#include "core.hpp"

namespace decomp {

// One end of an edge: (edge id, side). Side 0 is the endpoints[e][0] end.
// A loop contributes both sides to the same vertex's rotation.
struct End {
    int e = -1;
    int side = 0;
    bool operator==(const End& o) const { return e == o.e && side == o.side; }
};

// Directed traversal of edge e from endpoints[e][d] to endpoints[e][1-d].
struct Dart {
    int e = -1;
    int d = 0;
    bool operator==(const Dart& o) const { return e == o.e && d == o.d; }
    bool operator<(const Dart& o) const { return e != o.e ? e < o.e : d < o.d; }
};

struct EmbeddedGraph {
    Multigraph g;
    std::vector<std::vector<End>> rot;  // per-vertex cyclic order of incident ends
    std::vector<int> sig;               // edge -> +1 / -1

    EmbeddedGraph() = default;
    explicit EmbeddedGraph(int n) : g(n), rot(n) {}

    int end_vertex(const End& x) const { return g.edges[x.e][x.side]; }
    int tail(const Dart& d) const { return g.edges[d.e][d.d]; }
    int head(const Dart& d) const { return g.edges[d.e][1 - d.d]; }

    // append a new edge whose ends go to the back of both rotations
    int add_edge_back(int u, int v, int s = 1) {
        int e = g.add_edge(u, v);
        sig.push_back(s);
        rot[u].push_back({e, 0});
        rot[v].push_back({e, 1});
        return e;
    }
    int find_end(int v, const End& x) const {
        for (int i = 0; i < static_cast<int>(rot[v].size()); ++i)
            if (rot[v][i] == x) return i;
        return -1;
    }
};

inline void require_wellformed(const EmbeddedGraph& eg) {
    if (static_cast<int>(eg.rot.size()) != eg.g.n)
        throw ValidationError("embedding: rotation table size mismatch");
    if (static_cast<int>(eg.sig.size()) != eg.g.num_edges())
        throw ValidationError("embedding: signature table size mismatch");
    std::vector<std::array<int, 2>> cnt(eg.g.num_edges(), {0, 0});
    for (int v = 0; v < eg.g.n; ++v)
        for (const End& x : eg.rot[v]) {
            if (x.e < 0 || x.e >= eg.g.num_edges() || (x.side != 0 && x.side != 1))
                throw ValidationError("embedding: bad end in rotation");
            if (eg.g.edges[x.e][x.side] != v)
                throw ValidationError("embedding: end listed at wrong vertex");
            if (++cnt[x.e][x.side] > 1)
                throw ValidationError("embedding: duplicated edge end");
        }
    for (int e = 0; e < eg.g.num_edges(); ++e) {
        if (cnt[e][0] != 1 || cnt[e][1] != 1)
            throw ValidationError("embedding: edge end missing from rotation");
        if (eg.sig[e] != 1 && eg.sig[e] != -1)
            throw ValidationError("embedding: signature must be +1 or -1");
    }
}

// ---------------------------------------------------------------------------
// Face tracing.
//
// Faces are orbits of signed darts under: arrive at v via the end of e, flip
// the running sign by sig(e), then leave via the next end (sign +1) or the
// previous end (sign -1) in v's rotation. Orbits come in mirror pairs; each
// pair is one face, and the representative walk starts at the smallest
// unvisited signed dart.

struct Face {
    std::vector<Dart> walk;  // boundary walk; vertex i of the walk is head(walk[i])
};

struct FaceSet {
    std::vector<Face> faces;
    bool two_cell = false;  // all faces 2-cell; true for connected hosts

    std::size_t total_length() const {
        std::size_t s = 0;
        for (const auto& f : faces) s += f.walk.size();
        return s;
    }
};

inline std::vector<int> face_vertices(const EmbeddedGraph& eg, const Face& f) {
    std::vector<int> vs;
    for (const Dart& d : f.walk) vs.push_back(eg.head(d));
    return vs;
}

namespace detail {

// signed dart index: ((e*2 + dir)*2 + (sign<0))
inline int sd_index(const Dart& d, int s) { return (d.e * 2 + d.d) * 2 + (s < 0 ? 1 : 0); }

inline std::pair<Dart, int> face_next(const EmbeddedGraph& eg, const Dart& d, int s) {
    int v = eg.head(d);
    End arrive{d.e, 1 - d.d};
    int s2 = s * eg.sig[d.e];
    int i = eg.find_end(v, arrive);
    if (i < 0) throw ValidationError("face_next: end not in rotation");
    int k = static_cast<int>(eg.rot[v].size());
    int j = s2 > 0 ? (i + 1) % k : (i + k - 1) % k;
    End leave = eg.rot[v][j];
    return {Dart{leave.e, leave.side}, s2};
}

}  // namespace detail

inline FaceSet trace_faces(const EmbeddedGraph& eg) {
    require_wellformed(eg);
    FaceSet fs;
    int m = eg.g.num_edges();
    std::vector<char> visited(4 * m, 0);
    // scan +1 starts before -1 starts: on orientable all-positive embeddings
    // every representative walk is then a +1 traversal, and each dart lies on
    // exactly one representative walk (corner insertion relies on this)
    for (int si = 0; si < 2; ++si)
        for (int e = 0; e < m; ++e)
            for (int d = 0; d < 2; ++d) {
                Dart start{e, d};
                int s0 = si == 0 ? 1 : -1;
                if (visited[detail::sd_index(start, s0)]) continue;
                Face f;
                Dart cur = start;
                int s = s0;
                do {
                    visited[detail::sd_index(cur, s)] = 1;
                    // mark the mirror traversal: same edge-side walked backwards
                    auto nxt = detail::face_next(eg, cur, s);
                    visited[detail::sd_index(Dart{cur.e, 1 - cur.d}, -nxt.second)] = 1;
                    f.walk.push_back(cur);
                    cur = nxt.first;
                    s = nxt.second;
                    if (f.walk.size() > 4u * m + 4u)
                        throw ValidationError("trace_faces: walk failed to close");
                } while (!(cur == start && s == s0));
                fs.faces.push_back(std::move(f));
            }
    fs.two_cell = is_connected(eg.g);
    // isolated vertices contribute a face with an empty walk only when the
    // whole graph is a single vertex (one face, nothing to trace)
    return fs;
}

inline Report validate_embedding(const EmbeddedGraph& eg) {
    Report rep;
    try {
        require_wellformed(eg);
        rep.add("rotation system well-formed", true);
    } catch (const ValidationError& err) {
        rep.add("rotation system well-formed", false, err.what());
        return rep;
    }
    bool conn = is_connected(eg.g);
    rep.add("host graph connected", conn);
    FaceSet fs = trace_faces(eg);
    rep.add("face walks cover each edge-end twice",
            fs.total_length() == 2u * static_cast<std::size_t>(eg.g.num_edges()),
            "total walk length " + std::to_string(fs.total_length()));
    rep.add("all faces 2-cell", fs.two_cell,
            conn ? "rotation-system faces of a connected graph" : "disconnected host");
    if (conn && eg.g.n > 0) {
        int f = static_cast<int>(fs.faces.size());
        if (eg.g.num_edges() == 0) f = 1;
        int genus = 2 - (eg.g.n - eg.g.num_edges() + f);
        rep.add("euler genus >= 0", genus >= 0, "genus " + std::to_string(genus));
    }
    return rep;
}

// Euler genus of a connected nonempty embedded graph: 2 - (n - m + f).
inline int euler_genus(const EmbeddedGraph& eg) {
    if (eg.g.n == 0) throw ValidationError("euler_genus: empty graph");
    if (!is_connected(eg.g)) throw ValidationError("euler_genus: disconnected graph");
    int f = eg.g.num_edges() == 0 ? 1 : static_cast<int>(trace_faces(eg).faces.size());
    return 2 - (eg.g.n - eg.g.num_edges() + f);
}

// Facial triangles: 2-cell faces whose walk has length 3 and no repeated
// vertex; returned as sorted vertex triples.
inline std::set<std::array<int, 3>> facial_triangles(const EmbeddedGraph& eg) {
    std::set<std::array<int, 3>> out;
    if (eg.g.num_edges() == 0) return out;
    FaceSet fs = trace_faces(eg);
    if (!fs.two_cell) return out;
    for (const auto& f : fs.faces) {
        if (f.walk.size() != 3) continue;
        std::array<int, 3> t{eg.head(f.walk[0]), eg.head(f.walk[1]), eg.head(f.walk[2])};
        std::sort(t.begin(), t.end());
        if (t[0] != t[1] && t[1] != t[2]) out.insert(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Clean discs. A disc is purely combinatorial: a host face plus a cyclic
// sequence of distinct boundary vertices realizable by one traversal of the
// face's boundary walk.

struct CleanDisc {
    int face = -1;           // index into trace_faces order of the host graph
    std::vector<int> bs;     // b_1..b_t in cyclic order
};

// Is `sub` (distinct vertices) realizable as a cyclic subsequence of the
// closed walk `verts`? Tries every rotation of the anchor occurrence.
inline bool cyclic_subsequence(const std::vector<int>& verts, const std::vector<int>& sub) {
    if (sub.empty()) return true;
    int L = static_cast<int>(verts.size());
    if (L == 0) return false;
    for (int start = 0; start < L; ++start) {
        if (verts[start] != sub[0]) continue;
        int need = 1;
        for (int off = 1; off < L && need < static_cast<int>(sub.size()); ++off)
            if (verts[(start + off) % L] == sub[need]) ++need;
        if (need == static_cast<int>(sub.size())) return true;
    }
    return false;
}

inline Report validate_disc(const EmbeddedGraph& eg, const FaceSet& fs, const CleanDisc& d) {
    Report rep;
    bool face_ok = d.face >= 0 && d.face < static_cast<int>(fs.faces.size());
    if (eg.g.num_edges() == 0 && eg.g.n >= 1) face_ok = d.face == 0;  // single-vertex host: one face
    rep.add("disc: host face exists", face_ok);
    if (!face_ok) return rep;
    auto b = d.bs;
    bool distinct = sorted_unique(b).size() == b.size();
    rep.add("disc: boundary vertices distinct", distinct);
    std::vector<int> fv = eg.g.num_edges() == 0
                              ? std::vector<int>(eg.g.n == 1 ? std::vector<int>{0} : std::vector<int>{})
                              : face_vertices(eg, fs.faces[d.face]);
    // traversal direction is not pinned; try both
    std::vector<int> rv(fv.rbegin(), fv.rend());
    bool realizable = cyclic_subsequence(fv, d.bs) || cyclic_subsequence(rv, d.bs);
    rep.add("disc: cyclic order realizable on the boundary walk", realizable);
    return rep;
}

// Underlying cycle of a disc: graph on the b_i with consecutive boundary
// vertices adjacent; a cycle when t >= 3, a path when t <= 2.
struct UnderlyingCycle {
    Multigraph u;            // on t vertices
    std::vector<int> verts;  // position -> host vertex id
};

inline UnderlyingCycle underlying_cycle(const EmbeddedGraph& eg, const FaceSet& fs,
                                        const CleanDisc& d) {
    Report rep = validate_disc(eg, fs, d);
    if (!rep.ok()) throw ValidationError("underlying_cycle: invalid disc:\n" + rep.summary());
    UnderlyingCycle uc;
    uc.verts = d.bs;
    int t = static_cast<int>(d.bs.size());
    uc.u = Multigraph(t);
    if (t == 2) uc.u.add_edge(0, 1);
    else if (t >= 3)
        for (int i = 0; i < t; ++i) uc.u.add_edge(i, (i + 1) % t);
    return uc;
}

// check_noncrossing: true iff no x,a,y,b in cyclic order with x,y in h1 and
// a,b in h2 exist on the disc boundary. Brute enumeration over quadruples.
inline bool check_noncrossing(const EmbeddedGraph& eg, const FaceSet& fs, const CleanDisc& d,
                              const std::vector<int>& h1, const std::vector<int>& h2) {
    (void)fs;  // the disc's cyclic order is the data; the face set pins its origin
    if (euler_genus(eg) != 0) throw ValidationError("check_noncrossing: host not plane");
    if (!is_connected_subset(eg.g, h1) || !is_connected_subset(eg.g, h2))
        throw ValidationError("check_noncrossing: h1/h2 must induce connected subgraphs");
    {
        std::vector<char> in1(eg.g.n, 0);
        for (int v : h1) in1[v] = 1;
        for (int v : h2)
            if (in1[v]) throw ValidationError("check_noncrossing: h1 and h2 must be disjoint");
    }
    int t = static_cast<int>(d.bs.size());
    std::vector<int> pos_of(eg.g.n, -1);
    for (int i = 0; i < t; ++i) pos_of[d.bs[i]] = i;
    std::vector<int> p1, p2;
    for (int v : h1)
        if (pos_of[v] >= 0) p1.push_back(pos_of[v]);
    for (int v : h2)
        if (pos_of[v] >= 0) p2.push_back(pos_of[v]);
    if (p1.size() < 2 || p2.size() < 2 || t < 4) return true;
    auto inside = [&](int a, int x, int y) {
        // is a strictly inside the cyclic open interval (x, y)?
        return x < y ? (x < a && a < y) : (a > x || a < y);
    };
    for (std::size_t i = 0; i < p1.size(); ++i)
        for (std::size_t j = i + 1; j < p1.size(); ++j)
            for (std::size_t k = 0; k < p2.size(); ++k)
                for (std::size_t l = k + 1; l < p2.size(); ++l) {
                    int x = p1[i], y = p1[j], a = p2[k], b = p2[l];
                    if (inside(a, x, y) != inside(b, x, y)) return false;
                }
    return true;
}

// ---------------------------------------------------------------------------
// Vertex deletion with remap; rotations restrict, signatures restrict.

struct EmbeddedSubgraph {
    EmbeddedGraph eg;
    std::vector<int> orig_of;      // new vertex -> old vertex
    std::vector<int> new_of;      // old vertex -> new vertex or -1
    std::vector<int> edge_orig;   // new edge -> old edge
    std::vector<int> edge_new;    // old edge -> new edge or -1
};

inline EmbeddedSubgraph delete_vertices(const EmbeddedGraph& eg, const std::vector<int>& del) {
    std::vector<char> dead(eg.g.n, 0);
    for (int v : del) dead[v] = 1;
    EmbeddedSubgraph r;
    r.new_of.assign(eg.g.n, -1);
    for (int v = 0; v < eg.g.n; ++v)
        if (!dead[v]) {
            r.new_of[v] = static_cast<int>(r.orig_of.size());
            r.orig_of.push_back(v);
        }
    r.eg = EmbeddedGraph(static_cast<int>(r.orig_of.size()));
    r.edge_new.assign(eg.g.num_edges(), -1);
    for (int e = 0; e < eg.g.num_edges(); ++e) {
        int u = eg.g.edges[e][0], v = eg.g.edges[e][1];
        if (dead[u] || dead[v]) continue;
        r.edge_new[e] = r.eg.g.add_edge(r.new_of[u], r.new_of[v]);
        r.eg.sig.push_back(eg.sig[e]);
        r.edge_orig.push_back(e);
    }
    for (int v = 0; v < eg.g.n; ++v) {
        if (dead[v]) continue;
        for (const End& x : eg.rot[v])
            if (r.edge_new[x.e] >= 0) r.eg.rot[r.new_of[v]].push_back({r.edge_new[x.e], x.side});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Orientation normalization: flip vertices along a spanning forest so that
// every signature becomes +1. Throws when the embedding is non-orientable.

inline EmbeddedGraph normalize_orientation(const EmbeddedGraph& eg) {
    require_wellformed(eg);
    std::vector<int> flip(eg.g.n, -1);
    for (int s = 0; s < eg.g.n; ++s) {
        if (flip[s] >= 0) continue;
        flip[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : eg.g.adj[v]) {
                if (w == v) continue;
                int want = flip[v] ^ (eg.sig[e] < 0 ? 1 : 0);
                if (flip[w] < 0) {
                    flip[w] = want;
                    stack.push_back(w);
                }
            }
        }
    }
    EmbeddedGraph out = eg;
    for (int e = 0; e < eg.g.num_edges(); ++e) {
        int u = eg.g.edges[e][0], v = eg.g.edges[e][1];
        int s = eg.sig[e];
        if (u != v) s *= ((flip[u] ^ flip[v]) ? -1 : 1);
        if (s != 1) throw ValidationError("normalize_orientation: embedding is non-orientable");
        out.sig[e] = 1;
    }
    for (int v = 0; v < eg.g.n; ++v)
        if (flip[v] == 1) std::reverse(out.rot[v].begin(), out.rot[v].end());
    return out;
}

// ---------------------------------------------------------------------------
// Edge insertion primitives for all-positive embeddings.
//
// A corner of a face walk is the gap at head(walk[i]) between the arrival
// end of walk[i] and the departure end of walk[i+1]. Inserting a new edge at
// corners i != j splits the face into walk[i+1..j] + back-dart and
// walk[j+1..i] + forward-dart.

inline void require_positive(const EmbeddedGraph& eg, const char* who) {
    for (int s : eg.sig)
        if (s != 1) throw ValidationError(std::string(who) + ": needs an all-positive embedding");
}

inline int insert_edge_at_corners(EmbeddedGraph& eg, const Face& f, int ci, int cj) {
    require_positive(eg, "insert_edge_at_corners");
    if (ci == cj) throw ValidationError("insert_edge_at_corners: corners must differ");
    // the walk must be a +1 traversal: next-after-arrival is the departure end
    int L = static_cast<int>(f.walk.size());
    for (int c : {ci, cj}) {
        const Dart& d = f.walk[c];
        const Dart& nx = f.walk[(c + 1) % L];
        int v = eg.head(d);
        int p = eg.find_end(v, End{d.e, 1 - d.d});
        if (p < 0 || !(eg.rot[v][(p + 1) % eg.rot[v].size()] == End{nx.e, nx.d}))
            throw ValidationError("insert_edge_at_corners: walk is not a forward traversal");
    }
    const Dart& di = f.walk[ci];
    const Dart& dj = f.walk[cj];
    int vi = eg.head(di), vj = eg.head(dj);
    int e = eg.g.add_edge(vi, vj);
    eg.sig.push_back(1);
    End arr_i{di.e, 1 - di.d}, arr_j{dj.e, 1 - dj.d};
    // insert the vj end first so the vi index stays valid when vi == vj
    int pj = eg.find_end(vj, arr_j);
    if (pj < 0) throw ValidationError("insert_edge_at_corners: corner end missing");
    eg.rot[vj].insert(eg.rot[vj].begin() + pj + 1, End{e, 1});
    int pi = eg.find_end(vi, arr_i);
    if (pi < 0) throw ValidationError("insert_edge_at_corners: corner end missing");
    eg.rot[vi].insert(eg.rot[vi].begin() + pi + 1, End{e, 0});
    return e;
}

// ---------------------------------------------------------------------------
// Embedded-graph text format:
//   emb <n> <m>
//   e <id> <u> <v> <sign>           (1-indexed ids)
//   r <v> <end_1> ... <end_k>       (end = "<edge_id>a" or "<edge_id>b")
// Disc: disc <face_index_1based> <b_1> ... <b_t>

inline void write_embedded(std::ostream& os, const EmbeddedGraph& eg) {
    os << "emb " << eg.g.n << " " << eg.g.num_edges() << "\n";
    for (int e = 0; e < eg.g.num_edges(); ++e)
        os << "e " << e + 1 << " " << eg.g.edges[e][0] + 1 << " " << eg.g.edges[e][1] + 1 << " "
           << eg.sig[e] << "\n";
    for (int v = 0; v < eg.g.n; ++v) {
        os << "r " << v + 1;
        for (const End& x : eg.rot[v]) os << " " << x.e + 1 << (x.side == 0 ? 'a' : 'b');
        os << "\n";
    }
}

inline EmbeddedGraph parse_embedded(std::istream& is) {
    std::string tok;
    if (!(is >> tok) || tok != "emb") throw ValidationError("parse_embedded: expected 'emb'");
    int n, m;
    if (!(is >> n >> m)) throw ValidationError("parse_embedded: bad header");
    EmbeddedGraph eg(n);
    eg.g.edges.assign(m, {-1, -1});
    eg.sig.assign(m, 1);
    std::string line;
    std::getline(is, line);
    int edges_seen = 0, rots_seen = 0;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "e") {
            int id, u, v, s;
            if (!(ls >> id >> u >> v >> s))
                throw ValidationError("parse_embedded: bad edge line " + std::to_string(lineno));
            if (id < 1 || id > m || u < 1 || u > n || v < 1 || v > n || (s != 1 && s != -1))
                throw ValidationError("parse_embedded: edge values out of range, line " +
                                      std::to_string(lineno));
            eg.g.edges[id - 1] = {u - 1, v - 1};
            eg.sig[id - 1] = s;
            ++edges_seen;
        } else if (kind == "r") {
            int v;
            if (!(ls >> v) || v < 1 || v > n)
                throw ValidationError("parse_embedded: bad rotation line " + std::to_string(lineno));
            std::string endtok;
            while (ls >> endtok) {
                char side = endtok.back();
                if (side != 'a' && side != 'b')
                    throw ValidationError("parse_embedded: bad end token '" + endtok + "', line " +
                                          std::to_string(lineno));
                int eid = std::stoi(endtok.substr(0, endtok.size() - 1));
                if (eid < 1 || eid > m)
                    throw ValidationError("parse_embedded: end edge id out of range, line " +
                                          std::to_string(lineno));
                eg.rot[v - 1].push_back({eid - 1, side == 'a' ? 0 : 1});
            }
            ++rots_seen;
        } else {
            // unknown section (e.g. vortex data); put the line back conceptually
            break;
        }
        if (edges_seen == m && rots_seen == n) break;
    }
    for (int e = 0; e < m; ++e) {
        if (eg.g.edges[e][0] < 0)
            throw ValidationError("parse_embedded: edge " + std::to_string(e + 1) + " missing");
        eg.g.adj[eg.g.edges[e][0]].push_back({eg.g.edges[e][1], e});
        eg.g.adj[eg.g.edges[e][1]].push_back({eg.g.edges[e][0], e});
    }
    require_wellformed(eg);
    return eg;
}

inline void write_disc(std::ostream& os, const CleanDisc& d) {
    os << "disc " << d.face + 1;
    for (int v : d.bs) os << " " << v + 1;
    os << "\n";
}

inline CleanDisc parse_disc_line(const std::string& line) {
    std::istringstream ls(line);
    std::string tok;
    CleanDisc d;
    if (!(ls >> tok) || tok != "disc") throw ValidationError("parse_disc: expected 'disc'");
    int f;
    if (!(ls >> f) || f < 1) throw ValidationError("parse_disc: bad face index");
    d.face = f - 1;
    int v;
    while (ls >> v) d.bs.push_back(v - 1);
    return d;
}

}  // namespace decomp

#endif

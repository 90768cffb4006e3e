#ifndef DECOMP_CORE_HPP
#define DECOMP_CORE_HPP

// Multigraphs, partitions, almost-partitions, layerings, and the small
// treewidth checks everything else is validated against.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace decomp {

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Pass/flag/fail lines produced by the validators. A report is ok() when
// nothing failed; flags survive as warnings.
struct Report {
    enum Verdict { Pass = 0, Flag = 1, Fail = 2 };
    struct Line {
        std::string check;
        Verdict verdict;
        std::string detail;
    };
    std::vector<Line> lines;

    void add(const std::string& check, bool pass, const std::string& detail = "") {
        lines.push_back({check, pass ? Pass : Fail, detail});
    }
    void flag(const std::string& check, const std::string& detail = "") {
        lines.push_back({check, Flag, detail});
    }
    bool ok() const {
        for (const auto& l : lines)
            if (l.verdict == Fail) return false;
        return true;
    }
    std::string summary() const {
        std::ostringstream os;
        for (const auto& l : lines) {
            os << (l.verdict == Pass ? "pass" : l.verdict == Flag ? "FLAG" : "FAIL")
               << "  " << l.check;
            if (!l.detail.empty()) os << "  (" << l.detail << ")";
            os << "\n";
        }
        return os.str();
    }
};

// Vertices are dense ids 0..n-1, edges dense ids 0..m-1. Loops and parallel
// edges are allowed; loops contribute two entries to the adjacency list.
struct Multigraph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge id)

    Multigraph() = default;
    explicit Multigraph(int n_) : n(n_), adj(n_) {}

    int num_vertices() const { return n; }
    int num_edges() const { return static_cast<int>(edges.size()); }

    int add_vertex() {
        adj.emplace_back();
        return n++;
    }
    int add_edge(int u, int v) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("add_edge: endpoint out of range");
        int id = num_edges();
        edges.push_back({u, v});
        adj[u].push_back({v, id});
        adj[v].push_back({u, id});
        return id;
    }
    bool has_edge(int u, int v) const {
        for (auto [w, e] : adj[u])
            if (w == v) return true;
        return false;
    }
    // degree with loops counted twice
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

inline std::vector<int> component_ids(const Multigraph& g) {
    std::vector<int> comp(g.n, -1);
    int c = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : g.adj[v])
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    return comp;
}

inline bool is_connected(const Multigraph& g) {
    if (g.n == 0) return true;  // empty graph is connected by convention
    auto comp = component_ids(g);
    return *std::max_element(comp.begin(), comp.end()) == 0;
}

// Connectivity of an induced vertex subset; the empty set is connected.
inline bool is_connected_subset(const Multigraph& g, const std::vector<int>& verts) {
    if (verts.empty()) return true;
    std::vector<char> in(g.n, 0), seen(g.n, 0);
    for (int v : verts) in[v] = 1;
    std::vector<int> stack{verts[0]};
    seen[verts[0]] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, e] : g.adj[v])
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == static_cast<int>(verts.size());
}

struct InducedSubgraph {
    Multigraph g;
    std::vector<int> orig_of;  // new id -> original id
    std::vector<int> new_of;   // original id -> new id or -1
};

inline InducedSubgraph induced_subgraph(const Multigraph& g, const std::vector<int>& verts) {
    InducedSubgraph r;
    r.new_of.assign(g.n, -1);
    for (int v : verts) {
        if (v < 0 || v >= g.n) throw ValidationError("induced_subgraph: vertex out of range");
        if (r.new_of[v] >= 0) throw ValidationError("induced_subgraph: duplicate vertex");
        r.new_of[v] = static_cast<int>(r.orig_of.size());
        r.orig_of.push_back(v);
    }
    r.g = Multigraph(static_cast<int>(verts.size()));
    for (int e = 0; e < g.num_edges(); ++e) {
        int u = g.edges[e][0], v = g.edges[e][1];
        if (r.new_of[u] >= 0 && r.new_of[v] >= 0) r.g.add_edge(r.new_of[u], r.new_of[v]);
    }
    return r;
}

// Simplification: drop loops, collapse parallel edges.
inline Multigraph simplified(const Multigraph& g) {
    Multigraph s(g.n);
    std::set<std::pair<int, int>> seen;
    for (auto& e : g.edges) {
        int u = std::min(e[0], e[1]), v = std::max(e[0], e[1]);
        if (u == v) continue;
        if (seen.insert({u, v}).second) s.add_edge(u, v);
    }
    return s;
}

inline std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// ---------------------------------------------------------------------------
// Partitions

using Partition = std::vector<std::vector<int>>;

// Throws unless parts are pairwise disjoint and cover exactly `universe`.
inline void require_partition_of(const Partition& p, const std::vector<char>& universe, int n,
                                 const char* who) {
    std::vector<char> seen(n, 0);
    for (const auto& part : p)
        for (int v : part) {
            if (v < 0 || v >= n) throw ValidationError(std::string(who) + ": vertex out of range");
            if (!universe[v])
                throw ValidationError(std::string(who) + ": vertex " + std::to_string(v) +
                                      " outside universe");
            if (seen[v])
                throw ValidationError(std::string(who) + ": vertex " + std::to_string(v) +
                                      " in two parts");
            seen[v] = 1;
        }
    for (int v = 0; v < n; ++v)
        if (universe[v] && !seen[v])
            throw ValidationError(std::string(who) + ": vertex " + std::to_string(v) +
                                  " not covered");
}

inline void require_partition(const Multigraph& g, const Partition& p, const char* who) {
    require_partition_of(p, std::vector<char>(g.n, 1), g.n, who);
}

// Quotient by a partition: one vertex per part (empty parts become isolated
// vertices), distinct parts adjacent iff some edge joins them; simple.
inline Multigraph quotient(const Multigraph& g, const Partition& p) {
    require_partition(g, p, "quotient");
    std::vector<int> part_of(g.n, -1);
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
        for (int v : p[i]) part_of[v] = i;
    Multigraph q(static_cast<int>(p.size()));
    std::set<std::pair<int, int>> seen;
    for (auto& e : g.edges) {
        int a = part_of[e[0]], b = part_of[e[1]];
        if (a == b) continue;
        int u = std::min(a, b), v = std::max(a, b);
        if (seen.insert({u, v}).second) q.add_edge(u, v);
    }
    return q;
}

inline bool is_connected_partition(const Multigraph& g, const Partition& p) {
    for (const auto& part : p)
        if (!is_connected_subset(g, part)) return false;
    return true;
}

inline std::size_t partition_width(const Partition& p) {
    std::size_t w = 0;
    for (const auto& part : p) w = std::max(w, part.size());
    return w;
}

// Merging: every part of `fine` is contained in a part of `coarse`.
inline bool is_merging(const Partition& coarse, const Partition& fine, int n) {
    std::vector<int> owner(n, -1);
    for (int i = 0; i < static_cast<int>(coarse.size()); ++i)
        for (int v : coarse[i]) owner[v] = i;
    for (const auto& part : fine) {
        int o = -2;
        for (int v : part) {
            if (o == -2) o = owner[v];
            if (owner[v] != o || o < 0) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Almost-partitions

// Named concentration-witness family: for each quotient clique Q (keyed by
// the sorted part indices), a set S_Q with |S_Q| <= m such that every K in
// the family's clique class meets at most b parts of Q after deleting S_Q.
struct WitnessFamily {
    std::string kind;
    int b = 0;
    int m = 0;
    std::map<std::vector<int>, std::vector<int>> per_clique;
};

struct AlmostPartition {
    std::vector<int> loss;  // X
    Partition parts;        // partition of G - X
    std::vector<WitnessFamily> witnesses;

    std::size_t width() const { return partition_width(parts); }
    std::size_t loss_size() const { return loss.size(); }
};

// ---------------------------------------------------------------------------
// Layerings

struct Layering {
    std::vector<std::vector<int>> layers;
};

inline Report validate_layering(const Multigraph& g, const Layering& l) {
    Report rep;
    std::vector<int> layer_of(g.n, -1);
    bool part_ok = true;
    for (int i = 0; i < static_cast<int>(l.layers.size()); ++i)
        for (int v : l.layers[i]) {
            if (v < 0 || v >= g.n || layer_of[v] != -1) part_ok = false;
            else layer_of[v] = i;
        }
    for (int v = 0; v < g.n; ++v)
        if (layer_of[v] < 0) part_ok = false;
    rep.add("layering: layers partition V(G)", part_ok);
    bool edge_ok = part_ok;
    if (part_ok)
        for (auto& e : g.edges)
            if (std::abs(layer_of[e[0]] - layer_of[e[1]]) > 1) edge_ok = false;
    rep.add("layering: edges within or between consecutive layers", edge_ok);
    return rep;
}

// BFS layering from a root; every vertex must be reachable.
inline Layering bfs_layering(const Multigraph& g, int root) {
    if (root < 0 || root >= g.n) throw ValidationError("bfs_layering: root out of range");
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    int maxd = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, e] : g.adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                maxd = std::max(maxd, dist[w]);
                q.push(w);
            }
    }
    for (int v = 0; v < g.n; ++v)
        if (dist[v] < 0)
            throw ValidationError("bfs_layering: vertex " + std::to_string(v) +
                                  " unreachable from root");
    Layering l;
    l.layers.assign(maxd + 1, {});
    for (int v = 0; v < g.n; ++v) l.layers[dist[v]].push_back(v);
    return l;
}

// ---------------------------------------------------------------------------
// Treewidth checks

// Series-parallel reduction on the simplification: delete degree-<=1
// vertices, contract degree-2 vertices suppressing parallels. Succeeds iff
// the graph has no K4 minor, i.e. treewidth <= 2.
inline bool treewidth_at_most_2(const Multigraph& g) {
    std::vector<std::set<int>> nb(g.n);
    for (auto& e : g.edges)
        if (e[0] != e[1]) {
            nb[e[0]].insert(e[1]);
            nb[e[1]].insert(e[0]);
        }
    std::vector<char> alive(g.n, 1);
    std::queue<int> q;
    for (int v = 0; v < g.n; ++v)
        if (nb[v].size() <= 2) q.push(v);
    int remaining = g.n;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (!alive[v] || nb[v].size() > 2) continue;
        alive[v] = 0;
        --remaining;
        std::vector<int> ns(nb[v].begin(), nb[v].end());
        for (int u : ns) nb[u].erase(v);
        nb[v].clear();
        if (ns.size() == 2) {
            int a = ns[0], b = ns[1];
            nb[a].insert(b);
            nb[b].insert(a);
        }
        for (int u : ns)
            if (alive[u] && nb[u].size() <= 2) q.push(u);
    }
    return remaining == 0;
}

inline bool treewidth_at_most_1(const Multigraph& g) {
    // forest check on the simplification
    Multigraph s = simplified(g);
    for (auto& e : g.edges)
        if (e[0] == e[1]) return false;
    // parallel edges form a 2-cycle, which is not a forest in the multigraph
    // sense, but treewidth is computed on the simplification
    std::vector<int> comp = component_ids(s);
    int c = s.n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    return s.num_edges() <= s.n - c;
}

inline bool treewidth_at_most_0(const Multigraph& g) { return simplified(g).num_edges() == 0; }

// Exact treewidth by the elimination-ordering subset DP. Guarded to n <= 14.
// Convention: the empty graph has treewidth -1 (one empty bag).
inline int brute_treewidth(const Multigraph& g0) {
    if (g0.n > 14) throw ValidationError("brute_treewidth: size guard exceeded (n > 14)");
    if (g0.n == 0) return -1;
    Multigraph g = simplified(g0);
    const int n = g.n;
    std::vector<uint32_t> nbmask(n, 0);
    for (auto& e : g.edges) {
        nbmask[e[0]] |= 1u << e[1];
        nbmask[e[1]] |= 1u << e[0];
    }
    // q(X, v): number of vertices outside X∪{v} reachable from v through X
    auto qval = [&](uint32_t X, int v) {
        uint32_t reach = 1u << v;
        uint32_t frontier = 1u << v;
        uint32_t out = 0;
        while (frontier) {
            int u = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            uint32_t ns = nbmask[u] & ~reach;
            out |= ns & ~X;
            uint32_t through = ns & X;
            reach |= ns;
            frontier |= through;
        }
        out &= ~(1u << v);
        return __builtin_popcount(out);
    };
    std::vector<int8_t> f(1u << n, 0);
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        int best = n;
        for (uint32_t m2 = mask; m2; m2 &= m2 - 1) {
            int v = __builtin_ctz(m2);
            uint32_t prev = mask ^ (1u << v);
            int val = std::max<int>(f[prev], qval(prev, v));
            best = std::min(best, val);
        }
        f[mask] = static_cast<int8_t>(best);
    }
    return f[(1u << n) - 1];
}

// treewidth <= b dispatch used by validators; b == 3 needs a small graph.
inline bool treewidth_at_most(const Multigraph& g, int b, bool* checked = nullptr) {
    if (checked) *checked = true;
    if (b < 0) return g.n == 0;
    if (b == 0) return treewidth_at_most_0(g);
    if (b == 1) return treewidth_at_most_1(g);
    if (b == 2) return treewidth_at_most_2(g);
    if (g.n <= 14) return brute_treewidth(g) <= b;
    if (checked) {
        *checked = false;
        return true;
    }
    throw ValidationError("treewidth_at_most: b >= 3 needs |V| <= 14");
}

// ---------------------------------------------------------------------------
// validate_almost_partition

inline Report validate_almost_partition(const Multigraph& g, const AlmostPartition& ap, int b,
                                        double w, double q) {
    Report rep;
    std::vector<char> inloss(g.n, 0);
    bool loss_ok = true;
    for (int v : ap.loss) {
        if (v < 0 || v >= g.n || inloss[v]) loss_ok = false;
        else inloss[v] = 1;
    }
    rep.add("loss set well-formed", loss_ok);

    bool disj_cover = true;
    std::vector<int> part_of(g.n, -1);
    for (int i = 0; i < static_cast<int>(ap.parts.size()); ++i)
        for (int v : ap.parts[i]) {
            if (v < 0 || v >= g.n || inloss[v] || part_of[v] != -1) disj_cover = false;
            else part_of[v] = i;
        }
    for (int v = 0; v < g.n; ++v)
        if (!inloss[v] && part_of[v] < 0) disj_cover = false;
    rep.add("parts disjoint and cover V(G) - X", disj_cover);

    rep.add("width <= " + std::to_string(w), static_cast<double>(ap.width()) <= w,
            "width = " + std::to_string(ap.width()));
    rep.add("loss <= " + std::to_string(q), static_cast<double>(ap.loss.size()) <= q,
            "loss = " + std::to_string(ap.loss.size()));

    if (disj_cover) {
        Multigraph qg(static_cast<int>(ap.parts.size()));
        std::set<std::pair<int, int>> seen;
        for (auto& e : g.edges) {
            if (inloss[e[0]] || inloss[e[1]]) continue;
            int a = part_of[e[0]], bq = part_of[e[1]];
            if (a == bq) continue;
            if (seen.insert({std::min(a, bq), std::max(a, bq)}).second)
                qg.add_edge(std::min(a, bq), std::max(a, bq));
        }
        bool checked = true;
        bool twok = treewidth_at_most(qg, b, &checked);
        if (!checked) rep.flag("quotient treewidth <= " + std::to_string(b), "quotient too large for brute check");
        else rep.add("quotient treewidth <= " + std::to_string(b), twok);
    } else {
        rep.add("quotient treewidth <= " + std::to_string(b), false, "partition invalid");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Brute minor test, guarded to 10 vertices each side. Searches for disjoint
// connected branch sets covering every edge of h.
namespace detail {

inline bool minor_search(const Multigraph& h, const Multigraph& g,
                         const std::vector<uint32_t>& gnb, std::vector<uint32_t>& sets, int hi,
                         uint32_t used) {
    if (hi == h.n) {
        for (auto& e : h.edges) {
            if (e[0] == e[1]) continue;
            bool found = false;
            uint32_t a = sets[e[0]], b = sets[e[1]];
            for (uint32_t m = a; m && !found; m &= m - 1) {
                int v = __builtin_ctz(m);
                if (gnb[v] & b) found = true;
            }
            if (!found) return false;
        }
        return true;
    }
    // enumerate connected subsets of the unused vertices for branch set hi
    std::function<bool(uint32_t, uint32_t)> grow = [&](uint32_t cur, uint32_t cand) -> bool {
        sets[hi] = cur;
        if (minor_search(h, g, gnb, sets, hi + 1, used | cur)) return true;
        // extend cur by one candidate at a time; candidates are neighbors of cur
        uint32_t ext = cand;
        while (ext) {
            int v = __builtin_ctz(ext);
            ext &= ext - 1;
            uint32_t nc = cand & ~((1u << (v + 1)) - 1);  // avoid revisiting: only grow upward
            nc |= (gnb[v] & ~used & ~cur & ~(1u << v));
            nc &= ~cur;
            if (grow(cur | (1u << v), nc & ~(1u << v))) return true;
        }
        return false;
    };
    for (int s = 0; s < g.n; ++s) {
        if (used & (1u << s)) continue;
        uint32_t cand = gnb[s] & ~used & ~((1u << s));
        if (grow(1u << s, cand)) return true;
    }
    sets[hi] = 0;
    return false;
}

}  // namespace detail

inline bool is_minor(const Multigraph& h0, const Multigraph& g0) {
    if (h0.n > 10 || g0.n > 10) throw ValidationError("is_minor: size guard exceeded");
    Multigraph h = simplified(h0), g = simplified(g0);
    if (h.n == 0) return true;
    if (h.n > g.n) return false;
    std::vector<uint32_t> gnb(g.n, 0);
    for (auto& e : g.edges) {
        gnb[e[0]] |= 1u << e[1];
        gnb[e[1]] |= 1u << e[0];
    }
    std::vector<uint32_t> sets(h.n, 0);
    return detail::minor_search(h, g, gnb, sets, 0, 0);
}

// ---------------------------------------------------------------------------
// Plain-graph text format: "p <n> <m>", then m lines "e <u> <v>" (1-indexed).

inline void write_graph(std::ostream& os, const Multigraph& g) {
    os << "p " << g.n << " " << g.num_edges() << "\n";
    for (auto& e : g.edges) os << "e " << e[0] + 1 << " " << e[1] + 1 << "\n";
}

inline Multigraph parse_graph(std::istream& is) {
    std::string tok;
    if (!(is >> tok) || tok != "p") throw ValidationError("parse_graph: expected 'p' header");
    int n, m;
    if (!(is >> n >> m) || n < 0 || m < 0) throw ValidationError("parse_graph: bad header");
    Multigraph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> tok >> u >> v) || tok != "e")
            throw ValidationError("parse_graph: bad edge line " + std::to_string(i + 1));
        if (u < 1 || u > n || v < 1 || v > n)
            throw ValidationError("parse_graph: endpoint out of range on line " +
                                  std::to_string(i + 1));
        g.add_edge(u - 1, v - 1);
    }
    return g;
}

// Partition format: one line per part (space-separated 1-indexed ids), loss
// set on a line prefixed "X".
inline void write_almost_partition(std::ostream& os, const AlmostPartition& ap) {
    if (!ap.loss.empty()) {
        os << "X";
        for (int v : ap.loss) os << " " << v + 1;
        os << "\n";
    }
    for (const auto& part : ap.parts) {
        if (part.empty()) continue;  // duplicate empty parts pruned at serialization
        bool first = true;
        for (int v : part) {
            os << (first ? "" : " ") << v + 1;
            first = false;
        }
        os << "\n";
    }
}

inline AlmostPartition parse_almost_partition(std::istream& is) {
    AlmostPartition ap;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        std::vector<int> verts;
        auto push = [&](const std::string& s) {
            verts.push_back(std::stoi(s) - 1);
        };
        bool is_loss = (first == "X");
        if (!is_loss) push(first);
        std::string tok;
        while (ls >> tok) push(tok);
        if (is_loss) ap.loss = verts;
        else ap.parts.push_back(verts);
    }
    return ap;
}

}  // namespace decomp

#endif

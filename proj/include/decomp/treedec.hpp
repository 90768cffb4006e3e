#ifndef DECOMP_TREEDEC_HPP
#define DECOMP_TREEDEC_HPP

// Rooted tree-decompositions: validation, induced sub-decompositions, splits
// via weighted tree deletions, layering separation, and the reattachment
// pipeline (concentrated_on_star, td_reduced).

#include "core.hpp"

namespace decomp {

struct RootedTreeDecomposition {
    Multigraph g;                     // host graph
    int root = 0;
    std::vector<int> parent;          // parent[root] == -1
    std::vector<std::vector<int>> bags;

    int num_nodes() const { return static_cast<int>(parent.size()); }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> ch(num_nodes());
        for (int t = 0; t < num_nodes(); ++t)
            if (parent[t] >= 0) ch[parent[t]].push_back(t);
        return ch;
    }
    std::vector<int> depth() const {
        std::vector<int> d(num_nodes(), -1);
        std::vector<int> order = top_down_order();
        for (int t : order) d[t] = parent[t] < 0 ? 0 : d[parent[t]] + 1;
        return d;
    }
    std::vector<int> top_down_order() const {
        std::vector<int> order;
        order.reserve(num_nodes());
        auto ch = children();
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            order.push_back(t);
            for (int c : ch[t]) stack.push_back(c);
        }
        return order;
    }

    // parent-adhesion K_t = J_t ∩ J_{p(t)}; empty at the root
    std::vector<int> parent_adhesion(int t) const {
        if (t == root || parent[t] < 0) return {};
        std::vector<int> a = sorted_unique(bags[t]);
        std::vector<int> b = sorted_unique(bags[parent[t]]);
        std::vector<int> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }
    // reduced bag J_t^- = J_t \ K_t
    std::vector<int> reduced_bag(int t) const {
        std::vector<int> a = sorted_unique(bags[t]);
        std::vector<int> k = parent_adhesion(t);
        std::vector<int> out;
        std::set_difference(a.begin(), a.end(), k.begin(), k.end(), std::back_inserter(out));
        return out;
    }
    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(sorted_unique(b).size()) - 1);
        return w;
    }
    int adhesion() const {
        int a = 0;
        for (int t = 0; t < num_nodes(); ++t)
            a = std::max(a, static_cast<int>(parent_adhesion(t).size()));
        return a;
    }
};

inline Report validate_rtd(const RootedTreeDecomposition& v) {
    Report rep;
    int nt = v.num_nodes();
    bool tree_ok = nt > 0 && v.root >= 0 && v.root < nt && v.parent[v.root] == -1;
    int rooted = 0;
    for (int t = 0; t < nt && tree_ok; ++t) {
        if (v.parent[t] == -1) ++rooted;
        else if (v.parent[t] < 0 || v.parent[t] >= nt) tree_ok = false;
    }
    tree_ok = tree_ok && rooted == 1 && static_cast<int>(v.top_down_order().size()) == nt;
    rep.add("tree well-formed and rooted", tree_ok);
    if (!tree_ok) return rep;

    // per-vertex bag sets induce nonempty subtrees
    std::vector<std::vector<int>> nodes_of(v.g.n);
    for (int t = 0; t < nt; ++t)
        for (int x : sorted_unique(v.bags[t])) {
            if (x < 0 || x >= v.g.n) {
                rep.add("bags reference host vertices", false, "node " + std::to_string(t));
                return rep;
            }
            nodes_of[x].push_back(t);
        }
    rep.add("bags reference host vertices", true);
    auto depth = v.depth();
    bool subtree_ok = true;
    std::string bad;
    for (int x = 0; x < v.g.n && subtree_ok; ++x) {
        if (nodes_of[x].empty()) {
            subtree_ok = false;
            bad = "vertex " + std::to_string(x) + " in no bag";
            break;
        }
        // connected iff every node except the shallowest has its parent in the set
        std::vector<char> in(nt, 0);
        for (int t : nodes_of[x]) in[t] = 1;
        int top = nodes_of[x][0];
        for (int t : nodes_of[x])
            if (depth[t] < depth[top]) top = t;
        for (int t : nodes_of[x])
            if (t != top && (v.parent[t] < 0 || !in[v.parent[t]])) {
                subtree_ok = false;
                bad = "vertex " + std::to_string(x) + " bags disconnected at node " +
                      std::to_string(t);
            }
    }
    rep.add("each vertex's bags form a nonempty subtree", subtree_ok, bad);

    bool edges_ok = true;
    std::string bad_edge;
    for (int e = 0; e < v.g.num_edges() && edges_ok; ++e) {
        int a = v.g.edges[e][0], b = v.g.edges[e][1];
        bool covered = false;
        for (int t : nodes_of[a]) {
            for (int x : v.bags[t])
                if (x == b) {
                    covered = true;
                    break;
                }
            if (covered) break;
        }
        if (!covered) {
            edges_ok = false;
            bad_edge = "edge " + std::to_string(e);
        }
    }
    rep.add("every edge inside some bag", edges_ok, bad_edge);
    rep.add("width", true, std::to_string(v.width()));
    rep.add("adhesion", true, std::to_string(v.adhesion()));

    // reduced bags partition V(G)
    if (subtree_ok) {
        std::vector<int> owner(v.g.n, -1);
        bool part_ok = true;
        for (int t = 0; t < nt; ++t)
            for (int x : v.reduced_bag(t)) {
                if (owner[x] != -1) part_ok = false;
                owner[x] = t;
            }
        for (int x = 0; x < v.g.n; ++x)
            if (owner[x] < 0) part_ok = false;
        rep.add("reduced bags partition V(G)", part_ok);
    }
    return rep;
}

// Reduced torso H_t = (torso at t) - K_t, as a local graph with a remap.
// Torso edges: G[J_t] plus a clique on each neighbor adhesion.
struct LocalGraph {
    Multigraph g;
    std::vector<int> orig_of;
    std::vector<int> new_of;  // host id -> local id or -1
};

inline LocalGraph reduced_torso(const RootedTreeDecomposition& v, int t) {
    std::vector<int> jt_minus = v.reduced_bag(t);
    LocalGraph lg;
    lg.new_of.assign(v.g.n, -1);
    for (int x : jt_minus) {
        lg.new_of[x] = static_cast<int>(lg.orig_of.size());
        lg.orig_of.push_back(x);
    }
    lg.g = Multigraph(static_cast<int>(jt_minus.size()));
    std::set<std::pair<int, int>> seen;
    auto add = [&](int a, int b) {
        if (a == b) return;
        int u = lg.new_of[a], w = lg.new_of[b];
        if (u < 0 || w < 0) return;
        if (seen.insert({std::min(u, w), std::max(u, w)}).second)
            lg.g.add_edge(std::min(u, w), std::max(u, w));
    };
    std::vector<char> injt(v.g.n, 0);
    for (int x : v.bags[t]) injt[x] = 1;
    for (auto& e : v.g.edges)
        if (injt[e[0]] && injt[e[1]]) add(e[0], e[1]);
    auto ch = v.children();
    auto clique_on = [&](const std::vector<int>& s) {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) add(s[i], s[j]);
    };
    for (int c : ch[t]) clique_on(v.parent_adhesion(c));
    return lg;
}

// ---------------------------------------------------------------------------
// Induced sub-decomposition V[T'].

struct InducedRtd {
    RootedTreeDecomposition rtd;
    std::vector<int> node_orig;    // new node -> old node
    std::vector<int> vertex_orig;  // new vertex -> old vertex
    std::vector<int> vertex_new;   // old vertex -> new vertex or -1
};

inline InducedRtd induced_decomposition(const RootedTreeDecomposition& v,
                                        const std::vector<int>& subtree) {
    int nt = v.num_nodes();
    std::vector<char> in(nt, 0);
    for (int t : subtree) {
        if (t < 0 || t >= nt) throw ValidationError("induced_decomposition: node out of range");
        in[t] = 1;
    }
    // connectivity in T and the induced root
    auto depth = v.depth();
    int r2 = -1;
    for (int t : subtree)
        if (r2 < 0 || depth[t] < depth[r2]) r2 = t;
    if (r2 < 0) throw ValidationError("induced_decomposition: empty subtree");
    for (int t : subtree)
        if (t != r2 && (v.parent[t] < 0 || !in[v.parent[t]]))
            throw ValidationError("induced_decomposition: subtree not connected in T");

    std::vector<int> kroot = v.parent_adhesion(r2);
    std::vector<char> kmask(v.g.n, 0);
    for (int x : kroot) kmask[x] = 1;

    // G' = G[union of reduced bags over T']
    std::vector<int> verts;
    for (int t : subtree)
        for (int x : v.reduced_bag(t)) verts.push_back(x);
    verts = sorted_unique(verts);
    InducedSubgraph sub = induced_subgraph(v.g, verts);

    InducedRtd out;
    out.rtd.g = sub.g;
    out.vertex_orig = sub.orig_of;
    out.vertex_new = sub.new_of;
    std::vector<int> node_new(nt, -1);
    for (int t : subtree) {
        node_new[t] = static_cast<int>(out.node_orig.size());
        out.node_orig.push_back(t);
    }
    out.rtd.parent.assign(out.node_orig.size(), -1);
    out.rtd.bags.assign(out.node_orig.size(), {});
    out.rtd.root = node_new[r2];
    for (int t : subtree) {
        if (t != r2) out.rtd.parent[node_new[t]] = node_new[v.parent[t]];
        for (int x : v.bags[t])
            if (!kmask[x] && out.vertex_new[x] >= 0)
                out.rtd.bags[node_new[t]].push_back(out.vertex_new[x]);
        out.rtd.bags[node_new[t]] = sorted_unique(out.rtd.bags[node_new[t]]);
    }
    Report rep = validate_rtd(out.rtd);
    if (!rep.ok()) throw ValidationError("induced_decomposition: result invalid:\n" + rep.summary());
    // rtdSub clause 4: reduced bags unchanged
    for (int t : subtree) {
        std::vector<int> a = v.reduced_bag(t);
        std::vector<int> b = out.rtd.reduced_bag(node_new[t]);
        for (int& x : b) x = out.vertex_orig[x];
        std::sort(b.begin(), b.end());
        if (a != b) throw ValidationError("induced_decomposition: reduced bag changed (bug)");
    }
    return out;
}

// ---------------------------------------------------------------------------
// tree_deletions: greedy leaves-up cut whenever the residual subtree weight
// exceeds n/(q+1). Each cut retires more than n/(q+1) weight, so |Z'| <= q.

inline std::vector<int> tree_deletions(const std::vector<int>& parent, int root,
                                       const std::vector<double>& weight, double n, int q) {
    int nt = static_cast<int>(parent.size());
    std::vector<int> order;  // top-down
    {
        std::vector<std::vector<int>> ch(nt);
        for (int t = 0; t < nt; ++t)
            if (parent[t] >= 0) ch[parent[t]].push_back(t);
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            order.push_back(t);
            for (int c : ch[t]) stack.push_back(c);
        }
    }
    double cap = n / (q + 1);
    std::vector<double> residual(nt, 0.0);
    std::vector<int> z;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        residual[t] += weight[t];
        if (residual[t] > cap) {
            z.push_back(t);
            residual[t] = 0.0;
        }
        if (parent[t] >= 0) residual[parent[t]] += residual[t];
    }
    if (static_cast<int>(z.size()) > q)
        throw ValidationError("tree_deletions: cut more than q nodes (bug)");
    std::sort(z.begin(), z.end());
    return z;
}

// ---------------------------------------------------------------------------
// Splits.

struct Split {
    std::vector<int> z;                     // the rooted set Z, root included
    std::vector<int> owner;                 // tree node -> index into z
    std::vector<std::vector<int>> piece_nodes;  // per z: nodes of T_z (top-down)
};

inline Split make_split(const RootedTreeDecomposition& v, std::vector<int> z) {
    z = sorted_unique(z);
    if (!std::binary_search(z.begin(), z.end(), v.root)) z.insert(z.begin(), v.root);
    z = sorted_unique(z);
    Split s;
    s.z = z;
    std::vector<int> zidx(v.num_nodes(), -1);
    for (int i = 0; i < static_cast<int>(z.size()); ++i) zidx[z[i]] = i;
    s.owner.assign(v.num_nodes(), -1);
    s.piece_nodes.assign(z.size(), {});
    for (int t : v.top_down_order()) {
        s.owner[t] = zidx[t] >= 0 ? zidx[t] : s.owner[v.parent[t]];
        s.piece_nodes[s.owner[t]].push_back(t);
    }
    return s;
}

// V-weight bookkeeping: weight of a node is |J_t^-|.
inline std::vector<double> reduced_bag_weights(const RootedTreeDecomposition& v) {
    std::vector<double> w(v.num_nodes());
    for (int t = 0; t < v.num_nodes(); ++t) w[t] = static_cast<double>(v.reduced_bag(t).size());
    return w;
}

inline double split_near_weight(const RootedTreeDecomposition& v, const Split& s) {
    auto w = reduced_bag_weights(v);
    // near-weight of a piece: max weight of a full component of T_z - z,
    // computed as the subtree weight under each T_z-child of z
    double best = 0.0;
    std::vector<double> acc(v.num_nodes(), 0.0);
    auto order = v.top_down_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        acc[t] += w[t];
        int p = v.parent[t];
        if (p >= 0 && s.owner[p] == s.owner[t]) {
            if (p == s.z[s.owner[t]]) best = std::max(best, acc[t]);
            else acc[p] += acc[t];
        }
    }
    return best;
}

inline Report validate_split(const RootedTreeDecomposition& v, const Split& s, double size_bound,
                             double near_weight_bound) {
    Report rep;
    std::size_t total = 0;
    for (const auto& p : s.piece_nodes) total += p.size();
    rep.add("split: subtrees partition V(T)", total == static_cast<std::size_t>(v.num_nodes()));
    rep.add("split: size <= " + std::to_string(size_bound),
            static_cast<double>(s.z.size()) <= size_bound, "size " + std::to_string(s.z.size()));
    double nw = split_near_weight(v, s);
    rep.add("split: near-weight <= " + std::to_string(near_weight_bound), nw <= near_weight_bound,
            "near-weight " + std::to_string(nw));
    // piece vertex sets partition V(G)
    std::vector<int> piece_of(v.g.n, -1);
    bool vp_ok = true;
    for (int i = 0; i < static_cast<int>(s.z.size()); ++i)
        for (int t : s.piece_nodes[i])
            for (int x : v.reduced_bag(t)) {
                if (piece_of[x] != -1) vp_ok = false;
                piece_of[x] = i;
            }
    for (int x = 0; x < v.g.n; ++x)
        if (piece_of[x] < 0) vp_ok = false;
    rep.add("split: piece graphs partition V(G)", vp_ok);
    // cross edges meet the adhesions K_z ∪ K_z'
    bool edges_ok = vp_ok;
    if (vp_ok) {
        std::vector<std::vector<char>> inadh(s.z.size(), std::vector<char>(v.g.n, 0));
        for (int i = 0; i < static_cast<int>(s.z.size()); ++i)
            for (int x : v.parent_adhesion(s.z[i])) inadh[i][x] = 1;
        for (auto& e : v.g.edges) {
            int a = piece_of[e[0]], b = piece_of[e[1]];
            if (a == b) continue;
            if (!(inadh[a][e[0]] || inadh[a][e[1]] || inadh[b][e[0]] || inadh[b][e[1]]))
                edges_ok = false;
        }
    }
    rep.add("split: cross edges meet the adhesions", edges_ok);
    return rep;
}

// find_split: weight nodes with |J_t^-|, run tree_deletions with q = floor(n/d),
// add the root.
inline Split find_split(const RootedTreeDecomposition& v, double d) {
    if (d <= 0) throw ValidationError("find_split: d must be positive");
    double n = static_cast<double>(v.g.n);
    int q = static_cast<int>(n / d);
    std::vector<int> z =
        tree_deletions(v.parent, v.root, reduced_bag_weights(v), n, q);
    Split s = make_split(v, z);
    Report rep = validate_split(v, s, n / d + 1.0, d);
    if (!rep.ok()) throw ValidationError("find_split: bounds violated (bug):\n" + rep.summary());
    return s;
}

// ---------------------------------------------------------------------------
// layering_separation: X is the lightest residue
// class of layers mod floor(d/b)+1.

inline std::vector<int> layering_separation(const Multigraph& g, const Layering& l,
                                            const std::vector<int>& s, int b, double d) {
    std::vector<char> ins(g.n, 0);
    for (int v : s) ins[v] = 1;
    for (int i = 0; i < static_cast<int>(l.layers.size()); ++i) {
        int cnt = 0;
        for (int v : l.layers[i])
            if (ins[v]) ++cnt;
        if (cnt > b)
            throw ValidationError("layering_separation: layer " + std::to_string(i) +
                                  " has " + std::to_string(cnt) + " > b vertices of S");
    }
    if (s.empty() || b == 0) return {};
    int q = static_cast<int>(d / b) + 1;
    int m = static_cast<int>(l.layers.size());
    std::vector<std::size_t> cls(q, 0);
    for (int i = 0; i < m; ++i) cls[i % q] += l.layers[i].size();
    int best = 0;
    for (int i = 1; i < q; ++i)
        if (cls[i] < cls[best]) best = i;
    std::vector<int> x;
    for (int i = best; i < m; i += q)
        for (int v : l.layers[i]) x.push_back(v);
    return sorted_unique(x);
}

// ---------------------------------------------------------------------------
// tw_split (Cor. twSplit): S = union of bags over tree_deletions nodes.

inline std::vector<int> tw_split(const Multigraph& g, const RootedTreeDecomposition& td, double d,
                                 const std::vector<double>& vertex_weight) {
    Report rep = validate_rtd(td);
    if (!rep.ok()) throw ValidationError("tw_split: invalid tree-decomposition:\n" + rep.summary());
    double n = 0;
    for (double w : vertex_weight) n += w;
    std::vector<double> node_w(td.num_nodes(), 0.0);
    for (int t = 0; t < td.num_nodes(); ++t)
        for (int x : td.reduced_bag(t)) node_w[t] += vertex_weight[x];
    int q = static_cast<int>(n / d);
    std::vector<int> z = tree_deletions(td.parent, td.root, node_w, n, q);
    std::vector<int> svec;
    for (int t : z)
        for (int x : td.bags[t]) svec.push_back(x);
    svec = sorted_unique(svec);
    (void)g;
    return svec;
}

// ---------------------------------------------------------------------------
// NodeDecomposition: a (b,m,w,c,q)-decomposition at a node. The almost-
// partition lives in host vertex ids (a subset of the reduced bag). The
// clique family K is queried only on the listed child-adhesion sets.

struct NodeDecomposition {
    int node = -1;
    AlmostPartition ap;                        // of the reduced torso, host ids
    std::vector<std::vector<int>> adhesions;   // the listed members of K
    // witnesses: quotient-clique (sorted part indices) -> S_Q, host ids
    std::map<std::vector<int>, std::vector<int>> witness;
    int m = 0;
};

inline Report validate_node_decomposition(const RootedTreeDecomposition& v,
                                          const NodeDecomposition& nd, int b, int m, double w,
                                          double c, double q) {
    Report rep;
    LocalGraph torso = reduced_torso(v, nd.node);
    AlmostPartition local;
    bool ids_ok = true;
    for (int x : nd.ap.loss) {
        if (x < 0 || x >= v.g.n || torso.new_of[x] < 0) ids_ok = false;
        else local.loss.push_back(torso.new_of[x]);
    }
    for (const auto& part : nd.ap.parts) {
        local.parts.emplace_back();
        for (int x : part) {
            if (x < 0 || x >= v.g.n || torso.new_of[x] < 0) ids_ok = false;
            else local.parts.back().push_back(torso.new_of[x]);
        }
    }
    rep.add("node decomposition: vertices lie in the reduced bag", ids_ok);
    if (!ids_ok) return rep;
    double jn = static_cast<double>(torso.orig_of.size());
    Report sub = validate_almost_partition(torso.g, local, b, w, c * jn / w + q);
    for (auto& line : sub.lines) rep.lines.push_back(line);
    rep.add("node decomposition: m bound on witnesses declared",
            nd.m <= m, "m = " + std::to_string(nd.m));
    for (const auto& [clq, s] : nd.witness)
        if (static_cast<int>(s.size()) > m)
            rep.add("witness size <= m", false,
                    "clique with " + std::to_string(clq.size()) + " parts has witness " +
                        std::to_string(s.size()));
    return rep;
}

// ---------------------------------------------------------------------------
// concentrated_on_star: reattach the split pieces around the root torso.
//
// Split the decomposition at the root's children, classify the child pieces
// by the quotient clique their adhesion attaches to, delete the witnesses of
// heavy cliques, attach light pieces as new parts and merge (b+1)-attaching
// pieces into the first-removed part of their clique under a min-degree
// elimination of the quotient.

struct StarResult {
    AlmostPartition ap;  // host ids
    double loss_bound = 0.0;
};

inline StarResult concentrated_on_star(const RootedTreeDecomposition& v,
                                       const NodeDecomposition& nd, int b, int m, double c,
                                       double q, double d) {
    if (nd.node != v.root)
        throw ValidationError("concentrated_on_star: decomposition must sit at the root");
    const Multigraph& g = v.g;
    double n = static_cast<double>(g.n);

    // piece vertex sets V_s per child (split at {root} ∪ children)
    auto ch = v.children();
    std::vector<int> zset{v.root};
    for (int s : ch[v.root]) zset.push_back(s);
    Split sp = make_split(v, zset);
    // sp.z is sorted; locate the root piece
    std::vector<int> piece_of(g.n, -1);
    for (int i = 0; i < static_cast<int>(sp.z.size()); ++i)
        for (int t : sp.piece_nodes[i])
            for (int x : v.reduced_bag(t)) piece_of[x] = i;
    int root_piece = -1;
    for (int i = 0; i < static_cast<int>(sp.z.size()); ++i)
        if (sp.z[i] == v.root) root_piece = i;

    // X_r and P_r from nd (host ids)
    std::vector<char> in_xr(g.n, 0);
    for (int x : nd.ap.loss) in_xr[x] = 1;
    const Partition& pr = nd.ap.parts;
    std::vector<int> part_of(g.n, -1);
    for (int i = 0; i < static_cast<int>(pr.size()); ++i)
        for (int x : pr[i]) part_of[x] = i;

    auto lookup_witness = [&](const std::vector<int>& clique) -> const std::vector<int>* {
        auto it = nd.witness.find(clique);
        return it == nd.witness.end() ? nullptr : &it->second;
    };

    // classify children by Q_s (parts meeting K_s)
    struct ChildInfo {
        int z_index;
        std::vector<int> ks;
        std::vector<int> q_parts;  // sorted part indices
    };
    std::vector<ChildInfo> childs;
    std::map<std::vector<int>, std::vector<int>> by_clique;  // Q -> child indices
    for (int i = 0; i < static_cast<int>(sp.z.size()); ++i) {
        if (i == root_piece) continue;
        ChildInfo ci;
        ci.z_index = i;
        ci.ks = v.parent_adhesion(sp.z[i]);
        std::vector<int> qs;
        for (int x : ci.ks)
            if (part_of[x] >= 0) qs.push_back(part_of[x]);
        ci.q_parts = sorted_unique(qs);
        by_clique[ci.q_parts].push_back(static_cast<int>(childs.size()));
        childs.push_back(std::move(ci));
    }
    std::vector<std::size_t> piece_size(sp.z.size(), 0);
    for (int x = 0; x < g.n; ++x) ++piece_size[piece_of[x]];

    // heavy cliques: n_Q >= d/2; delete their witnesses
    std::vector<int> extra_loss;
    std::set<std::vector<int>> heavy;
    for (auto& [clq, kids] : by_clique) {
        double nq = 0;
        for (int k : kids) nq += static_cast<double>(piece_size[childs[k].z_index]);
        if (nq >= d / 2.0) {
            heavy.insert(clq);
            const std::vector<int>* wit = lookup_witness(clq);
            if (!wit)
                throw ValidationError(
                    "concentrated_on_star: witness missing for a needed clique");
            for (int x : *wit) extra_loss.push_back(x);
        }
    }
    std::vector<int> X = nd.ap.loss;
    for (int x : extra_loss) X.push_back(x);
    X = sorted_unique(X);
    std::vector<char> in_x(g.n, 0);
    for (int x : X) in_x[x] = 1;

    // P_r' = parts minus X
    Partition prx(pr.size());
    for (int i = 0; i < static_cast<int>(pr.size()); ++i)
        for (int x : pr[i])
            if (!in_x[x]) prx[i].push_back(x);

    // quotient of (H_r - X) / P_r' : adjacency from host edges inside the
    // reduced bag plus the child-adhesion torso cliques
    int np = static_cast<int>(prx.size());
    std::vector<std::set<int>> qadj(np);
    std::vector<int> partx_of(g.n, -1);
    for (int i = 0; i < np; ++i)
        for (int x : prx[i]) partx_of[x] = i;
    for (auto& e : g.edges) {
        int a = e[0], bb = e[1];
        if (piece_of[a] != root_piece || piece_of[bb] != root_piece) continue;
        int pa = partx_of[a], pb = partx_of[bb];
        if (pa < 0 || pb < 0 || pa == pb) continue;
        qadj[pa].insert(pb);
        qadj[pb].insert(pa);
    }
    for (const auto& ci : childs) {
        std::vector<int> qs;
        for (int x : ci.ks)
            if (partx_of[x] >= 0) qs.push_back(partx_of[x]);
        qs = sorted_unique(qs);
        for (std::size_t i = 0; i < qs.size(); ++i)
            for (std::size_t j = i + 1; j < qs.size(); ++j) {
                qadj[qs[i]].insert(qs[j]);
                qadj[qs[j]].insert(qs[i]);
            }
    }

    // min-degree elimination (ties lowest part index); removal order realizes
    // the reverse of the degeneracy order
    std::vector<int> removal_pos(np, -1);
    {
        std::vector<std::set<int>> adj = qadj;
        std::vector<char> gone(np, 0);
        for (int step = 0; step < np; ++step) {
            int best = -1;
            for (int i = 0; i < np; ++i)
                if (!gone[i] && (best < 0 || adj[i].size() < adj[best].size())) best = i;
            removal_pos[best] = step;
            gone[best] = 1;
            for (int u : adj[best]) adj[u].erase(best);
            adj[best].clear();
        }
    }

    // classify children by |Q_s'| (post-deletion attachment count)
    std::vector<std::vector<int>> merged_into(np);   // part -> child indices (W set)
    std::vector<int> standalone;                     // child indices (U set)
    for (int k = 0; k < static_cast<int>(childs.size()); ++k) {
        std::vector<int> qs;
        for (int x : childs[k].ks)
            if (partx_of[x] >= 0) qs.push_back(partx_of[x]);
        qs = sorted_unique(qs);
        if (static_cast<int>(qs.size()) <= b) {
            standalone.push_back(k);
        } else {
            // P_s: the member of Q_s' removed first in the elimination
            int ps = qs[0];
            for (int p : qs)
                if (removal_pos[p] < removal_pos[ps]) ps = p;
            merged_into[ps].push_back(k);
        }
    }

    StarResult out;
    out.ap.loss = X;
    for (int i = 0; i < np; ++i) {
        std::vector<int> part = prx[i];
        for (int k : merged_into[i])
            for (int x = 0; x < g.n; ++x)
                if (piece_of[x] == childs[k].z_index) part.push_back(x);
        out.ap.parts.push_back(sorted_unique(part));
    }
    for (int k : standalone) {
        std::vector<int> part;
        for (int x = 0; x < g.n; ++x)
            if (piece_of[x] == childs[k].z_index) part.push_back(x);
        out.ap.parts.push_back(part);
    }
    out.loss_bound = 2.0 * (c + m) * n / d + q;
    return out;
}

// ---------------------------------------------------------------------------
// td_reduced: split at d/2, delete split adhesions, run
// concentrated_on_star per piece, take the disjoint union.

struct TdReducedResult {
    AlmostPartition ap;
    double loss_bound = 0.0;   // c' n / d + q'
    Report report;
};

inline TdReducedResult td_reduced(const Multigraph& g, const RootedTreeDecomposition& v,
                                  const std::vector<NodeDecomposition>& nds, int b, int m,
                                  double c, double q, int j, double d) {
    if (v.adhesion() > j) throw ValidationError("td_reduced: adhesion exceeds j");
    double n = static_cast<double>(g.n);
    Split sp = find_split(v, d / 2.0);

    std::vector<int> X;
    for (int z : sp.z)
        for (int x : v.parent_adhesion(z)) X.push_back(x);

    Partition parts;
    for (int i = 0; i < static_cast<int>(sp.z.size()); ++i) {
        InducedRtd piece = induced_decomposition(v, sp.piece_nodes[i]);
        // locate the node decomposition for this piece root and remap it
        const NodeDecomposition* src = nullptr;
        for (const auto& nd : nds)
            if (nd.node == sp.z[i]) src = &nd;
        if (!src) throw ValidationError("td_reduced: missing node decomposition for node " +
                                        std::to_string(sp.z[i]));
        NodeDecomposition local;
        local.node = piece.rtd.root;
        local.m = src->m;
        for (int x : src->ap.loss)
            if (piece.vertex_new[x] >= 0) local.ap.loss.push_back(piece.vertex_new[x]);
        for (const auto& part : src->ap.parts) {
            local.ap.parts.emplace_back();
            for (int x : part)
                if (piece.vertex_new[x] >= 0) local.ap.parts.back().push_back(piece.vertex_new[x]);
        }
        for (const auto& [clq, wit] : src->witness) {
            std::vector<int> w2;
            for (int x : wit)
                if (piece.vertex_new[x] >= 0) w2.push_back(piece.vertex_new[x]);
            local.witness[clq] = w2;
        }
        StarResult star = concentrated_on_star(piece.rtd, local, b, m, c, q, d);
        for (int x : star.ap.loss) X.push_back(piece.vertex_orig[x]);
        for (auto& part : star.ap.parts) {
            std::vector<int> hp;
            for (int x : part) hp.push_back(piece.vertex_orig[x]);
            parts.push_back(sorted_unique(hp));
        }
    }
    X = sorted_unique(X);
    std::vector<char> in_x(g.n, 0);
    for (int x : X) in_x[x] = 1;
    TdReducedResult out;
    out.ap.loss = X;
    for (auto& part : parts) {
        std::vector<int> p2;
        for (int x : part)
            if (!in_x[x]) p2.push_back(x);
        out.ap.parts.push_back(p2);
    }
    double cprime = 2.0 * (q + c + m + j);
    out.loss_bound = cprime * n / d + q;
    out.report = validate_almost_partition(g, out.ap, b, d, out.loss_bound);
    if (static_cast<double>(out.ap.loss.size()) > out.loss_bound)
        out.report.flag("loss exceeds the proof's explicit constants",
                        "loss " + std::to_string(out.ap.loss.size()) + " > " +
                            std::to_string(out.loss_bound));
    return out;
}

// ---------------------------------------------------------------------------
// Tree-decompositions from elimination orderings: min-degree and min-fill
// heuristics with a budgeted exact branch-and-bound fallback. Used to split
// the small radius-2 quotients in the vortex pipeline.

namespace detail {

inline std::vector<std::set<int>> simple_adjacency(const Multigraph& g) {
    std::vector<std::set<int>> adj(g.n);
    for (auto& e : g.edges)
        if (e[0] != e[1]) {
            adj[e[0]].insert(e[1]);
            adj[e[1]].insert(e[0]);
        }
    return adj;
}

inline std::vector<int> elimination_order(const Multigraph& g, bool min_fill) {
    auto adj = simple_adjacency(g);
    std::vector<char> gone(g.n, 0);
    std::vector<int> order;
    for (int step = 0; step < g.n; ++step) {
        int best = -1;
        long best_score = 0;
        for (int v = 0; v < g.n; ++v) {
            if (gone[v]) continue;
            long score;
            if (!min_fill) {
                score = static_cast<long>(adj[v].size());
            } else {
                score = 0;
                std::vector<int> ns(adj[v].begin(), adj[v].end());
                for (std::size_t i = 0; i < ns.size(); ++i)
                    for (std::size_t j = i + 1; j < ns.size(); ++j)
                        if (!adj[ns[i]].count(ns[j])) ++score;
            }
            if (best < 0 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        order.push_back(best);
        gone[best] = 1;
        std::vector<int> ns(adj[best].begin(), adj[best].end());
        for (std::size_t i = 0; i < ns.size(); ++i)
            for (std::size_t j = i + 1; j < ns.size(); ++j) {
                adj[ns[i]].insert(ns[j]);
                adj[ns[j]].insert(ns[i]);
            }
        for (int u : ns) adj[u].erase(best);
        adj[best].clear();
    }
    return order;
}

}  // namespace detail

// Bags are {v} ∪ (later neighbors in the fill graph); the parent of v's node
// is the node of its earliest later neighbor.
inline RootedTreeDecomposition td_from_elimination(const Multigraph& g,
                                                   const std::vector<int>& order) {
    auto adj = detail::simple_adjacency(g);
    int n = g.n;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::vector<int>> higher(n);
    {
        auto work = adj;
        for (int i = 0; i < n; ++i) {
            int v = order[i];
            std::vector<int> ns;
            for (int u : work[v])
                if (pos[u] > i) ns.push_back(u);
            higher[v] = ns;
            for (std::size_t a = 0; a < ns.size(); ++a)
                for (std::size_t b = a + 1; b < ns.size(); ++b) {
                    work[ns[a]].insert(ns[b]);
                    work[ns[b]].insert(ns[a]);
                }
        }
    }
    RootedTreeDecomposition td;
    td.g = g;
    if (n == 0) {
        td.parent = {-1};
        td.bags = {{}};
        td.root = 0;
        return td;
    }
    td.parent.assign(n, -1);
    td.bags.assign(n, {});
    td.root = pos.empty() ? 0 : order[n - 1];
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        td.bags[v] = higher[v];
        td.bags[v].push_back(v);
        td.bags[v] = sorted_unique(td.bags[v]);
        if (!higher[v].empty()) {
            int first = higher[v][0];
            for (int u : higher[v])
                if (pos[u] < pos[first]) first = u;
            td.parent[v] = first;
        } else if (v != order[n - 1]) {
            td.parent[v] = order[n - 1];  // disconnected piece hangs off the root
        }
    }
    td.root = order[n - 1];
    return td;
}

// Exact treewidth by branch-and-bound over elimination orders, with a node
// budget. Returns an order achieving the best width found.
struct ExactTwResult {
    int width = -1;
    std::vector<int> order;
    bool exact = true;
};

inline ExactTwResult exact_treewidth_order(const Multigraph& g, int upper_bound_hint,
                                           long node_budget = 2000000) {
    ExactTwResult res;
    auto adj0 = detail::simple_adjacency(g);
    int n = g.n;
    res.order.resize(n);
    std::vector<int> cur(n, -1);
    int best = upper_bound_hint;
    std::vector<int> best_order;
    long nodes = 0;
    std::function<void(std::vector<std::set<int>>&, std::vector<char>&, int, int,
                       std::vector<int>&)>
        rec = [&](std::vector<std::set<int>>& adj, std::vector<char>& gone, int depth, int width,
                  std::vector<int>& order) {
            if (nodes++ > node_budget) {
                res.exact = false;
                return;
            }
            if (width >= best) return;  // cannot improve
            if (depth == n) {
                best = width;
                best_order = order;
                return;
            }
            // candidates in min-degree order
            std::vector<std::pair<int, int>> cands;
            for (int v = 0; v < n; ++v)
                if (!gone[v]) cands.push_back({static_cast<int>(adj[v].size()), v});
            std::sort(cands.begin(), cands.end());
            for (auto [deg, v] : cands) {
                if (deg >= best) continue;
                std::vector<int> ns(adj[v].begin(), adj[v].end());
                std::vector<std::pair<int, int>> added;
                for (std::size_t a = 0; a < ns.size(); ++a)
                    for (std::size_t b = a + 1; b < ns.size(); ++b)
                        if (adj[ns[a]].insert(ns[b]).second) {
                            adj[ns[b]].insert(ns[a]);
                            added.push_back({ns[a], ns[b]});
                        }
                for (int u : ns) adj[u].erase(v);
                gone[v] = 1;
                order[depth] = v;
                rec(adj, gone, depth + 1, std::max(width, deg), order);
                gone[v] = 0;
                for (int u : ns) adj[u].insert(v);
                for (auto [a, b] : added) {
                    adj[a].erase(b);
                    adj[b].erase(a);
                }
                if (nodes > node_budget) return;
            }
        };
    std::vector<char> gone(n, 0);
    std::vector<int> order(n);
    rec(adj0, gone, 0, 0, order);
    if (best_order.empty()) {
        res.width = upper_bound_hint;
        res.exact = false;
        res.order = detail::elimination_order(g, false);
    } else {
        res.width = best;
        res.order = best_order;
    }
    return res;
}

// Min-degree, retry min-fill, exact fallback on small graphs when both
// heuristics exceed the target width.
struct HeuristicTd {
    RootedTreeDecomposition td;
    int width = 0;
    bool exact_used = false;
};

inline HeuristicTd heuristic_tree_decomposition(const Multigraph& g, int target_width = 6,
                                                int exact_limit = 30) {
    HeuristicTd best;
    {
        auto order = detail::elimination_order(g, false);
        best.td = td_from_elimination(g, order);
        best.width = best.td.width();
    }
    if (best.width > target_width) {
        auto order = detail::elimination_order(g, true);
        RootedTreeDecomposition td2 = td_from_elimination(g, order);
        if (td2.width() < best.width) {
            best.td = td2;
            best.width = td2.width();
        }
    }
    if (best.width > target_width && g.n <= exact_limit) {
        ExactTwResult ex = exact_treewidth_order(g, best.width);
        if (ex.width < best.width) {
            best.td = td_from_elimination(g, ex.order);
            best.width = best.td.width();
            best.exact_used = true;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// PACE-style tree-decomposition format:
//   s td <#bags> <width+1> <n>
//   b <id> <v...>
//   <a> <b>          (tree edges)
//   r <id>           (root)

inline void write_rtd(std::ostream& os, const RootedTreeDecomposition& v) {
    os << "s td " << v.num_nodes() << " " << v.width() + 1 << " " << v.g.n << "\n";
    for (int t = 0; t < v.num_nodes(); ++t) {
        os << "b " << t + 1;
        for (int x : v.bags[t]) os << " " << x + 1;
        os << "\n";
    }
    for (int t = 0; t < v.num_nodes(); ++t)
        if (v.parent[t] >= 0) os << v.parent[t] + 1 << " " << t + 1 << "\n";
    os << "r " << v.root + 1 << "\n";
}

inline RootedTreeDecomposition parse_rtd(std::istream& is, Multigraph host) {
    std::string tok;
    if (!(is >> tok) || tok != "s") throw ValidationError("parse_rtd: expected 's td' header");
    if (!(is >> tok) || tok != "td") throw ValidationError("parse_rtd: expected 's td' header");
    int nb, wp1, n;
    if (!(is >> nb >> wp1 >> n)) throw ValidationError("parse_rtd: bad header");
    if (n != host.n) throw ValidationError("parse_rtd: vertex count mismatch with host graph");
    RootedTreeDecomposition v;
    v.g = std::move(host);
    v.bags.assign(nb, {});
    v.parent.assign(nb, -1);
    std::vector<std::pair<int, int>> tedges;
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "b") {
            int id;
            if (!(ls >> id) || id < 1 || id > nb) throw ValidationError("parse_rtd: bad bag id");
            int x;
            while (ls >> x) v.bags[id - 1].push_back(x - 1);
        } else if (kind == "r") {
            int id;
            if (!(ls >> id) || id < 1 || id > nb) throw ValidationError("parse_rtd: bad root id");
            v.root = id - 1;
        } else {
            int a = std::stoi(kind), b;
            if (!(ls >> b)) throw ValidationError("parse_rtd: bad tree edge line");
            tedges.push_back({a - 1, b - 1});
        }
    }
    // orient edges away from the root
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : tedges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> stack{v.root};
    std::vector<char> seen(nb, 0);
    seen[v.root] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                v.parent[u] = t;
                stack.push_back(u);
            }
    }
    return v;
}

}  // namespace decomp

#endif

#pragma once

// Perfect matchings: a brute-force counter, Kasteleyn orientations, exact
// Pfaffians, and the planar counting built from them.

#include "holant/grid.hpp"

#include <unordered_map>

namespace holant {

struct WeightedEdge {
    int u = 0, v = 0;
    Scalar w{1};
};

// Weighted multigraph with an optional rotation system (edge ids, ccw).
struct PlanarGraph {
    int n = 0;
    std::vector<WeightedEdge> edges;
    std::vector<std::vector<int>> rotation;

    int add_edge(int u, int v, Scalar w = Scalar(1)) {
        edges.push_back({u, v, std::move(w)});
        return static_cast<int>(edges.size() - 1);
    }

    void check_edges() const {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& ed = edges[e];
            if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
                throw DomainError("graph: edge " + std::to_string(e) + " has an endpoint out of range");
            if (ed.w.is_zero()) throw DomainError("graph: edge " + std::to_string(e) + " has weight 0");
        }
    }

    // Rotation lists exactly the incident edges, and Euler's formula holds.
    void validate_embedding() const {
        check_edges();
        if (static_cast<int>(rotation.size()) != n) throw DomainError("graph: rotation system has the wrong number of vertices");
        std::vector<std::vector<int>> seen(edges.size());
        for (int v = 0; v < n; ++v)
            for (int e : rotation[static_cast<std::size_t>(v)]) {
                if (e < 0 || e >= static_cast<int>(edges.size()))
                    throw DomainError("graph: rotation of vertex " + std::to_string(v) + " names unknown edge " + std::to_string(e));
                seen[static_cast<std::size_t>(e)].push_back(v);
            }
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto ends = seen[e];
            std::sort(ends.begin(), ends.end());
            std::vector<int> want{edges[e].u, edges[e].v};
            std::sort(want.begin(), want.end());
            if (ends != want) throw DomainError("graph: edge " + std::to_string(e) + " is not listed at exactly its endpoints");
        }
        if (!Embedding{rotation}.is_planar()) throw DomainError("graph: rotation system is not a planar embedding");
    }
};

// ---------------------------------------------------------------- brute force

inline constexpr int kEnumerateMaxVertices = 24;

// Sum over perfect matchings of the product of edge weights, ignoring the
// embedding. Vertices in `covered` are treated as already matched.
inline Scalar enumerate_pm(const PlanarGraph& g, std::uint32_t covered = 0) {
    g.check_edges();
    if (g.n > kEnumerateMaxVertices) throw DomainError("enumerate_pm: more than " + std::to_string(kEnumerateMaxVertices) + " vertices");
    std::vector<std::vector<std::pair<int, const Scalar*>>> adj(static_cast<std::size_t>(g.n));
    for (const auto& e : g.edges)
        if (e.u != e.v) {
            adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, &e.w);
            adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, &e.w);
        }
    std::uint32_t full = (1u << g.n) - 1;
    if ((g.n - popcount(covered & full)) % 2) return Scalar();
    std::unordered_map<std::uint32_t, Scalar> memo;
    std::function<Scalar(std::uint32_t)> rec = [&](std::uint32_t used) -> Scalar {
        if (used == full) return Scalar(1);
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        int v = 0;
        while (used & (1u << v)) ++v;
        Scalar total;
        for (auto [w, wt] : adj[static_cast<std::size_t>(v)]) {
            if (used & (1u << w)) continue;
            Scalar sub = rec(used | (1u << v) | (1u << w));
            if (!sub.is_zero()) total += *wt * sub;
        }
        memo.emplace(used, total);
        return total;
    };
    return rec(covered & full);
}

// ---------------------------------------------------------------- Pfaffian

using SkewMatrix = std::vector<std::vector<Scalar>>;

// Exact elimination by congruences with unit triangular matrices, which keep
// the Pfaffian; a pivot swap flips its sign.
inline Scalar pfaffian(SkewMatrix m) {
    std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw DomainError("pfaffian: matrix is not square");
        if (!m[i][i].is_zero()) throw DomainError("pfaffian: nonzero diagonal entry");
        for (std::size_t j = 0; j < i; ++j)
            if (m[i][j] != -m[j][i]) throw DomainError("pfaffian: matrix is not skew-symmetric");
    }
    if (n % 2) return Scalar();
    Scalar pf(1);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t j = k + 1;
        while (j < n && m[k][j].is_zero()) ++j;
        if (j == n) return Scalar();
        if (j != k + 1) {
            std::swap(m[k + 1], m[j]);
            for (auto& row : m) std::swap(row[k + 1], row[j]);
            pf = -pf;
        }
        Scalar p = m[k][k + 1];
        pf *= p;
        Scalar pinv = p.inverse();
        // clear row/column k, then k+1, in the trailing block
        for (std::size_t i = k + 2; i < n; ++i) {
            Scalar tau = m[k][i] * pinv;      // col_i -= tau col_{k+1}
            Scalar sigma = m[k + 1][i] * pinv;  // col_i += sigma col_k  (m[k+1][k] = -p)
            if (tau.is_zero() && sigma.is_zero()) continue;
            for (std::size_t c = k; c < n; ++c) {
                Scalar d = -tau * m[k + 1][c] + sigma * m[k][c];
                if (!d.is_zero()) m[i][c] += d;
            }
            for (std::size_t r = k; r < n; ++r) {
                Scalar d = -tau * m[r][k + 1] + sigma * m[r][k];
                if (!d.is_zero()) m[r][i] += d;
            }
        }
    }
    return pf;
}

// ---------------------------------------------------------------- Kasteleyn

namespace detail {

inline bool connected(const PlanarGraph& g) {
    if (g.n == 0) return true;
    std::vector<int> parent(static_cast<std::size_t>(g.n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[static_cast<std::size_t>(v)] == v ? v : parent[static_cast<std::size_t>(v)] = find(parent[static_cast<std::size_t>(v)]); };
    int comps = g.n;
    for (const auto& e : g.edges) {
        int a = find(e.u), b = find(e.v);
        if (a != b) parent[static_cast<std::size_t>(a)] = b, --comps;
    }
    return comps == 1;
}

// Face walks: for each face, darts (vertex, edge) in walk order.
inline std::vector<std::vector<std::pair<int, int>>> face_darts(const PlanarGraph& g) {
    auto faces = Embedding{g.rotation}.faces();
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const auto& f : faces) {
        std::vector<std::pair<int, int>> d;
        for (auto [v, k] : f) d.emplace_back(v, g.rotation[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]);
        out.push_back(std::move(d));
    }
    return out;
}

// Dart leaving `from` along e agrees with orientation o[e] (+1: u -> v).
inline bool agrees(const PlanarGraph& g, const std::vector<int>& o, int from, int e) {
    return (g.edges[static_cast<std::size_t>(e)].u == from) == (o[static_cast<std::size_t>(e)] > 0);
}

inline std::size_t outer_face(const std::vector<std::vector<std::pair<int, int>>>& faces) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < faces.size(); ++f)
        if (faces[f].size() > faces[best].size()) best = f;
    return best;
}

} // namespace detail

// Counts agreeing darts per face walk; every face but the outer one must be odd.
inline bool is_kasteleyn(const PlanarGraph& g, const std::vector<int>& orient) {
    auto faces = detail::face_darts(g);
    if (faces.empty()) return true;
    std::size_t outer = detail::outer_face(faces);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (f == outer) continue;
        int cw = 0;
        for (auto [v, e] : faces[f]) cw += detail::agrees(g, orient, v, e);
        if (cw % 2 == 0) return false;
    }
    return true;
}

// Orientation per edge (+1: u -> v, -1: v -> u) such that the walk of every
// face except the largest has an odd number of edges oriented along it.
// Loops are not allowed.
inline std::vector<int> kasteleyn_orient(const PlanarGraph& g) {
    g.validate_embedding();
    if (!detail::connected(g)) throw DomainError("kasteleyn_orient: graph is not connected");
    std::size_t m = g.edges.size();
    for (std::size_t e = 0; e < m; ++e)
        if (g.edges[e].u == g.edges[e].v) throw DomainError("kasteleyn_orient: loop at edge " + std::to_string(e));
    std::vector<int> o(m, 0);
    // BFS tree, oriented away from the root
    std::vector<char> reached(static_cast<std::size_t>(g.n), 0);
    std::vector<int> queue{0};
    if (g.n) reached[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int v = queue[h];
        for (int e : g.rotation[static_cast<std::size_t>(v)]) {
            const auto& ed = g.edges[static_cast<std::size_t>(e)];
            int w = ed.u == v ? ed.v : ed.u;
            if (reached[static_cast<std::size_t>(w)]) continue;
            reached[static_cast<std::size_t>(w)] = 1;
            o[static_cast<std::size_t>(e)] = ed.u == v ? 1 : -1;
            queue.push_back(w);
        }
    }
    auto faces = detail::face_darts(g);
    if (faces.empty()) return o;
    std::size_t outer = detail::outer_face(faces);
    std::vector<std::array<int, 2>> face_of(m, {-1, -1});
    std::vector<int> open(faces.size(), 0);
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (auto [v, e] : faces[f]) {
            auto& slot = face_of[static_cast<std::size_t>(e)];
            slot[slot[0] < 0 ? 0 : 1] = static_cast<int>(f);
            if (!o[static_cast<std::size_t>(e)]) ++open[f];
        }
    // leaves of the dual tree first
    std::vector<std::size_t> ready;
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (f != outer && open[f] == 1) ready.push_back(f);
    while (!ready.empty()) {
        std::size_t f = ready.back();
        ready.pop_back();
        if (open[f] != 1) continue;
        int cw = 0, fix = -1, from = -1;
        for (auto [v, e] : faces[f]) {
            if (!o[static_cast<std::size_t>(e)]) {
                fix = e;
                from = v;
            } else {
                cw += detail::agrees(g, o, v, e);
            }
        }
        const auto& ed = g.edges[static_cast<std::size_t>(fix)];
        bool along = cw % 2 == 0;  // orient the dart along the walk iff the count is even
        o[static_cast<std::size_t>(fix)] = (ed.u == from) == along ? 1 : -1;
        for (int other : face_of[static_cast<std::size_t>(fix)]) {
            --open[static_cast<std::size_t>(other)];
            if (static_cast<std::size_t>(other) != outer && open[static_cast<std::size_t>(other)] == 1)
                ready.push_back(static_cast<std::size_t>(other));
        }
    }
    for (std::size_t e = 0; e < m; ++e)
        if (!o[e]) throw std::logic_error("kasteleyn_orient: edge left unoriented");
    if (!is_kasteleyn(g, o)) throw std::logic_error("kasteleyn_orient: postcondition failed");
    return o;
}

// ---------------------------------------------------------------- FKT

namespace detail {

inline SkewMatrix kasteleyn_matrix(const PlanarGraph& g, const std::vector<int>& o, bool unit) {
    SkewMatrix m(static_cast<std::size_t>(g.n), std::vector<Scalar>(static_cast<std::size_t>(g.n)));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        Scalar w = unit ? Scalar(1) : ed.w;
        int a = o[e] > 0 ? ed.u : ed.v, b = o[e] > 0 ? ed.v : ed.u;
        m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += w;
        m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] -= w;
    }
    return m;
}

// Connected, loop-free component: the unit-weight Pfaffian is +-(number of
// perfect matchings), which fixes the sign of the weighted one.
inline Scalar fkt_component(const PlanarGraph& g) {
    if (g.n % 2) return Scalar();
    if (g.n == 0) return Scalar(1);
    auto o = kasteleyn_orient(g);
    Scalar unit = pfaffian(kasteleyn_matrix(g, o, true));
    if (unit.is_zero()) return Scalar();
    Scalar pf = pfaffian(kasteleyn_matrix(g, o, false));
    return unit.coefficient(0) < 0 ? -pf : pf;
}

} // namespace detail

// Weighted perfect-matching count of a planar graph from its embedding.
// Loops are dropped; components are counted separately.
inline Scalar count_pm_fkt(const PlanarGraph& g) {
    g.validate_embedding();
    std::vector<int> comp(static_cast<std::size_t>(g.n), -1);
    int ncomp = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e : g.rotation[static_cast<std::size_t>(v)]) {
                const auto& ed = g.edges[static_cast<std::size_t>(e)];
                int w = ed.u == v ? ed.v : ed.u;
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<PlanarGraph> parts(static_cast<std::size_t>(ncomp));
    std::vector<int> local(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) local[static_cast<std::size_t>(v)] = parts[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].n++;
    for (auto& p : parts) {
        if (p.n % 2) return Scalar();
        p.rotation.resize(static_cast<std::size_t>(p.n));
    }
    std::vector<int> new_id(g.edges.size(), -1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        if (ed.u == ed.v) continue;
        auto& p = parts[static_cast<std::size_t>(comp[static_cast<std::size_t>(ed.u)])];
        new_id[e] = p.add_edge(local[static_cast<std::size_t>(ed.u)], local[static_cast<std::size_t>(ed.v)], ed.w);
    }
    for (int v = 0; v < g.n; ++v) {
        auto& p = parts[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
        for (int e : g.rotation[static_cast<std::size_t>(v)])
            if (new_id[static_cast<std::size_t>(e)] >= 0)
                p.rotation[static_cast<std::size_t>(local[static_cast<std::size_t>(v)])].push_back(new_id[static_cast<std::size_t>(e)]);
    }
    Scalar total(1);
    for (const auto& p : parts) {
        total *= detail::fkt_component(p);
        if (total.is_zero()) break;
    }
    return total;
}

// ---------------------------------------------------------------- fragments

// A planar graph with dangling edges. dangling[j] is the internal endpoint of
// dangling edge j. In the rotation system ids below edges.size() are internal
// edges and edges.size() + j is dangling edge j.
struct MatchgateFragment {
    PlanarGraph graph;
    std::vector<int> dangling;

    int arity() const { return static_cast<int>(dangling.size()); }

    // The dangling edges are closed at one extra vertex, in reversed order.
    Embedding closed_embedding() const {
        Embedding emb{graph.rotation};
        if (!dangling.empty()) {
            int m = static_cast<int>(graph.edges.size());
            std::vector<int> outer;
            for (int j = arity(); j-- > 0;) outer.push_back(m + j);
            emb.rotation.push_back(std::move(outer));
        }
        return emb;
    }

    void validate() const {
        graph.check_edges();
        if (arity() > kMaxArity) throw DomainError("fragment: too many dangling edges");
        if (static_cast<int>(graph.rotation.size()) != graph.n) throw DomainError("fragment: rotation system has the wrong number of vertices");
        int m = static_cast<int>(graph.edges.size());
        std::vector<std::vector<int>> seen(static_cast<std::size_t>(m + arity()));
        for (int v = 0; v < graph.n; ++v)
            for (int e : graph.rotation[static_cast<std::size_t>(v)]) {
                if (e < 0 || e >= m + arity()) throw DomainError("fragment: rotation of vertex " + std::to_string(v) + " names unknown edge " + std::to_string(e));
                seen[static_cast<std::size_t>(e)].push_back(v);
            }
        for (int e = 0; e < m; ++e) {
            const auto& ed = graph.edges[static_cast<std::size_t>(e)];
            if (ed.u == ed.v) throw DomainError("fragment: loop at edge " + std::to_string(e));
            auto ends = seen[static_cast<std::size_t>(e)];
            std::sort(ends.begin(), ends.end());
            if (ends != std::vector<int>{std::min(ed.u, ed.v), std::max(ed.u, ed.v)})
                throw DomainError("fragment: edge " + std::to_string(e) + " is not listed at exactly its endpoints");
        }
        for (int j = 0; j < arity(); ++j) {
            int v = dangling[static_cast<std::size_t>(j)];
            if (v < 0 || v >= graph.n) throw DomainError("fragment: dangling edge " + std::to_string(j) + " has no endpoint");
            if (seen[static_cast<std::size_t>(m + j)] != std::vector<int>{v})
                throw DomainError("fragment: dangling edge " + std::to_string(j) + " is not listed at its endpoint");
        }
        if (!closed_embedding().is_planar()) throw DomainError("fragment: not planar with the dangling edges on the outer face");
    }
};

// Entry y: weighted perfect matchings of the internal graph once every vertex
// carrying a dangling edge with y_j = 1 is removed.
inline Signature fragment_signature(const MatchgateFragment& f) {
    f.validate();
    int n = f.arity();
    Signature s = Signature::zero(n);
    for (std::uint32_t y = 0; y < s.size(); ++y) {
        std::uint32_t covered = 0;
        bool clash = false;
        for (int j = 1; j <= n && !clash; ++j) {
            if (!(y & var_bit(n, j))) continue;
            std::uint32_t b = 1u << f.dangling[static_cast<std::size_t>(j - 1)];
            clash = covered & b;
            covered |= b;
        }
        if (!clash) s[y] = enumerate_pm(f.graph, covered);
    }
    return s;
}

namespace fragments {

// Copies g's graph into out, shifting vertex ids; returns the id map for its
// edge ids (internal first, then dangling).
inline std::vector<int> append(PlanarGraph& out, const MatchgateFragment& g, const std::vector<int>& dangling_ids) {
    int off = out.n;
    std::vector<int> ids;
    for (const auto& e : g.graph.edges) ids.push_back(out.add_edge(e.u + off, e.v + off, e.w));
    ids.insert(ids.end(), dangling_ids.begin(), dangling_ids.end());
    out.n += g.graph.n;
    for (const auto& r : g.graph.rotation) {
        std::vector<int> nr;
        for (int e : r) nr.push_back(ids[static_cast<std::size_t>(e)]);
        out.rotation.push_back(std::move(nr));
    }
    return ids;
}

// Dangling ids are assigned after all internal edges are known, so build with
// placeholders and renumber.
inline MatchgateFragment assemble(PlanarGraph g, std::vector<int> dangling, const std::vector<int>& placeholder_of) {
    int m = static_cast<int>(g.edges.size());
    for (auto& r : g.rotation)
        for (int& e : r)
            if (e < 0) e = m + placeholder_of[static_cast<std::size_t>(-e - 1)];
    return {std::move(g), std::move(dangling)};
}

inline MatchgateFragment disjoint_union(const MatchgateFragment& a, const MatchgateFragment& b) {
    PlanarGraph g;
    std::vector<int> da, db, dangling;
    for (int j = 0; j < a.arity(); ++j) da.push_back(-1 - j);
    for (int j = 0; j < b.arity(); ++j) db.push_back(-1 - (a.arity() + j));
    append(g, a, da);
    int off = g.n;
    // append b's internal edges after a's; a's ids are unaffected
    append(g, b, db);
    for (int v : a.dangling) dangling.push_back(v);
    for (int v : b.dangling) dangling.push_back(v + off);
    std::vector<int> order(dangling.size());
    std::iota(order.begin(), order.end(), 0);
    return assemble(std::move(g), std::move(dangling), order);
}

// Connects a's last dangling edge to b's first; the rest stay in order.
inline MatchgateFragment join(const MatchgateFragment& a, const MatchgateFragment& b) {
    if (a.arity() == 0 || b.arity() == 0) throw DomainError("join: both fragments need a dangling edge");
    PlanarGraph g;
    // placeholder -1 - k: k < a.arity()-1 for a's kept edges, then b's kept, and the last one for the bridge
    int keep = a.arity() - 1 + b.arity() - 1;
    int bridge_ph = -1 - keep;
    std::vector<int> da, db;
    for (int j = 0; j + 1 < a.arity(); ++j) da.push_back(-1 - j);
    da.push_back(bridge_ph);
    db.push_back(bridge_ph);
    for (int j = 1; j < b.arity(); ++j) db.push_back(-1 - (a.arity() - 1 + j - 1));
    append(g, a, da);
    int off = g.n;
    append(g, b, db);
    int bridge = g.add_edge(a.dangling.back(), b.dangling.front() + off);
    for (auto& r : g.rotation)
        for (int& e : r)
            if (e == bridge_ph) e = bridge;
    std::vector<int> dangling;
    for (int j = 0; j + 1 < a.arity(); ++j) dangling.push_back(a.dangling[static_cast<std::size_t>(j)]);
    for (int j = 1; j < b.arity(); ++j) dangling.push_back(b.dangling[static_cast<std::size_t>(j)] + off);
    std::vector<int> order(static_cast<std::size_t>(keep));
    std::iota(order.begin(), order.end(), 0);
    return assemble(std::move(g), std::move(dangling), order);
}

// One vertex, k dangling edges: Exact-One_k.
inline MatchgateFragment exact_one(int k) {
    MatchgateFragment f;
    f.graph.n = 1;
    f.graph.rotation.resize(1);
    for (int j = 0; j < k; ++j) {
        f.graph.rotation[0].push_back(j);
        f.dangling.push_back(0);
    }
    return f;
}

// [1, 0]: the dangling vertex must otherwise be matched to its partner.
inline MatchgateFragment unary_zero() {
    MatchgateFragment f;
    f.graph.n = 2;
    f.graph.add_edge(0, 1);
    f.graph.rotation = {{0, 1}, {0}};
    f.dangling = {0};
    return f;
}

// [w, 0, 1]
inline MatchgateFragment weighted_equality(const Scalar& w) {
    MatchgateFragment f;
    f.graph.n = 2;
    f.graph.add_edge(0, 1, w);
    f.graph.rotation = {{0, 1}, {0, 2}};
    f.dangling = {0, 1};
    return f;
}

// Scalar factor c as a separate weighted edge; c = 0 gives an isolated vertex.
inline MatchgateFragment constant(const Scalar& c) {
    MatchgateFragment f;
    if (c.is_zero()) {
        f.graph.n = 1;
        f.graph.rotation.resize(1);
        return f;
    }
    if (c.is_one()) return f;
    f.graph.n = 2;
    f.graph.add_edge(0, 1, c);
    f.graph.rotation = {{0}, {0}};
    return f;
}

// [1, 0, 1, 0]: a star with centre 0 inside the triangle 1, 2, 3, weights
// 1, 1, -1 on the triangle sides.
inline MatchgateFragment even3() {
    MatchgateFragment f;
    f.graph.n = 4;
    f.graph.add_edge(0, 1);
    f.graph.add_edge(0, 2);
    f.graph.add_edge(0, 3);
    f.graph.add_edge(1, 2);
    f.graph.add_edge(2, 3);
    f.graph.add_edge(3, 1, Scalar(-1));
    f.graph.rotation = {{0, 1, 2}, {6, 3, 0, 5}, {4, 1, 3, 7}, {5, 2, 4, 8}};
    f.dangling = {1, 2, 3};
    return f;
}

// Even-parity indicator of arity k >= 1.
inline MatchgateFragment even_indicator(int k) {
    if (k < 1) throw DomainError("even_indicator: arity must be positive");
    if (k == 1) return unary_zero();
    if (k == 2) return weighted_equality(Scalar(1));
    MatchgateFragment f = even3();
    for (int a = 4; a <= k; ++a) f = join(f, even3());
    return f;
}

inline MatchgateFragment repeat(const MatchgateFragment& u, int k) {
    MatchgateFragment f;
    for (int j = 0; j < k; ++j) f = disjoint_union(f, u);
    return f;
}

} // namespace fragments

// ---------------------------------------------------------------- library

struct LibraryEntry {
    std::string name;
    Signature sig;
    MatchgateFragment fragment;
};

// Every entry is checked against its signature when built.
inline void validate_entry(const LibraryEntry& e) {
    Signature got = fragment_signature(e.fragment);
    if (!(got == e.sig))
        throw DomainError("matchgate library: entry " + e.name + " realizes " + got.to_string() + " instead of " + e.sig.to_string());
}

inline constexpr int kLibraryMaxArity = 6;

inline const std::vector<LibraryEntry>& builtin_library() {
    static const std::vector<LibraryEntry> lib = [] {
        std::vector<LibraryEntry> out;
        out.push_back({"[1,0]", Signature::symmetric({1, 0}), fragments::unary_zero()});
        out.push_back({"[0,1]", Signature::symmetric({0, 1}), fragments::exact_one(1)});
        out.push_back({"[1,0,1]", Signature::equality(2), fragments::weighted_equality(Scalar(1))});
        out.push_back({"[0,1,0]", Signature::symmetric({0, 1, 0}), fragments::exact_one(2)});
        for (int k = 3; k <= kLibraryMaxArity; ++k)
            out.push_back({"ExactOne" + std::to_string(k), Signature::exact_one(k), fragments::exact_one(k)});
        for (int k = 3; k <= kLibraryMaxArity; ++k) {
            std::vector<Scalar> w(static_cast<std::size_t>(k + 1));
            for (int j = 0; j <= k; j += 2) w[static_cast<std::size_t>(j)] = 1;
            out.push_back({"EvenParity" + std::to_string(k), Signature::symmetric(w), fragments::even_indicator(k)});
        }
        for (const auto& e : out) validate_entry(e);
        return out;
    }();
    return lib;
}

// A realization of c * base for one of the builtin shapes, or [a,0,...,0,b]
// with a = 0 or b = 0, or [a,0,b]. Verified before it is returned.
inline std::optional<MatchgateFragment> realize(const Signature& f) {
    int n = f.arity();
    auto with_scale = [&](const Signature& base, const MatchgateFragment& frag) -> std::optional<MatchgateFragment> {
        if (base.arity() != n) return std::nullopt;
        std::uint32_t x = 0;
        while (x < base.size() && base[x].is_zero()) ++x;
        if (x == base.size()) return std::nullopt;
        Scalar c = f[x] / base[x];
        if (!(base.scaled(c) == f)) return std::nullopt;
        return fragments::disjoint_union(frag, fragments::constant(c));
    };
    std::optional<MatchgateFragment> r;
    if (n >= 1) {
        r = with_scale(tensor_power(Signature::symmetric({1, 0}), n), fragments::repeat(fragments::unary_zero(), n));
        if (!r) r = with_scale(tensor_power(Signature::symmetric({0, 1}), n), fragments::repeat(fragments::exact_one(1), n));
        if (!r && n <= kMaxArity) r = with_scale(Signature::exact_one(n), fragments::exact_one(n));
    } else {
        r = fragments::constant(f[0]);
    }
    if (!r && n == 2 && f[1].is_zero() && f[2].is_zero() && !f[0].is_zero() && !f[3].is_zero())
        r = with_scale(Signature::symmetric({f[0] / f[3], 0, 1}), fragments::weighted_equality(f[0] / f[3]));
    if (!r)
        for (const auto& e : builtin_library())
            if ((r = with_scale(e.sig, e.fragment))) break;
    if (r && !(fragment_signature(*r) == f)) throw std::logic_error("realize: realization does not reproduce " + f.to_string());
    return r;
}

// ---------------------------------------------------------------- grids

// Glues the realization of each vertex into one planar graph: every grid edge
// becomes a weight-1 edge between the two dangling endpoints it joins.
inline PlanarGraph stitch(const SignatureGrid& g, const std::vector<const MatchgateFragment*>& by_vertex) {
    auto inc = g.incidences();
    PlanarGraph out;
    std::vector<int> offset;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        offset.push_back(out.n);
        out.n += by_vertex[v]->graph.n;
    }
    // internal edges first, then one edge per grid edge
    std::vector<std::vector<int>> internal_id(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (const auto& e : by_vertex[v]->graph.edges)
            internal_id[v].push_back(out.add_edge(e.u + offset[v], e.v + offset[v], e.w));
    std::vector<int> grid_id(static_cast<std::size_t>(g.num_edges), -1);
    for (int e = 0; e < g.num_edges; ++e) {
        const auto& ends = inc[static_cast<std::size_t>(e)];
        auto end_vertex = [&](std::pair<int, int> end) {
            std::size_t v = static_cast<std::size_t>(end.first);
            return offset[v] + by_vertex[v]->dangling[static_cast<std::size_t>(end.second)];
        };
        int a = end_vertex(ends[0]), b = end_vertex(ends[1]);
        if (a != b) grid_id[static_cast<std::size_t>(e)] = out.add_edge(a, b);
    }
    out.rotation.resize(static_cast<std::size_t>(out.n));
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const auto& frag = *by_vertex[v];
        int m = static_cast<int>(frag.graph.edges.size());
        for (int u = 0; u < frag.graph.n; ++u) {
            auto& r = out.rotation[static_cast<std::size_t>(offset[v] + u)];
            for (int e : frag.graph.rotation[static_cast<std::size_t>(u)]) {
                int id = e < m ? internal_id[v][static_cast<std::size_t>(e)]
                               : grid_id[static_cast<std::size_t>(g.vertices[v].edges[static_cast<std::size_t>(e - m)])];
                if (id >= 0) r.push_back(id);
            }
        }
    }
    return out;
}

// Holant of a closed planar grid from per-signature realizations (indexed like
// the registry), each verified against its signature first.
inline Scalar evaluate_matchgate_grid(const SignatureGrid& g, const std::vector<std::optional<MatchgateFragment>>& by_sig) {
    g.validate();
    if (!g.dangling.empty()) throw DomainError("evaluate_matchgate_grid: grid has dangling edges");
    std::vector<char> checked(g.registry.size(), 0);
    std::vector<const MatchgateFragment*> by_vertex;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::size_t s = static_cast<std::size_t>(g.vertices[v].sig);
        if (s >= by_sig.size() || !by_sig[s])
            throw DomainError("evaluate_matchgate_grid: no realization for vertex " + std::to_string(v) + " (" + g.registry.names[s] + ")");
        if (!checked[s]) {
            if (!(fragment_signature(*by_sig[s]) == g.registry.sigs[s]))
                throw DomainError("evaluate_matchgate_grid: realization of vertex " + std::to_string(v) + " (" + g.registry.names[s] +
                                  ") does not match its signature");
            checked[s] = 1;
        }
        by_vertex.push_back(&*by_sig[s]);
    }
    return count_pm_fkt(stitch(g, by_vertex));
}

// Same, realizing every signature from the builtin shapes.
inline Scalar evaluate_matchgate_grid(const SignatureGrid& g) {
    std::vector<std::optional<MatchgateFragment>> by_sig;
    for (std::size_t s = 0; s < g.registry.size(); ++s) by_sig.push_back(realize(g.registry.sigs[s]));
    return evaluate_matchgate_grid(g, by_sig);
}

} // namespace holant

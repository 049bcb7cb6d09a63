#pragma once

// Seeded generators for class members. Used by the test suite and by the CLI
// when asked for sample instances.

#include "holant/classes.hpp"
#include "holant/fkt.hpp"
#include "holant/grid.hpp"

#include <random>

namespace holant::random {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Small Gaussian integer a + b i with |a|, |b| <= r.
inline Scalar gaussian(Rng& rng, int r) {
    return Scalar(uniform(rng, -r, r)) + Scalar(uniform(rng, -r, r)) * Scalar::imag_unit();
}

inline Scalar nonzero_gaussian(Rng& rng, int r) {
    for (;;) {
        Scalar s = gaussian(rng, r);
        if (!s.is_zero()) return s;
    }
}

inline Signature signature(Rng& rng, int n, int r = 2) {
    std::vector<Scalar> v(std::size_t{1} << n);
    for (auto& x : v) x = gaussian(rng, r);
    return Signature(n, std::move(v));
}

// Picks each entry from `alphabet`.
inline Signature signature_from(Rng& rng, int n, const std::vector<Scalar>& alphabet) {
    std::vector<Scalar> v(std::size_t{1} << n);
    for (auto& x : v) x = alphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(alphabet.size()) - 1))];
    return Signature(n, std::move(v));
}

// lambda * chi_{Ax = b} * i^{Q(x)}, Q quadratic with even cross terms. Never zero.
inline Signature affine_member(Rng& rng, int n) {
    for (;;) {
        int rows = uniform(rng, 0, n);
        std::vector<gf2::Row> cons;
        for (int k = 0; k < rows; ++k)
            cons.push_back({static_cast<std::uint32_t>(uniform(rng, 0, (1 << n) - 1)), uniform(rng, 0, 1) == 1});
        Z4Polynomial q{n, std::vector<std::uint8_t>(std::size_t{1} << n)};
        for (std::uint32_t m = 0; m < q.coeff.size(); ++m) {
            int d = popcount(m);
            if (d <= 1) q.coeff[m] = static_cast<std::uint8_t>(uniform(rng, 0, 3));
            if (d == 2) q.coeff[m] = static_cast<std::uint8_t>(2 * uniform(rng, 0, 1));
        }
        Scalar lambda = nonzero_gaussian(rng, 2);
        Signature f = Signature::zero(n);
        bool any = false;
        for (std::uint32_t x = 0; x < f.size(); ++x) {
            bool ok = true;
            for (auto& c : cons) ok = ok && ((popcount(c.mask & x) & 1) == static_cast<int>(c.rhs));
            if (!ok) continue;
            f[x] = lambda * Scalar::power_of_i(q.evaluate(x));
            any = true;
        }
        if (any) return f;
    }
}

// Tensor product of unaries and two-point antipodal-support factors over a
// random partition of the variables. Never zero.
inline Signature product_member(Rng& rng, int n, int r = 2) {
    std::vector<int> block(static_cast<std::size_t>(n));
    int blocks = 0;
    for (int i = 0; i < n; ++i) {
        int b = uniform(rng, 0, blocks);
        block[static_cast<std::size_t>(i)] = b;
        if (b == blocks) ++blocks;
    }
    // per block: a reference pattern beta and weights for beta / complement
    std::vector<std::uint32_t> beta(static_cast<std::size_t>(blocks));
    std::vector<std::array<Scalar, 2>> w(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) {
        beta[static_cast<std::size_t>(b)] = static_cast<std::uint32_t>(uniform(rng, 0, (1 << n) - 1));
        w[static_cast<std::size_t>(b)] = {nonzero_gaussian(rng, r), uniform(rng, 0, 3) ? nonzero_gaussian(rng, r) : Scalar()};
    }
    Signature f = Signature::zero(n);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        Scalar v(1);
        for (int b = 0; b < blocks && !v.is_zero(); ++b) {
            int state = -1;
            for (int i = 1; i <= n; ++i) {
                if (block[static_cast<std::size_t>(i - 1)] != b) continue;
                std::uint32_t bit = var_bit(n, i);
                int s = ((x ^ beta[static_cast<std::size_t>(b)]) & bit) ? 1 : 0;
                if (state < 0)
                    state = s;
                else if (state != s)
                    state = 2;
            }
            if (state == 2)
                v = Scalar();
            else
                v *= w[static_cast<std::size_t>(b)][static_cast<std::size_t>(state)];
        }
        f[x] = v;
    }
    if (f.is_zero()) return product_member(rng, n, r);
    return f;
}

// ---------------------------------------------------------------- planar graphs

// A connected simple planar graph given by its rotation system, grown by
// pendant insertions and face-splitting chords.
struct PlanarGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // edge id -> endpoints
    Embedding emb;

    bool adjacent(int a, int b) const {
        for (auto [u, v] : edges)
            if ((u == a && v == b) || (u == b && v == a)) return true;
        return false;
    }
};

inline PlanarGraph planar_graph(Rng& rng, int vertices, int extra_edges) {
    PlanarGraph g;
    g.n = std::max(vertices, 1);
    g.emb.rotation.assign(static_cast<std::size_t>(g.n), {});
    // random tree: vertex v hangs off an earlier vertex at a random corner
    for (int v = 1; v < g.n; ++v) {
        int u = uniform(rng, 0, v - 1);
        int e = static_cast<int>(g.edges.size());
        g.edges.emplace_back(u, v);
        auto& ru = g.emb.rotation[static_cast<std::size_t>(u)];
        ru.insert(ru.begin() + uniform(rng, 0, static_cast<int>(ru.size())), e);
        g.emb.rotation[static_cast<std::size_t>(v)].push_back(e);
    }
    for (int t = 0; t < extra_edges; ++t) {
        auto faces = g.emb.faces();
        if (faces.empty()) break;
        // corners of a random face: after arriving at (w, j) the face continues at slot j+1
        bool added = false;
        for (int attempt = 0; attempt < 8 && !added; ++attempt) {
            const auto& face = faces[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(faces.size()) - 1))];
            if (face.size() < 3) continue;
            int a = uniform(rng, 0, static_cast<int>(face.size()) - 1);
            int b = uniform(rng, 0, static_cast<int>(face.size()) - 1);
            auto da = face[static_cast<std::size_t>(a)], db = face[static_cast<std::size_t>(b)];
            // dart (v, k) leaves v through slot k; the corner before it at v is between k-1 and k
            if (da.first == db.first || g.adjacent(da.first, db.first)) continue;
            int e = static_cast<int>(g.edges.size());
            g.edges.emplace_back(da.first, db.first);
            auto& ra = g.emb.rotation[static_cast<std::size_t>(da.first)];
            auto& rb = g.emb.rotation[static_cast<std::size_t>(db.first)];
            ra.insert(ra.begin() + da.second, e);
            rb.insert(rb.begin() + db.second, e);
            added = true;
        }
    }
    return g;
}

inline bool is_bipartite(const PlanarGraph& g) {
    std::vector<int> color(static_cast<std::size_t>(g.n), -1);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
    for (auto [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (int s = 0; s < g.n; ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (color[static_cast<std::size_t>(w)] < 0) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(u)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(u)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Grid on the graph's rotation system; each vertex gets its own signature
// from `make(arity)`.
template <class Make>
SignatureGrid grid_on(const PlanarGraph& g, Make make) {
    SignatureGrid grid;
    grid.num_edges = static_cast<int>(g.edges.size());
    for (int v = 0; v < g.n; ++v) {
        const auto& rot = g.emb.rotation[static_cast<std::size_t>(v)];
        int s = grid.registry.add("v" + std::to_string(v), make(static_cast<int>(rot.size())));
        grid.add_vertex(s, rot);
    }
    return grid;
}

// Random planar bipartite grid with at most max_edges edges and labeled sides.
inline SignatureGrid bipartite_planar_grid(Rng& rng, int max_edges, int r = 2) {
    for (;;) {
        int nv = uniform(rng, 2, std::max(2, max_edges / 2 + 1));
        PlanarGraph g = planar_graph(rng, nv, uniform(rng, 0, 3));
        bool bip = is_bipartite(g);
        int m = static_cast<int>(g.edges.size());
        if (!(bip ? m <= max_edges : 2 * m <= max_edges)) continue;
        SignatureGrid grid = grid_on(g, [&](int k) { return signature(rng, k, r); });
        if (!bip) {
            grid = two_stretch(grid);
            // fresh =2 vertices become arbitrary binary signatures
            int s = grid.registry.find(equality_name(2));
            for (auto& v : grid.vertices)
                if (v.sig == s) v.sig = grid.registry.add("b" + std::to_string(grid.registry.size()), signature(rng, 2, r));
            return grid;
        }
        // two-colour the vertices
        std::vector<int> color(static_cast<std::size_t>(g.n), -1);
        for (int s = 0; s < g.n; ++s) {
            if (color[static_cast<std::size_t>(s)] >= 0) continue;
            color[static_cast<std::size_t>(s)] = 0;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (std::size_t e = 0; e < g.edges.size(); ++e) {
                    auto [a, b] = g.edges[e];
                    int w = a == u ? b : b == u ? a : -1;
                    if (w >= 0 && color[static_cast<std::size_t>(w)] < 0) {
                        color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(u)];
                        stack.push_back(w);
                    }
                }
            }
        }
        for (int v = 0; v < g.n; ++v) grid.vertices[static_cast<std::size_t>(v)].side = color[static_cast<std::size_t>(v)];
        return grid;
    }
}

inline Transform2x2 invertible_gaussian_transform(Rng& rng, int r = 2) {
    for (;;) {
        Transform2x2 t{gaussian(rng, r), gaussian(rng, r), gaussian(rng, r), gaussian(rng, r)};
        if (t.invertible()) return t;
    }
}

// Random #CSP instance over `pool`, each constraint on a tuple of variables
// (repeats allowed with small probability).
inline CspInstance csp_instance(Rng& rng, int vars, int constraints, const std::vector<Signature>& pool) {
    CspInstance inst;
    inst.vars = vars;
    for (std::size_t k = 0; k < pool.size(); ++k) inst.registry.add("f" + std::to_string(k), pool[k]);
    for (int c = 0; c < constraints; ++c) {
        int s = uniform(rng, 0, static_cast<int>(pool.size()) - 1);
        CspInstance::Constraint k{s, {}};
        bool repeats = uniform(rng, 0, 9) == 0 || pool[static_cast<std::size_t>(s)].arity() > vars;
        while (static_cast<int>(k.on.size()) < pool[static_cast<std::size_t>(s)].arity()) {
            int v = uniform(rng, 0, vars - 1);
            if (repeats || std::find(k.on.begin(), k.on.end(), v) == k.on.end()) k.on.push_back(v);
        }
        inst.constraints.push_back(std::move(k));
    }
    return inst;
}

// ---------------------------------------------------------------- matchings

// The graph with a nonzero weight per edge drawn by `weight()`.
template <class Weight>
holant::PlanarGraph weighted(const PlanarGraph& g, Weight weight) {
    holant::PlanarGraph out;
    out.n = g.n;
    for (auto [u, v] : g.edges) out.add_edge(u, v, weight());
    out.rotation = g.emb.rotation;
    return out;
}

// Random planar fragment: dangling edges attached at distinct corners of one
// face, in the order the face walk meets them.
inline MatchgateFragment fragment(Rng& rng, int vertices, int extra_edges, int arity, int r = 2) {
    PlanarGraph pg = planar_graph(rng, vertices, extra_edges);
    MatchgateFragment f;
    f.graph = weighted(pg, [&] { return nonzero_gaussian(rng, r); });
    auto faces = pg.emb.faces();
    std::vector<std::pair<int, int>> corners{{0, 0}};  // single vertex, no edges
    if (!faces.empty()) corners = faces[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(faces.size()) - 1))];
    std::vector<int> pick;
    for (int j = 0; j < arity; ++j) pick.push_back(uniform(rng, 0, static_cast<int>(corners.size()) - 1));
    std::sort(pick.begin(), pick.end());
    int m = static_cast<int>(f.graph.edges.size());
    std::vector<std::tuple<int, int, int>> inserts;  // vertex, slot, dangling index
    for (int j = 0; j < arity; ++j) {
        auto [v, k] = corners[static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
        f.dangling.push_back(v);
        inserts.emplace_back(v, k, j);
    }
    // later corners first, so earlier slots stay put; equal corners keep walk order
    std::sort(inserts.begin(), inserts.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
        return std::get<2>(a) > std::get<2>(b);
    });
    for (auto [v, k, j] : inserts) {
        auto& rot = f.graph.rotation[static_cast<std::size_t>(v)];
        rot.insert(rot.begin() + k, m + j);
    }
    return f;
}

// A signature from the builtin realizable shapes with a random scale.
inline Signature library_signature(Rng& rng, int k, int r = 2) {
    Scalar c = nonzero_gaussian(rng, r);
    int choice = uniform(rng, 0, k == 2 ? 4 : 3);
    if (k > kLibraryMaxArity && choice >= 2) choice = choice % 2;
    if (k == 0) return Signature::constant(c);
    switch (choice) {
    case 0: return tensor_power(Signature::symmetric({1, 0}), k).scaled(c);
    case 1: return tensor_power(Signature::symmetric({0, 1}), k).scaled(c);
    case 2: return Signature::exact_one(k).scaled(c);
    case 3: {
        std::vector<Scalar> w(static_cast<std::size_t>(k + 1));
        for (int j = 0; j <= k; j += 2) w[static_cast<std::size_t>(j)] = c;
        return Signature::symmetric(w);
    }
    default: return Signature::symmetric({nonzero_gaussian(rng, r), 0, c});
    }
}

} // namespace holant::random

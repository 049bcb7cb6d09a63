#pragma once

// Exhaustive evaluation. These are the reference oracles for every fast path.

#include "holant/grid.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace holant {

inline constexpr int kBruteForceMaxEdges = 24;
inline constexpr int kBruteForceMaxVars = 20;

namespace detail {

// Depth-first sum over assignments of edges 0..m-1 with zero pruning.
// Vertex v is multiplied in once its last incident edge is assigned.
class EdgeSum {
public:
    EdgeSum(const SignatureGrid& g, std::vector<int> fixed)  // fixed[e] in {-1, 0, 1}
        : g_(g), fixed_(std::move(fixed)) {
        int m = g.num_edges;
        for (int e = 0; e < m; ++e)
            if (fixed_[static_cast<std::size_t>(e)] < 0) free_.push_back(e);
        std::vector<int> pos(static_cast<std::size_t>(m), -1);
        for (std::size_t k = 0; k < free_.size(); ++k) pos[static_cast<std::size_t>(free_[k])] = static_cast<int>(k);
        closing_.assign(free_.size() + 1, {});
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            int last = -1;
            for (int e : g.vertices[v].edges)
                if (pos[static_cast<std::size_t>(e)] >= 0) last = std::max(last, pos[static_cast<std::size_t>(e)]);
            closing_[static_cast<std::size_t>(last + 1)].push_back(static_cast<int>(v));
        }
        value_ = fixed_;
    }

    int free_count() const { return static_cast<int>(free_.size()); }

    // Sum over assignments whose first `prefix_len` free edges spell `prefix` (MSB first).
    Scalar run(int prefix_len, std::uint32_t prefix) {
        auto vals = value_;
        Scalar acc(1);
        for (int v : closing_[0]) {
            acc *= vertex_value(v, vals);
            if (acc.is_zero()) return acc;
        }
        for (int k = 0; k < prefix_len; ++k) {
            vals[static_cast<std::size_t>(free_[static_cast<std::size_t>(k)])] =
                static_cast<int>((prefix >> (prefix_len - 1 - k)) & 1u);
            for (int v : closing_[static_cast<std::size_t>(k + 1)]) {
                acc *= vertex_value(v, vals);
                if (acc.is_zero()) return acc;
            }
        }
        return dfs(prefix_len, acc, vals);
    }

private:
    Scalar vertex_value(int v, const std::vector<int>& vals) const {
        const auto& vx = g_.vertices[static_cast<std::size_t>(v)];
        std::uint32_t idx = 0;
        for (int e : vx.edges) idx = (idx << 1) | static_cast<std::uint32_t>(vals[static_cast<std::size_t>(e)]);
        return g_.registry[vx.sig][idx];
    }

    Scalar dfs(int k, const Scalar& acc, std::vector<int>& vals) const {
        if (k == static_cast<int>(free_.size())) return acc;
        Scalar total;
        int e = free_[static_cast<std::size_t>(k)];
        for (int b = 0; b < 2; ++b) {
            vals[static_cast<std::size_t>(e)] = b;
            Scalar p = acc;
            for (int v : closing_[static_cast<std::size_t>(k + 1)]) {
                p *= vertex_value(v, vals);
                if (p.is_zero()) break;
            }
            if (!p.is_zero()) total += dfs(k + 1, p, vals);
        }
        vals[static_cast<std::size_t>(e)] = -1;
        return total;
    }

    const SignatureGrid& g_;
    std::vector<int> fixed_;
    std::vector<int> free_;
    std::vector<std::vector<int>> closing_;
    std::vector<int> value_;
};

// Splits the assignment space into blocks by a prefix of the free edges and
// sums the blocks in prefix order, so the result is independent of `workers`.
inline Scalar edge_sum(const SignatureGrid& g, const std::vector<int>& fixed, int workers) {
    EdgeSum es(g, fixed);
    int prefix_len = std::min(es.free_count(), 6);
    std::uint32_t blocks = std::uint32_t{1} << prefix_len;
    std::vector<Scalar> parts(blocks);
    workers = std::max(1, std::min<int>(workers, static_cast<int>(blocks)));
    if (workers == 1) {
        for (std::uint32_t b = 0; b < blocks; ++b) parts[b] = es.run(prefix_len, b);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                EdgeSum local(g, fixed);
                for (std::uint32_t b = static_cast<std::uint32_t>(w); b < blocks; b += static_cast<std::uint32_t>(workers))
                    parts[b] = local.run(prefix_len, b);
            });
        for (auto& t : pool) t.join();
    }
    Scalar total;
    for (const auto& p : parts) total += p;
    return total;
}

inline int default_workers() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(std::min(h, 8u));
}

} // namespace detail

// Sum over all {0,1} edge assignments of the product of vertex values.
inline Scalar brute_force_holant(const SignatureGrid& g, int workers = detail::default_workers()) {
    g.validate();
    if (!g.dangling.empty()) throw DomainError("brute_force_holant: grid has dangling edges; use gate_signature");
    if (g.num_edges > kBruteForceMaxEdges)
        throw DomainError("brute_force_holant: " + std::to_string(g.num_edges) + " edges exceeds the limit of " +
                          std::to_string(kBruteForceMaxEdges));
    return detail::edge_sum(g, std::vector<int>(static_cast<std::size_t>(g.num_edges), -1), workers);
}

// Signature of an F-gate: entry y fixes dangling edge j to bit j of y.
inline Signature gate_signature(const SignatureGrid& g, int workers = detail::default_workers()) {
    g.validate();
    int k = static_cast<int>(g.dangling.size());
    Signature::check_arity(k);
    if (g.num_edges - k > kBruteForceMaxEdges)
        throw DomainError("gate_signature: too many internal edges for exhaustive evaluation");
    Signature out = Signature::zero(k);
    for (std::uint32_t y = 0; y < out.size(); ++y) {
        std::vector<int> fixed(static_cast<std::size_t>(g.num_edges), -1);
        for (int j = 0; j < k; ++j)
            fixed[static_cast<std::size_t>(g.dangling[static_cast<std::size_t>(j)])] = static_cast<int>((y >> (k - 1 - j)) & 1u);
        out[y] = detail::edge_sum(g, fixed, workers);
    }
    return out;
}

// Sum over all assignments of the variables of the product of constraints.
inline Scalar brute_force_csp(const CspInstance& inst) {
    inst.validate();
    if (inst.vars > kBruteForceMaxVars)
        throw DomainError("brute_force_csp: " + std::to_string(inst.vars) + " variables exceeds the limit of " +
                          std::to_string(kBruteForceMaxVars));
    // constraint c is evaluated once its highest variable is assigned
    std::vector<std::vector<int>> closing(static_cast<std::size_t>(inst.vars + 1));
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        int last = -1;
        for (int v : inst.constraints[c].on) last = std::max(last, v);
        closing[static_cast<std::size_t>(last + 1)].push_back(static_cast<int>(c));
    }
    std::vector<int> val(static_cast<std::size_t>(inst.vars), 0);
    auto value = [&](int c) {
        const auto& k = inst.constraints[static_cast<std::size_t>(c)];
        std::uint32_t idx = 0;
        for (int v : k.on) idx = (idx << 1) | static_cast<std::uint32_t>(val[static_cast<std::size_t>(v)]);
        return inst.registry[k.sig][idx];
    };
    std::function<Scalar(int, const Scalar&)> dfs = [&](int v, const Scalar& acc) -> Scalar {
        if (v == inst.vars) return acc;
        Scalar total;
        for (int b = 0; b < 2; ++b) {
            val[static_cast<std::size_t>(v)] = b;
            Scalar p = acc;
            for (int c : closing[static_cast<std::size_t>(v + 1)]) {
                p *= value(c);
                if (p.is_zero()) break;
            }
            if (!p.is_zero()) total += dfs(v + 1, p);
        }
        return total;
    };
    Scalar start(1);
    for (int c : closing[0]) start *= value(c);
    if (start.is_zero()) return start;
    return dfs(0, start);
}

} // namespace holant

#pragma once

// Holographic transformation of a whole bipartite grid.

#include "holant/brute_force.hpp"
#include "holant/transform.hpp"

namespace holant {

// Side 0 signatures become f T, side 1 signatures become T^{-1} g.
inline SignatureGrid transform_grid(const SignatureGrid& g, const Transform2x2& t) {
    if (!g.is_bipartite_labeled()) throw DomainError("transform_grid: grid is not a labeled bipartite grid");
    SignatureGrid out = g;
    out.registry = {};
    std::map<std::pair<int, int>, int> made;
    for (auto& v : out.vertices) {
        auto key = std::make_pair(v.sig, v.side);
        auto it = made.find(key);
        if (it == made.end()) {
            const Signature& f = g.registry[v.sig];
            Signature tf = transform(f, t, v.side == 0 ? Side::Row : Side::Column);
            std::string name = g.registry.names[static_cast<std::size_t>(v.sig)] + (v.side == 0 ? "*T" : "*Tinv");
            it = made.emplace(key, out.registry.add(name, tf)).first;
        }
        v.sig = it->second;
    }
    return out;
}

struct InvarianceResult {
    Scalar lhs, rhs;
    bool equal = false;
};

inline InvarianceResult check_holant_invariance(const SignatureGrid& g, const Transform2x2& t) {
    InvarianceResult r;
    if (!t.invertible()) throw DomainError("check_holant_invariance: transform is singular");
    if (!g.is_bipartite_labeled()) throw DomainError("check_holant_invariance: grid is not bipartite");
    r.lhs = brute_force_holant(g);
    r.rhs = brute_force_holant(transform_grid(g, t));
    r.equal = r.lhs == r.rhs;
    return r;
}

} // namespace holant

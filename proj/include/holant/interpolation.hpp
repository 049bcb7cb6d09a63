#pragma once

// Exact polynomial interpolation, and the stratified-sum reconstruction it is
// used for: if Holant(grid_k) = sum_l c_l x^{k l}, the c_l follow from a few
// evaluations.

#include "holant/brute_force.hpp"

namespace holant {

// Solves sum_l c_l xs[k]^l = ys[k] for c_0..c_{n-1}.
inline std::vector<Scalar> vandermonde_interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
    std::size_t n = xs.size();
    if (ys.size() != n) throw DomainError("vandermonde_interpolate: xs and ys differ in length");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (xs[a] == xs[b]) throw DomainError("vandermonde_interpolate: duplicate node " + xs[a].to_string());
    // Newton divided differences, then expand to the monomial basis.
    std::vector<Scalar> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t k = n - 1; k >= j; --k) {
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - j]);
            if (k == j) break;
        }
    std::vector<Scalar> c(n);
    for (std::size_t j = n; j-- > 0;) {
        // c <- c * (x - xs[j]) + dd[j]
        std::vector<Scalar> next(n);
        for (std::size_t l = 0; l < n; ++l) {
            if (c[l].is_zero()) continue;
            if (l + 1 < n) next[l + 1] += c[l];
            next[l] -= c[l] * xs[j];
        }
        next[0] += dd[j];
        c = std::move(next);
    }
    return c;
}

// The grid with every edge in `edges` subdivided by [1, 0, x^k], which is
// the k-th derivative of =_{k+2} by [1, x].
inline SignatureGrid weighted_stretch(const SignatureGrid& g, const std::vector<int>& edges, const Scalar& x, int k) {
    Signature w = derivative_power(Signature::equality(k + 2), Signature::symmetric({1, x}), k);
    return subdivide_edges(g, edges, "stretch" + std::to_string(k), w);
}

// c_l = Holant restricted to assignments with exactly l of `edges` set to 1,
// recovered from evaluations of weighted_stretch at k = 1..|edges|+1.
inline std::vector<Scalar> interpolate_stratified(const SignatureGrid& g, const std::vector<int>& edges, const Scalar& x) {
    std::size_t n = edges.size() + 1;
    std::vector<Scalar> xs, ys;
    for (std::size_t k = 1; k <= n; ++k) {
        xs.push_back(x.pow(static_cast<int>(k)));
        ys.push_back(brute_force_holant(weighted_stretch(g, edges, x, static_cast<int>(k))));
    }
    return vandermonde_interpolate(xs, ys);
}

} // namespace holant

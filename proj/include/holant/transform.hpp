#pragma once

// 2x2 basis changes acting on signatures as tensor powers.

#include "holant/signature.hpp"

#include <array>
#include <string>

namespace holant {

struct Transform2x2 {
    // (a b; c d)
    Scalar a{1}, b{0}, c{0}, d{1};

    static Transform2x2 identity() { return {}; }
    // Unnormalized (1 1; 1 -1); H2 * H2 = 2 I.
    static Transform2x2 hadamard() { return {1, 1, 1, -1}; }
    // (1 1; 1 -1) / sqrt2, orthogonal.
    static Transform2x2 hadamard_normalized() {
        Scalar s = Scalar::sqrt2().inverse();
        return {s, s, s, -s};
    }
    static Transform2x2 diag(Scalar x, Scalar y) { return {std::move(x), 0, 0, std::move(y)}; }

    Scalar det() const { return a * d - b * c; }
    bool invertible() const { return !det().is_zero(); }

    Transform2x2 inverse() const {
        Scalar dt = det();
        if (dt.is_zero()) throw DomainError("transform: singular matrix");
        Scalar r = dt.inverse();
        return {d * r, -b * r, -c * r, a * r};
    }
    Transform2x2 transpose() const { return {a, c, b, d}; }

    friend Transform2x2 operator*(const Transform2x2& x, const Transform2x2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Transform2x2&, const Transform2x2&) = default;

    std::string to_string() const {
        return "(" + a.to_string() + " " + b.to_string() + "; " + c.to_string() + " " + d.to_string() + ")";
    }
};

// T^{(x)n} f, with f as a column vector. One butterfly per variable.
inline Signature apply_tensor_power(const Transform2x2& t, const Signature& f) {
    int n = f.arity();
    std::vector<Scalar> v = f.values();
    for (int i = 1; i <= n; ++i) {
        std::uint32_t bit = var_bit(n, i);
        for (std::uint32_t x = 0; x < v.size(); ++x) {
            if (x & bit) continue;
            Scalar lo = v[x], hi = v[x | bit];
            v[x] = t.a * lo + t.b * hi;
            v[x | bit] = t.c * lo + t.d * hi;
        }
    }
    return Signature(n, std::move(v));
}

enum class Side {
    Column,  // T^{-1} f, for signatures on the right of the bipartition
    Row,     // f T, for signatures on the left
};

inline Signature transform(const Signature& f, const Transform2x2& t, Side side) {
    if (side == Side::Column) return apply_tensor_power(t.inverse(), f);
    return apply_tensor_power(t.transpose(), f);
}

// H2 f, unnormalized.
inline Signature hadamard(const Signature& f) { return apply_tensor_power(Transform2x2::hadamard(), f); }

// diag(1, w)^{(x)n} f: the entry at x is scaled by w^wt(x).
inline Signature diag_scale(const Signature& f, const Scalar& w) {
    std::vector<Scalar> powers{Scalar(1)};
    for (int k = 1; k <= f.arity(); ++k) powers.push_back(powers.back() * w);
    std::vector<Scalar> v(f.size());
    for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = f[x] * powers[static_cast<std::size_t>(popcount(x))];
    return Signature(f.arity(), std::move(v));
}

} // namespace holant

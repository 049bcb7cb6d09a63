#pragma once

// Signatures: functions {0,1}^n -> Q(zeta8) stored as truth tables.
//
// Entries are listed in lexicographic order of (x1, ..., xn) with x1 the most
// significant bit, so the entry for input x1..xn lives at index
// sum_i x_i * 2^(n-i). Variables are numbered from 1 in every public API.

#include "holant/error.hpp"
#include "holant/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace holant {

inline constexpr int kMaxArity = 16;

// Bit of variable x_i (1-based) inside a truth-table index of an arity-n signature.
constexpr std::uint32_t var_bit(int arity, int i) { return std::uint32_t{1} << (arity - i); }

inline int popcount(std::uint32_t v) { return __builtin_popcount(v); }

// Renders index as the bit string x1..xn.
inline std::string bit_string(std::uint32_t index, int arity) {
    std::string s(static_cast<std::size_t>(arity), '0');
    for (int i = 1; i <= arity; ++i)
        if (index & var_bit(arity, i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
}

class Signature {
public:
    // The arity-0 constant 1.
    Signature() : arity_(0), values_{Scalar(1)} {}

    Signature(int arity, std::vector<Scalar> values) : arity_(arity), values_(std::move(values)) {
        check_arity(arity);
        if (values_.size() != (std::size_t{1} << arity))
            throw DomainError("signature: arity " + std::to_string(arity) + " needs " +
                              std::to_string(std::size_t{1} << arity) + " values, got " +
                              std::to_string(values_.size()));
    }

    static Signature constant(Scalar c) { return Signature(0, {std::move(c)}); }

    static Signature zero(int arity) {
        check_arity(arity);
        return Signature(arity, std::vector<Scalar>(std::size_t{1} << arity));
    }

    // [f0, ..., fn]: value depends only on the Hamming weight of the input.
    static Signature symmetric(std::span<const Scalar> by_weight) {
        if (by_weight.empty()) throw DomainError("signature: symmetric form needs at least one entry");
        int n = static_cast<int>(by_weight.size()) - 1;
        check_arity(n);
        std::vector<Scalar> v(std::size_t{1} << n);
        for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = by_weight[static_cast<std::size_t>(popcount(x))];
        return Signature(n, std::move(v));
    }

    static Signature symmetric(std::initializer_list<Scalar> by_weight) {
        return symmetric(std::span<const Scalar>(by_weight.begin(), by_weight.size()));
    }

    // (=_n) = [1, 0, ..., 0, 1].
    static Signature equality(int n) {
        std::vector<Scalar> w(static_cast<std::size_t>(n) + 1);
        w.front() = 1;
        w.back() = 1;
        if (n == 0) w.front() = 2;  // a variable with no occurrence still ranges over {0,1}
        return symmetric(w);
    }

    // [0, 1, 0, ..., 0]: exactly one input is 1.
    static Signature exact_one(int n) {
        std::vector<Scalar> w(static_cast<std::size_t>(n) + 1);
        if (n >= 1) w[1] = 1;
        return symmetric(w);
    }

    int arity() const { return arity_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<Scalar>& values() const { return values_; }
    const Scalar& operator[](std::uint32_t index) const { return values_[index]; }
    Scalar& operator[](std::uint32_t index) { return values_[index]; }

    bool is_zero() const {
        return std::all_of(values_.begin(), values_.end(), [](const Scalar& s) { return s.is_zero(); });
    }

    bool is_symmetric() const {
        for (std::uint32_t x = 0; x < values_.size(); ++x) {
            std::uint32_t rep = (std::uint32_t{1} << popcount(x)) - 1;
            if (values_[x] != values_[rep]) return false;
        }
        return true;
    }

    // [f0, ..., fn] when symmetric.
    std::vector<Scalar> symmetric_entries() const {
        if (!is_symmetric()) throw DomainError("signature: not symmetric");
        std::vector<Scalar> w;
        for (int k = 0; k <= arity_; ++k) w.push_back(values_[(std::uint32_t{1} << k) - 1]);
        return w;
    }

    Signature scaled(const Scalar& c) const {
        Signature r = *this;
        for (auto& v : r.values_) v *= c;
        return r;
    }

    friend Signature operator+(const Signature& a, const Signature& b) {
        if (a.arity_ != b.arity_) throw DomainError("signature: sum of different arities");
        Signature r = a;
        for (std::size_t x = 0; x < r.values_.size(); ++x) r.values_[x] += b.values_[x];
        return r;
    }

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.arity_ == b.arity_ && a.values_ == b.values_;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t x = 0; x < values_.size(); ++x) {
            if (x) s += ", ";
            s += values_[x].to_string();
        }
        return s + ")";
    }

    static void check_arity(int arity) {
        if (arity < 0 || arity > kMaxArity)
            throw DomainError("signature: arity " + std::to_string(arity) + " outside [0, " +
                              std::to_string(kMaxArity) + "]");
    }

private:
    int arity_;
    std::vector<Scalar> values_;
};

inline std::ostream& operator<<(std::ostream& os, const Signature& f) { return os << f.to_string(); }

// The crossover: x1 = x3 and x2 = x4.
inline Signature crossover() {
    Signature f = Signature::zero(4);
    for (std::uint32_t x : {0b0000u, 0b0101u, 0b1010u, 0b1111u}) f[x] = 1;
    return f;
}

namespace detail {

inline void check_var(const Signature& f, int i, const char* op) {
    if (i < 1 || i > f.arity())
        throw DomainError(std::string(op) + ": variable " + std::to_string(i) + " out of range for arity " +
                          std::to_string(f.arity()));
}

} // namespace detail

// Product function on disjoint variables. owner[k] says whether output variable
// k+1 is the next variable of f (0) or of g (1).
inline Signature tensor(const Signature& f, const Signature& g, std::span<const int> owner) {
    int n = f.arity() + g.arity();
    if (static_cast<int>(owner.size()) != n) throw DomainError("tensor: interleaving has wrong length");
    if (std::count(owner.begin(), owner.end(), 0) != f.arity() ||
        std::count(owner.begin(), owner.end(), 1) != g.arity())
        throw DomainError("tensor: malformed variable partition");
    Signature::check_arity(n);
    std::vector<Scalar> v(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < v.size(); ++x) {
        std::uint32_t xf = 0, xg = 0;
        for (int k = 1; k <= n; ++k) {
            std::uint32_t b = (x & var_bit(n, k)) ? 1u : 0u;
            if (owner[static_cast<std::size_t>(k - 1)] == 0)
                xf = (xf << 1) | b;
            else
                xg = (xg << 1) | b;
        }
        v[x] = f[xf] * g[xg];
    }
    return Signature(n, std::move(v));
}

// f's variables first, then g's.
inline Signature tensor(const Signature& f, const Signature& g) {
    std::vector<int> owner(static_cast<std::size_t>(f.arity()), 0);
    owner.resize(static_cast<std::size_t>(f.arity() + g.arity()), 1);
    return tensor(f, g, owner);
}

inline Signature tensor_power(const Signature& f, int k) {
    Signature r;
    for (int j = 0; j < k; ++j) r = tensor(r, f);
    return r;
}

// Contracts f and g along the given (f-variable, g-variable) pairs. The result
// lists f's unmatched variables in their original order, then g's.
inline Signature contract(const Signature& f, const Signature& g, std::span<const std::pair<int, int>> pairs) {
    int nf = f.arity(), ng = g.arity();
    std::vector<int> f_partner(static_cast<std::size_t>(nf + 1), 0), g_partner(static_cast<std::size_t>(ng + 1), 0);
    for (auto [a, b] : pairs) {
        detail::check_var(f, a, "contract");
        detail::check_var(g, b, "contract");
        if (f_partner[static_cast<std::size_t>(a)] || g_partner[static_cast<std::size_t>(b)])
            throw DomainError("contract: variable matched twice");
        f_partner[static_cast<std::size_t>(a)] = b;
        g_partner[static_cast<std::size_t>(b)] = a;
    }
    std::vector<int> f_free, g_free;
    for (int i = 1; i <= nf; ++i)
        if (!f_partner[static_cast<std::size_t>(i)]) f_free.push_back(i);
    for (int j = 1; j <= ng; ++j)
        if (!g_partner[static_cast<std::size_t>(j)]) g_free.push_back(j);
    int m = static_cast<int>(pairs.size());
    int n = static_cast<int>(f_free.size() + g_free.size());
    Signature::check_arity(n);
    std::vector<Scalar> v(std::size_t{1} << n);
    for (std::uint32_t out = 0; out < v.size(); ++out) {
        std::uint32_t xf = 0, xg = 0;
        int k = 1;
        for (int i : f_free) {
            if (out & var_bit(n, k++)) xf |= var_bit(nf, i);
        }
        for (int j : g_free) {
            if (out & var_bit(n, k++)) xg |= var_bit(ng, j);
        }
        Scalar acc;
        for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
            std::uint32_t yf = xf, yg = xg;
            for (int p = 0; p < m; ++p) {
                if (s & (std::uint32_t{1} << p)) {
                    yf |= var_bit(nf, pairs[static_cast<std::size_t>(p)].first);
                    yg |= var_bit(ng, pairs[static_cast<std::size_t>(p)].second);
                }
            }
            const Scalar& a = f[yf];
            if (a.is_zero()) continue;
            const Scalar& b = g[yg];
            if (b.is_zero()) continue;
            acc += a * b;
        }
        v[out] = std::move(acc);
    }
    return Signature(n, std::move(v));
}

// f with x_i fixed to b.
inline Signature pin(const Signature& f, int i, int b) {
    detail::check_var(f, i, "pin");
    int n = f.arity();
    std::vector<Scalar> v(std::size_t{1} << (n - 1));
    std::uint32_t bit = var_bit(n, i);
    std::uint32_t low = bit - 1;
    for (std::uint32_t y = 0; y < v.size(); ++y) {
        std::uint32_t x = ((y & ~low) << 1) | (y & low) | (b ? bit : 0u);
        v[y] = f[x];
    }
    return Signature(n - 1, std::move(v));
}

// Planar derivative: g's inputs 1..m are joined to f's edges i-1, ..., i-m
// (mod n, clockwise). The unmatched variables of f keep their order.
inline Signature derivative(const Signature& f, const Signature& g, int position) {
    int n = f.arity(), m = g.arity();
    if (m > n) throw DomainError("derivative: arity of g exceeds arity of f");
    if (n == 0) return contract(f, g, {});
    if (position < 1 || position > n) throw DomainError("derivative: position out of range");
    std::vector<std::pair<int, int>> pairs;
    for (int j = 1; j <= m; ++j) {
        int e = (((position - j - 1) % n) + n) % n + 1;
        pairs.emplace_back(e, j);
    }
    return contract(f, g, pairs);
}

// The derivative for symmetric f, where the attachment point does not matter.
inline Signature derivative(const Signature& f, const Signature& g) {
    if (!f.is_symmetric()) throw DomainError("derivative: position required for asymmetric f");
    return derivative(f, g, f.arity() == 0 ? 1 : g.arity() % f.arity() + 1);
}

// k successive derivatives by g.
inline Signature derivative_power(const Signature& f, const Signature& g, int k) {
    Signature r = f;
    for (int j = 0; j < k; ++j) r = derivative(r, g, r.arity() == 0 ? 1 : g.arity() % r.arity() + 1);
    return r;
}

// A copy of the unary u on every edge of f indexed by `vars`.
inline Signature derivative_unary(const Signature& f, const Signature& u, std::span<const int> vars) {
    if (u.arity() != 1) throw DomainError("derivative_unary: u must be unary");
    std::vector<int> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Signature r = f;
    for (int i : sorted) {
        detail::check_var(r, i, "derivative_unary");
        r = contract(r, u, std::vector<std::pair<int, int>>{{i, 1}});
    }
    return r;
}

// One counterclockwise step: g(x1, ..., xn) = f(x2, ..., xn, x1).
inline Signature rotate(const Signature& f) {
    int n = f.arity();
    if (n <= 1) return f;
    std::vector<Scalar> v(f.size());
    std::uint32_t top = var_bit(n, 1);
    for (std::uint32_t x = 0; x < v.size(); ++x) {
        // f's argument is (x2, ..., xn, x1).
        std::uint32_t y = ((x << 1) & (2 * top - 1)) | ((x & top) ? 1u : 0u);
        v[x] = f[y];
    }
    return Signature(n, std::move(v));
}

// g(..., x_i, ...) = f(..., not x_i, ...).
inline Signature flip_var(const Signature& f, int i) {
    detail::check_var(f, i, "flip_var");
    std::uint32_t bit = var_bit(f.arity(), i);
    std::vector<Scalar> v(f.size());
    for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = f[x ^ bit];
    return Signature(f.arity(), std::move(v));
}

// Signature matrices. Rows are indexed by x1..xk. With Reversed columns the
// column index is x_n x_{n-1} ... x_{k+1} (so M_{x1x2,x4x3} for arity 4 and
// linking is matrix multiplication); Natural keeps x_{k+1} ... x_n.
enum class ColumnOrder { Reversed, Natural };

struct SignatureMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Scalar> entries;  // row-major

    const Scalar& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r * cols + c)]; }
    Scalar& operator()(int r, int c) { return entries[static_cast<std::size_t>(r * cols + c)]; }

    friend bool operator==(const SignatureMatrix&, const SignatureMatrix&) = default;

    friend SignatureMatrix operator*(const SignatureMatrix& a, const SignatureMatrix& b) {
        if (a.cols != b.rows) throw DomainError("matrix product: shape mismatch");
        SignatureMatrix c{a.rows, b.cols, std::vector<Scalar>(static_cast<std::size_t>(a.rows * b.cols))};
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                if (a(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
};

inline SignatureMatrix signature_matrix(const Signature& f, int split, ColumnOrder order = ColumnOrder::Reversed) {
    int n = f.arity();
    if (split < 0 || split > n) throw DomainError("signature_matrix: split out of range");
    int rest = n - split;
    SignatureMatrix m{1 << split, 1 << rest, std::vector<Scalar>(f.size())};
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        int r = static_cast<int>(x >> rest);
        std::uint32_t tail = x & ((std::uint32_t{1} << rest) - 1);
        int c = static_cast<int>(tail);
        if (order == ColumnOrder::Reversed) {
            c = 0;
            for (int b = 0; b < rest; ++b)
                if (tail & (std::uint32_t{1} << b)) c |= 1 << (rest - 1 - b);
        }
        m(r, c) = f[x];
    }
    return m;
}

// Inverse of signature_matrix.
inline Signature from_signature_matrix(const SignatureMatrix& m, ColumnOrder order = ColumnOrder::Reversed) {
    int split = std::countr_zero(static_cast<unsigned>(m.rows));
    int rest = std::countr_zero(static_cast<unsigned>(m.cols));
    Signature f = Signature::zero(split + rest);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        int r = static_cast<int>(x >> rest);
        std::uint32_t tail = x & ((std::uint32_t{1} << rest) - 1);
        int c = static_cast<int>(tail);
        if (order == ColumnOrder::Reversed) {
            c = 0;
            for (int b = 0; b < rest; ++b)
                if (tail & (std::uint32_t{1} << b)) c |= 1 << (rest - 1 - b);
        }
        f[x] = m(r, c);
    }
    return f;
}

// Joins f's (x3, x4) to g's (x2, x1). M(link(f, g)) = M(f) * M(g).
inline Signature link(const Signature& f, const Signature& g) {
    if (f.arity() != 4 || g.arity() != 4) throw DomainError("link: both signatures must have arity 4");
    std::vector<std::pair<int, int>> pairs{{3, 2}, {4, 1}};
    Signature c = contract(f, g, pairs);  // variables (f.x1, f.x2, g.x3, g.x4)
    return c;
}

inline std::vector<std::uint32_t> support(const Signature& f) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (!f[x].is_zero()) s.push_back(x);
    return s;
}

// f = scale * normalized, with the first nonzero entry of normalized equal to 1.
inline std::pair<Scalar, Signature> normalize(const Signature& f) {
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        if (!f[x].is_zero()) {
            Scalar lambda = f[x];
            return {lambda, f.scaled(lambda.inverse())};
        }
    }
    throw DomainError("normalize: signature is identically zero");
}

} // namespace holant

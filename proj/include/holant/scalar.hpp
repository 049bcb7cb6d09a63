#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta8).
//
// A Scalar is a0 + a1*z + a2*z^2 + a3*z^3 with z = exp(i*pi/4), z^4 = -1 and
// rational a_j. In particular z^2 is the imaginary unit i, z - z^3 is sqrt(2)
// and every w with w^4 = -1 is an odd power of z.
//
// Storage is a common-denominator form (n0, n1, n2, n3) / d with d > 0 and
// gcd(n0, n1, n2, n3, d) = 1. Small values live in int64 words; anything that
// overflows is promoted to arbitrary precision and demoted again once it fits,
// so the representation of a value is unique and equality is word-wise.

#include "holant/error.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace holant {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr i128 kInt64Max = static_cast<i128>(INT64_MAX);

inline u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1u : static_cast<u128>(v); }

inline u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool fits64(i128 v) { return v >= -kInt64Max && v <= kInt64Max; }

inline BigInt to_big(i128 v) {
    u128 mag = abs128(v);
    BigInt r = BigInt(static_cast<std::uint64_t>(mag >> 64));
    r <<= 64;
    r += BigInt(static_cast<std::uint64_t>(mag));
    return v < 0 ? BigInt(-r) : r;
}

} // namespace detail

class Scalar {
public:
    Scalar() = default;

    // Implicit so that integer literals can be used wherever a Scalar is expected.
    Scalar(long long v) : num_{static_cast<std::int64_t>(v), 0, 0, 0} {  // NOLINT
        if (v == INT64_MIN) *this = from_big({BigInt(v), 0, 0, 0}, BigInt(1));
    }
    Scalar(int v) : Scalar(static_cast<long long>(v)) {}  // NOLINT
    Scalar(long v) : Scalar(static_cast<long long>(v)) {}  // NOLINT

    static Scalar from_rational(const BigRational& q) {
        return from_big({boost::multiprecision::numerator(q), 0, 0, 0},
                        boost::multiprecision::denominator(q));
    }

    static Scalar from_coefficients(const std::array<BigRational, 4>& c) {
        BigInt den = 1;
        for (const auto& q : c) {
            const BigInt& d = boost::multiprecision::denominator(q);
            den = den / boost::multiprecision::gcd(den, d) * d;
        }
        std::array<BigInt, 4> num;
        for (int j = 0; j < 4; ++j)
            num[j] = boost::multiprecision::numerator(c[j]) * (den / boost::multiprecision::denominator(c[j]));
        return from_big(num, den);
    }

    // p/q with q != 0.
    static Scalar fraction(long long p, long long q) {
        if (q == 0) throw DomainError("scalar: zero denominator");
        return from_rational(BigRational(BigInt(p), BigInt(q)));
    }

    // z^k for any integer k.
    static Scalar zeta(int k) {
        int e = ((k % 8) + 8) % 8;
        Scalar s;
        s.num_ = {0, 0, 0, 0};
        s.num_[e % 4] = e >= 4 ? -1 : 1;
        return s;
    }

    static Scalar imag_unit() { return zeta(2); }
    static Scalar power_of_i(int k) { return zeta(2 * (((k % 4) + 4) % 4)); }
    static Scalar sqrt2() { return zeta(1) - zeta(3); }

    BigRational coefficient(int j) const {
        if (big_) return BigRational(big_->num[j], big_->den);
        return BigRational(BigInt(num_[j]), BigInt(den_));
    }

    std::array<BigRational, 4> coefficients() const {
        return {coefficient(0), coefficient(1), coefficient(2), coefficient(3)};
    }

    bool is_zero() const { return !big_ && num_[0] == 0 && num_[1] == 0 && num_[2] == 0 && num_[3] == 0; }
    bool is_one() const { return !big_ && den_ == 1 && num_[0] == 1 && num_[1] == 0 && num_[2] == 0 && num_[3] == 0; }

    bool is_rational() const {
        if (big_) return big_->num[1] == 0 && big_->num[2] == 0 && big_->num[3] == 0;
        return num_[1] == 0 && num_[2] == 0 && num_[3] == 0;
    }

    // Elements of Q(i), i.e. no odd powers of z.
    bool is_gaussian() const {
        if (big_) return big_->num[1] == 0 && big_->num[3] == 0;
        return num_[1] == 0 && num_[3] == 0;
    }

    Scalar operator-() const {
        if (big_) {
            auto b = *big_;
            for (auto& v : b.num) v = -v;
            return from_big(b.num, b.den);
        }
        Scalar r = *this;
        for (auto& v : r.num_) v = -v;
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            std::array<detail::i128, 4> n;
            detail::i128 d;
            if (a.den_ == b.den_) {
                for (int j = 0; j < 4; ++j) n[j] = static_cast<detail::i128>(a.num_[j]) + b.num_[j];
                d = a.den_;
            } else {
                for (int j = 0; j < 4; ++j)
                    n[j] = static_cast<detail::i128>(a.num_[j]) * b.den_ + static_cast<detail::i128>(b.num_[j]) * a.den_;
                d = static_cast<detail::i128>(a.den_) * b.den_;
            }
            return from_i128(n, d);
        }
        Big x = a.as_big(), y = b.as_big();
        std::array<BigInt, 4> n;
        for (int j = 0; j < 4; ++j) n[j] = x.num[j] * y.den + y.num[j] * x.den;
        return from_big(n, x.den * y.den);
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            if (a.is_zero() || b.is_zero()) return Scalar();
            std::array<detail::i128, 4> n{0, 0, 0, 0};
            bool overflow = false;
            for (int i = 0; i < 4 && !overflow; ++i) {
                if (a.num_[i] == 0) continue;
                for (int j = 0; j < 4; ++j) {
                    if (b.num_[j] == 0) continue;
                    detail::i128 p = static_cast<detail::i128>(a.num_[i]) * b.num_[j];
                    int k = i + j;
                    if (k >= 4) {
                        k -= 4;
                        p = -p;
                    }
                    if (__builtin_add_overflow(n[k], p, &n[k])) {
                        overflow = true;
                        break;
                    }
                }
            }
            if (!overflow) return from_i128(n, static_cast<detail::i128>(a.den_) * b.den_);
        }
        Big x = a.as_big(), y = b.as_big();
        std::array<BigInt, 4> n;
        for (int i = 0; i < 4; ++i) {
            if (x.num[i] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                int k = i + j;
                if (k >= 4)
                    n[k - 4] -= x.num[i] * y.num[j];
                else
                    n[k] += x.num[i] * y.num[j];
            }
        }
        return from_big(n, x.den * y.den);
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // Field automorphism z -> z^k for odd k. galois(7) is complex conjugation.
    Scalar galois(int k) const {
        k = ((k % 8) + 8) % 8;
        if (k % 2 == 0) throw DomainError("scalar: galois exponent must be odd");
        Big x = as_big();
        std::array<BigInt, 4> n;
        for (int j = 0; j < 4; ++j) {
            int e = (j * k) % 8;
            if (e >= 4)
                n[e - 4] -= x.num[j];
            else
                n[e] += x.num[j];
        }
        return from_big(n, x.den);
    }

    Scalar conj() const { return galois(7); }

    // The norm down to Q: product of the four conjugates.
    BigRational norm() const {
        Scalar n = *this * galois(3) * galois(5) * galois(7);
        return n.coefficient(0);
    }

    Scalar inverse() const {
        if (is_zero()) throw DomainError("scalar: division by zero");
        Scalar others = galois(3) * galois(5) * galois(7);
        Scalar n = *this * others;
        // n is rational by Galois invariance.
        BigRational q = n.coefficient(0);
        Big o = others.as_big();
        BigInt p = boost::multiprecision::numerator(q), r = boost::multiprecision::denominator(q);
        if (p < 0) {
            p = -p;
            r = -r;
        }
        for (auto& v : o.num) v *= r;
        return from_big(o.num, o.den * p);
    }

    Scalar pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar result(1), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    // k in {0,1,2,3} with *this == i^k, if any.
    std::optional<int> as_power_of_i() const {
        if (big_ || den_ != 1 || num_[1] != 0 || num_[3] != 0) return std::nullopt;
        if (num_[0] == 1 && num_[2] == 0) return 0;
        if (num_[0] == 0 && num_[2] == 1) return 1;
        if (num_[0] == -1 && num_[2] == 0) return 2;
        if (num_[0] == 0 && num_[2] == -1) return 3;
        return std::nullopt;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) return a.den_ == b.den_ && a.num_ == b.num_;
        if (a.big_ && b.big_) return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
        return false;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order on coefficient vectors (a0, a1, a2, a3); not a field order.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            for (int j = 0; j < 4; ++j) {
                detail::i128 l = static_cast<detail::i128>(a.num_[j]) * b.den_;
                detail::i128 r = static_cast<detail::i128>(b.num_[j]) * a.den_;
                if (l != r) return l < r;
            }
            return false;
        }
        for (int j = 0; j < 4; ++j) {
            BigRational l = a.coefficient(j), r = b.coefficient(j);
            if (l != r) return l < r;
        }
        return false;
    }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
        if (big_) {
            for (const auto& v : big_->num) mix(std::hash<std::string>{}(v.str()));
            mix(std::hash<std::string>{}(big_->den.str()));
        } else {
            for (auto v : num_) mix(std::hash<std::int64_t>{}(v));
            mix(std::hash<std::int64_t>{}(den_));
        }
        return h;
    }

    // Human-readable form. Gaussian rationals print as "a+bi", everything else
    // in the power basis with z = zeta8.
    std::string to_string() const {
        auto c = coefficients();
        auto fmt = [](const BigRational& q) {
            std::ostringstream os;
            os << q;
            return os.str();
        };
        if (is_zero()) return "0";
        const char* basis_general[4] = {"", "z", "z^2", "z^3"};
        const char* basis_gauss[4] = {"", "", "i", ""};
        const char** basis = is_gaussian() ? basis_gauss : basis_general;
        std::string out;
        for (int j = 0; j < 4; ++j) {
            if (c[j] == 0) continue;
            BigRational v = c[j];
            bool neg = v < 0;
            if (neg) v = -v;
            if (!out.empty())
                out += neg ? "-" : "+";
            else if (neg)
                out += "-";
            if (j == 0)
                out += fmt(v);
            else if (v == 1)
                out += basis[j];
            else
                out += fmt(v) + "*" + basis[j];
        }
        return out;
    }

private:
    struct Big {
        std::array<BigInt, 4> num;
        BigInt den;
    };

    Big as_big() const {
        if (big_) return *big_;
        return Big{{BigInt(num_[0]), BigInt(num_[1]), BigInt(num_[2]), BigInt(num_[3])}, BigInt(den_)};
    }

    static Scalar from_i128(std::array<detail::i128, 4> n, detail::i128 d) {
        detail::u128 g = detail::abs128(d);
        for (auto v : n) g = detail::gcd128(g, detail::abs128(v));
        if (g > 1) {
            for (auto& v : n) v /= static_cast<detail::i128>(g);
            d /= static_cast<detail::i128>(g);
        }
        bool small = detail::fits64(d);
        for (auto v : n) small = small && detail::fits64(v);
        if (small) {
            Scalar s;
            for (int j = 0; j < 4; ++j) s.num_[j] = static_cast<std::int64_t>(n[j]);
            s.den_ = static_cast<std::int64_t>(d);
            if (s.num_ == std::array<std::int64_t, 4>{0, 0, 0, 0}) s.den_ = 1;
            return s;
        }
        return from_big({detail::to_big(n[0]), detail::to_big(n[1]), detail::to_big(n[2]), detail::to_big(n[3])},
                        detail::to_big(d));
    }

    static Scalar from_big(std::array<BigInt, 4> n, BigInt d) {
        if (d == 0) throw DomainError("scalar: zero denominator");
        if (d < 0) {
            d = -d;
            for (auto& v : n) v = -v;
        }
        BigInt g = d;
        for (const auto& v : n) g = boost::multiprecision::gcd(g, v);
        if (g > 1) {
            for (auto& v : n) v /= g;
            d /= g;
        }
        if (n[0] == 0 && n[1] == 0 && n[2] == 0 && n[3] == 0) return Scalar();
        static const BigInt lim = BigInt(INT64_MAX);
        bool small = d <= lim;
        for (const auto& v : n) small = small && v <= lim && v >= -lim;
        Scalar s;
        if (small) {
            for (int j = 0; j < 4; ++j) s.num_[j] = static_cast<std::int64_t>(n[j]);
            s.den_ = static_cast<std::int64_t>(d);
            return s;
        }
        s.big_ = std::make_shared<const Big>(Big{std::move(n), std::move(d)});
        return s;
    }

    std::array<std::int64_t, 4> num_{0, 0, 0, 0};
    std::int64_t den_ = 1;
    std::shared_ptr<const Big> big_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

struct ScalarHash {
    std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

} // namespace holant

#pragma once

// Membership tests for the affine, product-type and matchgate classes and for
// their Hadamard / diagonal transforms.

#include "holant/gf2.hpp"
#include "holant/signature.hpp"
#include "holant/transform.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace holant {

// ---------------------------------------------------------------- parity

enum class Parity { Even, Odd, None, Zero };

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::None: return "none";
        case Parity::Zero: return "zero";
    }
    return "?";
}

inline Parity parity_of(const Signature& f) {
    bool even = false, odd = false;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        if (f[x].is_zero()) continue;
        (popcount(x) % 2 ? odd : even) = true;
    }
    if (even && odd) return Parity::None;
    if (even) return Parity::Even;
    if (odd) return Parity::Odd;
    return Parity::Zero;
}

// ---------------------------------------------------------------- degeneracy

// f = scale * (u1 (x) u2 (x) ... (x) un).
struct DegenerateForm {
    Scalar scale{1};
    std::vector<Signature> unaries;
};

inline std::optional<DegenerateForm> degenerate_form(const Signature& f) {
    int n = f.arity();
    DegenerateForm out;
    auto nz = support(f);
    if (nz.empty()) {
        out.scale = 0;
        out.unaries.assign(static_cast<std::size_t>(n), Signature::symmetric({1, 1}));
        return out;
    }
    if (n == 0) {
        out.scale = f[0];
        return out;
    }
    std::uint32_t alpha = nz.front();
    for (int i = 1; i <= n; ++i) {
        std::uint32_t bit = var_bit(n, i);
        std::uint32_t lo = alpha & ~bit;
        out.unaries.push_back(Signature(1, {f[lo], f[lo | bit]}));
    }
    out.scale = f[alpha].pow(-(n - 1));
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        Scalar p = out.scale;
        for (int i = 1; i <= n && !p.is_zero(); ++i)
            p *= out.unaries[static_cast<std::size_t>(i - 1)][(x & var_bit(n, i)) ? 1 : 0];
        if (p != f[x]) return std::nullopt;
    }
    return out;
}

inline bool is_degenerate(const Signature& f) { return degenerate_form(f).has_value(); }

// ---------------------------------------------------------------- affine support

// supp(f) = { x : constraints hold }, an affine subspace of dimension `dim`.
// The free variables are the echelon pivots scanned from x1, which is the
// lexicographically smallest set that parametrizes the support.
struct AffineSupport {
    int arity = 0;
    int dim = 0;
    std::vector<int> free_vars;           // ascending, 1-based
    std::uint32_t base = 0;               // one support point
    std::vector<std::uint32_t> basis;     // basis[t] has leading variable free_vars[t]
    std::vector<gf2::Row> constraints;    // mask . x = rhs, one per dependent variable

    // Support point whose free variables take the values in y (first free var as MSB).
    std::uint32_t point(std::uint32_t y) const {
        std::uint32_t x = base;
        for (int t = 0; t < dim; ++t) {
            std::uint32_t want = (y >> (dim - 1 - t)) & 1u;
            std::uint32_t have = (x & var_bit(arity, free_vars[static_cast<std::size_t>(t)])) ? 1u : 0u;
            if (want != have) x ^= basis[static_cast<std::size_t>(t)];
        }
        return x;
    }

    bool contains(std::uint32_t x) const {
        for (const auto& r : constraints)
            if ((popcount(r.mask & x) & 1) != static_cast<int>(r.rhs)) return false;
        return true;
    }
};

inline std::optional<AffineSupport> affine_support_of_points(const std::vector<std::uint32_t>& pts, int n) {
    if (pts.empty()) return std::nullopt;
    AffineSupport s;
    s.arity = n;
    s.base = pts.front();
    std::vector<gf2::Row> diffs;
    for (std::uint32_t p : pts) diffs.push_back({p ^ s.base, false});
    gf2::Echelon e = gf2::reduce(std::move(diffs));
    s.dim = static_cast<int>(e.rows.size());
    if (s.dim >= 32 || pts.size() != (std::size_t{1} << s.dim)) return std::nullopt;
    // order the basis by pivot, x1 first
    std::vector<std::size_t> order(e.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e.pivots[a] > e.pivots[b]; });
    std::uint32_t pivot_mask = 0;
    for (std::size_t k : order) {
        s.basis.push_back(e.rows[k].mask);
        s.free_vars.push_back(n - std::countr_zero(e.pivots[k]));
        pivot_mask |= e.pivots[k];
    }
    // Dependent variable j: x_j = base_j + sum_t basis[t]_j (x_{p_t} + base_{p_t}).
    for (int j = 1; j <= n; ++j) {
        std::uint32_t bj = var_bit(n, j);
        if (pivot_mask & bj) continue;
        gf2::Row r{bj, (s.base & bj) != 0};
        for (int t = 0; t < s.dim; ++t) {
            if (!(s.basis[static_cast<std::size_t>(t)] & bj)) continue;
            std::uint32_t pb = var_bit(n, s.free_vars[static_cast<std::size_t>(t)]);
            r.mask ^= pb;
            r.rhs ^= (s.base & pb) != 0;
        }
        s.constraints.push_back(r);
    }
    return s;
}

inline std::optional<AffineSupport> affine_support(const Signature& f) {
    return affine_support_of_points(support(f), f.arity());
}

// The compressed signature of f for the variable set X: f read on the unique
// support point with the given values of X.
inline Signature compress(const Signature& f, const std::vector<int>& X) {
    auto s = affine_support(f);
    if (!s) throw DomainError("compress: support is not affine");
    int k = static_cast<int>(X.size());
    if (k != s->dim) throw DomainError("compress: variable set does not parametrize the support");
    Signature out = Signature::zero(k);
    std::vector<char> seen(out.size(), 0);
    for (std::uint32_t y = 0; y < (std::uint32_t{1} << k); ++y) {
        std::uint32_t x = s->point(y);
        std::uint32_t proj = 0;
        for (int v : X) {
            detail::check_var(f, v, "compress");
            proj = (proj << 1) | ((x & var_bit(f.arity(), v)) ? 1u : 0u);
        }
        if (seen[proj]) throw DomainError("compress: variable set does not parametrize the support");
        seen[proj] = 1;
        out[proj] = f[x];
    }
    return out;
}

// ---------------------------------------------------------------- Z4 polynomials

// Multilinear polynomial over Z4. coeff[m] is the coefficient of the monomial
// prod_{i : var_bit(arity, i) in m} x_i.
struct Z4Polynomial {
    int arity = 0;
    std::vector<std::uint8_t> coeff;

    int degree() const {
        int d = -1;
        for (std::uint32_t m = 0; m < coeff.size(); ++m)
            if (coeff[m]) d = std::max(d, popcount(m));
        return d < 0 ? 0 : d;
    }

    int evaluate(std::uint32_t x) const {
        int s = 0;
        for (std::uint32_t m = 0; m < coeff.size(); ++m)
            if ((m & x) == m) s += coeff[m];
        return s & 3;
    }

    std::string to_string() const {
        std::string s;
        for (std::uint32_t m = 0; m < coeff.size(); ++m) {
            if (!coeff[m]) continue;
            if (!s.empty()) s += " + ";
            if (coeff[m] != 1 || m == 0) s += std::to_string(coeff[m]);
            for (int i = 1; i <= arity; ++i)
                if (m & var_bit(arity, i)) s += "x" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }
};

// The unique P with f = i^P. Every entry must be a power of i.
inline Z4Polynomial z4_polynomial(const Signature& f) {
    Z4Polynomial p{f.arity(), std::vector<std::uint8_t>(f.size())};
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        auto k = f[x].as_power_of_i();
        if (!k) throw DomainError("z4_polynomial: entry " + bit_string(x, f.arity()) + " is not a power of i");
        p.coeff[x] = static_cast<std::uint8_t>(*k);
    }
    // Moebius inversion over the subset lattice, mod 4.
    for (int i = 1; i <= f.arity(); ++i) {
        std::uint32_t bit = var_bit(f.arity(), i);
        for (std::uint32_t m = 0; m < p.coeff.size(); ++m)
            if (m & bit) p.coeff[m] = static_cast<std::uint8_t>((p.coeff[m] - p.coeff[m ^ bit] + 4) & 3);
    }
    return p;
}

// ---------------------------------------------------------------- affine class

// f(x) = lambda * chi_{support}(x) * i^{q(x restricted to free vars)}.
struct AffineForm {
    Scalar lambda;
    AffineSupport support;
    Z4Polynomial q;  // over the free variables, in order
};

struct AffineCheck {
    bool member = false;
    std::optional<AffineForm> form;  // absent for the zero signature
    std::string reason;              // why membership fails
    std::vector<int> monomial;       // offending monomial, in original variables
    std::optional<std::uint32_t> entry;
};

inline AffineCheck affine_check(const Signature& f) {
    AffineCheck out;
    auto nz = support(f);
    if (nz.empty()) {
        out.member = true;
        return out;
    }
    Scalar lambda = f[nz.front()];
    Scalar inv = lambda.inverse();
    for (std::uint32_t x : nz) {
        if (!(f[x] * inv).as_power_of_i()) {
            out.reason = "entry is not lambda times a power of i";
            out.entry = x;
            return out;
        }
    }
    auto s = affine_support_of_points(nz, f.arity());
    if (!s) {
        out.reason = "support is not an affine subspace";
        return out;
    }
    Signature c = compress(f.scaled(inv), s->free_vars);
    Z4Polynomial q = z4_polynomial(c);
    for (std::uint32_t m = 0; m < q.coeff.size(); ++m) {
        int deg = popcount(m);
        bool bad = (deg >= 3 && q.coeff[m]) || (deg == 2 && (q.coeff[m] & 1));
        if (!bad) continue;
        out.reason = deg >= 3 ? "quadratic form has a monomial of degree above 2" : "cross term with odd coefficient";
        for (int t = 1; t <= q.arity; ++t)
            if (m & var_bit(q.arity, t)) out.monomial.push_back(s->free_vars[static_cast<std::size_t>(t - 1)]);
        return out;
    }
    out.member = true;
    out.form = AffineForm{lambda, *s, q};
    return out;
}

inline bool is_affine(const Signature& f) { return affine_check(f).member; }

// ---------------------------------------------------------------- product type

// Structure of a nonzero product-type signature: every variable is either
// fixed, or belongs to a block of variables that flip together; the value is
// scale * prod_b weight[b][x_{pivot b}] on the support.
struct ProductForm {
    bool zero = false;
    Scalar scale{1};
    std::vector<int> fixed;   // per variable (0-based): -1 if in a block, else its value
    std::vector<int> block;   // per variable: block index or -1
    std::vector<int> flip;    // per variable in a block: x_v = x_pivot xor flip
    std::vector<int> pivot;   // per block: 1-based pivot variable
    std::vector<std::array<Scalar, 2>> weight;

    Scalar value(std::uint32_t x, int n) const {
        if (zero) return Scalar();
        Scalar v = scale;
        for (int i = 1; i <= n; ++i) {
            int xi = (x & var_bit(n, i)) ? 1 : 0;
            std::size_t k = static_cast<std::size_t>(i - 1);
            if (fixed[k] >= 0) {
                if (xi != fixed[k]) return Scalar();
                continue;
            }
            int p = pivot[static_cast<std::size_t>(block[k])];
            int xp = (x & var_bit(n, p)) ? 1 : 0;
            if (xi != (xp ^ flip[k])) return Scalar();
            if (i == p) v *= weight[static_cast<std::size_t>(block[k])][static_cast<std::size_t>(xp)];
        }
        return v;
    }
};

// A nonzero f is product type iff its support is an affine subspace spanned by
// pairwise disjoint vectors and the compressed signature is degenerate.
inline std::optional<ProductForm> product_form(const Signature& f) {
    int n = f.arity();
    ProductForm out;
    auto nz = support(f);
    if (nz.empty()) {
        out.zero = true;
        return out;
    }
    auto s = affine_support_of_points(nz, n);
    if (!s) return std::nullopt;
    std::uint32_t seen = 0;
    for (std::uint32_t b : s->basis) {
        if (seen & b) return std::nullopt;
        seen |= b;
    }
    auto dg = degenerate_form(compress(f, s->free_vars));
    if (!dg) return std::nullopt;
    out.scale = dg->scale;
    out.fixed.assign(static_cast<std::size_t>(n), -1);
    out.block.assign(static_cast<std::size_t>(n), -1);
    out.flip.assign(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < s->dim; ++t) {
        int p = s->free_vars[static_cast<std::size_t>(t)];
        out.pivot.push_back(p);
        const Signature& u = dg->unaries[static_cast<std::size_t>(t)];
        out.weight.push_back({u[0], u[1]});
        int bp = (s->base & var_bit(n, p)) ? 1 : 0;
        for (int i = 1; i <= n; ++i) {
            if (!(s->basis[static_cast<std::size_t>(t)] & var_bit(n, i))) continue;
            out.block[static_cast<std::size_t>(i - 1)] = t;
            out.flip[static_cast<std::size_t>(i - 1)] = ((s->base & var_bit(n, i)) ? 1 : 0) ^ bp;
        }
    }
    for (int i = 1; i <= n; ++i)
        if (out.block[static_cast<std::size_t>(i - 1)] < 0)
            out.fixed[static_cast<std::size_t>(i - 1)] = (s->base & var_bit(n, i)) ? 1 : 0;
    return out;
}

// Zero counts as product type (a zero unary tensored with anything).
inline bool is_product(const Signature& f) { return product_form(f).has_value(); }

// ---------------------------------------------------------------- primitive decomposition

struct PrimitiveFactor {
    std::vector<int> vars;  // ascending, 1-based
    Signature sig;
};

namespace detail {

// Index of f with the variables in `vars` taking the bits of y (first var as MSB)
// and every other variable as in alpha.
inline std::uint32_t overlay(std::uint32_t alpha, const std::vector<int>& vars, std::uint32_t y, int n) {
    std::uint32_t x = alpha;
    int k = static_cast<int>(vars.size());
    for (int t = 0; t < k; ++t) {
        std::uint32_t bit = var_bit(n, vars[static_cast<std::size_t>(t)]);
        if ((y >> (k - 1 - t)) & 1u)
            x |= bit;
        else
            x &= ~bit;
    }
    return x;
}

inline Signature restriction(const Signature& f, std::uint32_t alpha, const std::vector<int>& vars) {
    int k = static_cast<int>(vars.size());
    std::vector<Scalar> v(std::size_t{1} << k);
    for (std::uint32_t y = 0; y < v.size(); ++y) v[y] = f[overlay(alpha, vars, y, f.arity())];
    return Signature(k, std::move(v));
}

// Does f (with variables outside S u T held at alpha) split as g(S) h(T)?
inline bool splits(const Signature& f, std::uint32_t alpha, std::uint32_t s_mask, std::uint32_t t_mask) {
    const Scalar& fa = f[alpha];
    std::uint32_t both = s_mask | t_mask;
    // iterate over all sub-masks of `both`
    std::uint32_t sub = 0;
    do {
        std::uint32_t x = (alpha & ~both) | sub;
        const Scalar& fx = f[x];
        std::uint32_t xs = (alpha & ~s_mask) | (x & s_mask);  // x on S, alpha elsewhere
        std::uint32_t xt = (alpha & ~t_mask) | (x & t_mask);
        if (fx * fa != f[xs] * f[xt]) return false;
        sub = (sub - both) & both;
    } while (sub != 0);
    return true;
}

} // namespace detail

// Finest factorization f = c * g1 (x) ... (x) gk over a partition of the
// variables; the constant is folded into the first factor.
inline std::vector<PrimitiveFactor> primitive_decomposition(const Signature& f) {
    int n = f.arity();
    auto nz = support(f);
    if (nz.empty()) throw DomainError("primitive_decomposition: signature is identically zero");
    std::uint32_t alpha = nz.front();

    // i ~ j when some restriction has a nonzero 2x2 minor on (x_i, x_j).
    std::vector<int> comp(static_cast<std::size_t>(n + 1));
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[static_cast<std::size_t>(v)] != v) v = comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
        return v;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (find(i) == find(j)) continue;
            std::uint32_t bi = var_bit(n, i), bj = var_bit(n, j);
            for (std::uint32_t x = 0; x < f.size(); ++x) {
                if (x & (bi | bj)) continue;
                if (f[x] * f[x | bi | bj] != f[x | bi] * f[x | bj]) {
                    comp[static_cast<std::size_t>(find(i))] = find(j);
                    break;
                }
            }
        }

    std::vector<int> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 1);
    std::vector<PrimitiveFactor> out;
    while (!remaining.empty()) {
        // group remaining variables by component
        std::map<int, std::uint32_t> groups;
        for (int v : remaining) groups[find(v)] |= var_bit(n, v);
        std::uint32_t all = 0;
        for (auto& [r, m] : groups) all |= m;
        std::uint32_t head = groups[find(remaining.front())];
        std::vector<std::uint32_t> others;
        for (auto& [r, m] : groups)
            if (m != head) others.push_back(m);
        // candidate unions containing head, smallest first
        std::vector<std::uint32_t> cands;
        for (std::uint32_t sel = 0; sel < (std::uint32_t{1} << others.size()); ++sel) {
            std::uint32_t m = head;
            for (std::size_t k = 0; k < others.size(); ++k)
                if (sel & (std::uint32_t{1} << k)) m |= others[k];
            cands.push_back(m);
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](std::uint32_t a, std::uint32_t b) { return popcount(a) < popcount(b); });
        std::uint32_t block = all;
        for (std::uint32_t m : cands) {
            if (m == all || detail::splits(f, alpha, m, all & ~m)) {
                block = m;
                break;
            }
        }
        PrimitiveFactor pf;
        std::vector<int> rest;
        for (int v : remaining) (block & var_bit(n, v) ? pf.vars : rest).push_back(v);
        pf.sig = detail::restriction(f, alpha, pf.vars);
        out.push_back(std::move(pf));
        remaining = std::move(rest);
    }
    if (out.size() > 1) {
        Scalar c = f[alpha].pow(-static_cast<int>(out.size() - 1));
        out.front().sig = out.front().sig.scaled(c);
    }
    if (n == 0) out.push_back({{}, f});
    return out;
}

// Support inside a pair of antipodal points.
inline bool in_generalized_equality_class(const Signature& f) {
    auto s = support(f);
    if (s.size() <= 1) return true;
    return s.size() == 2 && (s[0] ^ s[1]) == static_cast<std::uint32_t>(f.size() - 1);
}

// ---------------------------------------------------------------- matchgates

struct MatchgateCheck {
    bool member = false;
    bool parity_failed = false;
    std::uint32_t alpha = 0;           // violated identity: pattern
    std::vector<int> positions;        // and position vector
};

namespace detail {

// Position sets of even size >= 4, ordered by (size, lexicographic).
inline std::vector<std::uint32_t> mgi_positions(int n) {
    std::vector<std::vector<int>> sets;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        int c = popcount(m);
        if (c < 4 || c % 2) continue;
        std::vector<int> s;
        for (int i = 1; i <= n; ++i)
            if (m & (std::uint32_t{1} << (i - 1))) s.push_back(i);
        sets.push_back(s);
    }
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<std::uint32_t> masks;
    for (auto& s : sets) {
        std::uint32_t m = 0;
        for (int p : s) m |= var_bit(n, p);
        masks.push_back(m);
    }
    return masks;
}

} // namespace detail

// Parity Condition plus every Matchgate Identity. With parity in place only
// position vectors of even length >= 4 can fail.
inline MatchgateCheck matchgate_check(const Signature& f) {
    MatchgateCheck out;
    Parity p = parity_of(f);
    if (p == Parity::None) {
        out.parity_failed = true;
        return out;
    }
    if (p == Parity::Zero || f.arity() < 4) {
        out.member = true;
        return out;
    }
    int n = f.arity();
    // f_{alpha + e_p} can only be nonzero when wt(alpha) has the opposite parity
    int want = (p == Parity::Even) ? 1 : 0;
    auto positions = detail::mgi_positions(n);
    for (std::uint32_t alpha = 0; alpha < f.size(); ++alpha) {
        if (popcount(alpha) % 2 != want) continue;
        for (std::uint32_t P : positions) {
            Scalar sum;
            int i = 0;
            for (int q = 1; q <= n; ++q) {
                std::uint32_t e = var_bit(n, q);
                if (!(P & e)) continue;
                ++i;
                const Scalar& a = f[alpha ^ e];
                if (a.is_zero()) continue;
                const Scalar& b = f[alpha ^ P ^ e];
                if (b.is_zero()) continue;
                if (i % 2)
                    sum -= a * b;
                else
                    sum += a * b;
            }
            if (!sum.is_zero()) {
                out.alpha = alpha;
                for (int q = 1; q <= n; ++q)
                    if (P & var_bit(n, q)) out.positions.push_back(q);
                return out;
            }
        }
    }
    out.member = true;
    return out;
}

inline bool is_matchgate(const Signature& f) { return matchgate_check(f).member; }

// ---------------------------------------------------------------- transformed classes

// H2 M: f is in it iff H2 f is a matchgate signature (H2^{-1} = H2 / 2).
inline bool is_matchgate_hat(const Signature& f) { return is_matchgate(hadamard(f)); }

// diag(1, w) A for w = zeta8 or zeta8^3.
inline bool is_affine_dagger(const Signature& f) {
    for (int k : {1, 3})
        if (is_affine(diag_scale(f, Scalar::zeta(k).inverse()))) return true;
    return false;
}

// diag(1, w) H2 M for w = +-i.
inline bool is_matchgate_hat_dagger(const Signature& f) {
    for (int k : {1, 3})
        if (is_matchgate_hat(diag_scale(f, Scalar::power_of_i(k).inverse()))) return true;
    return false;
}

struct ClassReport {
    Parity parity = Parity::Zero;
    bool degenerate = false;
    bool affine = false;
    bool product = false;
    bool matchgate = false;
    bool matchgate_hat = false;
    bool affine_dagger = false;
    bool matchgate_hat_dagger = false;
    AffineCheck affine_witness;
    MatchgateCheck matchgate_witness;
    MatchgateCheck matchgate_hat_witness;  // for H2 f
};

inline ClassReport class_report(const Signature& f) {
    ClassReport r;
    r.parity = parity_of(f);
    r.degenerate = is_degenerate(f);
    r.affine_witness = affine_check(f);
    r.affine = r.affine_witness.member;
    r.product = is_product(f);
    r.matchgate_witness = matchgate_check(f);
    r.matchgate = r.matchgate_witness.member;
    r.matchgate_hat_witness = matchgate_check(hadamard(f));
    r.matchgate_hat = r.matchgate_hat_witness.member;
    r.affine_dagger = is_affine_dagger(f);
    r.matchgate_hat_dagger = is_matchgate_hat_dagger(f);
    return r;
}

// ---------------------------------------------------------------- transformability

enum class ClassId { Affine, Product, Matchgate };

inline const char* to_string(ClassId c) {
    switch (c) {
        case ClassId::Affine: return "affine";
        case ClassId::Product: return "product";
        case ClassId::Matchgate: return "matchgate";
    }
    return "?";
}

inline bool is_member(const Signature& f, ClassId c) {
    switch (c) {
        case ClassId::Affine: return is_affine(f);
        case ClassId::Product: return is_product(f);
        case ClassId::Matchgate: return is_matchgate(f);
    }
    return false;
}

// G T and T^{-1} F both inside the class, memberwise.
inline bool is_transformable_given_T(const std::vector<Signature>& G, const std::vector<Signature>& F,
                                     const Transform2x2& t, ClassId c) {
    for (const auto& g : G)
        if (!is_member(transform(g, t, Side::Row), c)) return false;
    for (const auto& f : F)
        if (!is_member(transform(f, t, Side::Column), c)) return false;
    return true;
}

} // namespace holant

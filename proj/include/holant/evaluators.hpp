#pragma once

// Polynomial-time #CSP evaluators for product-type and affine constraint sets.

#include "holant/classes.hpp"
#include "holant/grid.hpp"

#include <stdexcept>

namespace holant {

// ---------------------------------------------------------------- product type

// Each constraint contributes parity relations between its variables, unary
// weights on block pivots, and pinned values; components of the parity graph
// are then summed over their two states.
inline Scalar eval_product_csp(const CspInstance& inst) {
    inst.validate();
    std::vector<std::optional<ProductForm>> forms(inst.registry.size());
    std::vector<char> used(inst.registry.size(), 0);
    for (const auto& c : inst.constraints) used[static_cast<std::size_t>(c.sig)] = 1;
    for (std::size_t s = 0; s < inst.registry.size(); ++s) {
        if (!used[s]) continue;
        forms[s] = product_form(inst.registry.sigs[s]);
        if (!forms[s]) throw DomainError("eval_product_csp: signature " + inst.registry.names[s] + " is not product type");
    }

    std::size_t n = static_cast<std::size_t>(inst.vars);
    std::vector<int> parent(n), rel(n, 0);  // rel: x_v xor x_parent
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::pair<int, int>(int)> find = [&](int v) -> std::pair<int, int> {
        if (parent[static_cast<std::size_t>(v)] == v) return {v, 0};
        auto [r, p] = find(parent[static_cast<std::size_t>(v)]);
        parent[static_cast<std::size_t>(v)] = r;
        rel[static_cast<std::size_t>(v)] ^= p;
        return {r, rel[static_cast<std::size_t>(v)]};
    };
    bool conflict = false;
    auto unite = [&](int a, int b, int parity) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != parity) conflict = true;
            return;
        }
        parent[static_cast<std::size_t>(ra)] = rb;
        rel[static_cast<std::size_t>(ra)] = pa ^ pb ^ parity;
    };

    std::vector<std::array<Scalar, 2>> weight(n, {Scalar(1), Scalar(1)});
    Scalar scale(1);
    for (const auto& c : inst.constraints) {
        const ProductForm& pf = *forms[static_cast<std::size_t>(c.sig)];
        if (pf.zero) return Scalar();
        scale *= pf.scale;
        for (std::size_t k = 0; k < c.on.size(); ++k) {
            int v = c.on[k];
            if (pf.fixed[k] >= 0) {
                weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(1 - pf.fixed[k])] = 0;
                continue;
            }
            int b = pf.block[k];
            int pv = c.on[static_cast<std::size_t>(pf.pivot[static_cast<std::size_t>(b)] - 1)];
            unite(v, pv, pf.flip[k]);
            if (static_cast<int>(k) + 1 == pf.pivot[static_cast<std::size_t>(b)]) {
                auto& w = weight[static_cast<std::size_t>(v)];
                w[0] *= pf.weight[static_cast<std::size_t>(b)][0];
                w[1] *= pf.weight[static_cast<std::size_t>(b)][1];
            }
        }
        if (conflict) return Scalar();
    }

    // per component: weight of (root = 0) and (root = 1)
    std::vector<std::array<Scalar, 2>> comp(n, {Scalar(1), Scalar(1)});
    for (std::size_t v = 0; v < n; ++v) {
        auto [r, p] = find(static_cast<int>(v));
        auto& cw = comp[static_cast<std::size_t>(r)];
        cw[0] *= weight[v][static_cast<std::size_t>(p)];
        cw[1] *= weight[v][static_cast<std::size_t>(1 - p)];
    }
    Scalar total = scale;
    for (std::size_t v = 0; v < n; ++v)
        if (find(static_cast<int>(v)).first == static_cast<int>(v)) total *= comp[v][0] + comp[v][1];
    return total;
}

// ---------------------------------------------------------------- affine

namespace detail {

// Quadratic form over Z4 in N variables with even cross terms.
struct QuadraticZ4 {
    int constant = 0;
    std::vector<int> lin;
    std::vector<std::vector<int>> cross;  // symmetric, zero diagonal

    explicit QuadraticZ4(int n) : lin(static_cast<std::size_t>(n), 0), cross(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0)) {}

    static int mod4(int v) { return ((v % 4) + 4) % 4; }

    void add_lin(int v, int c) { lin[static_cast<std::size_t>(v)] = mod4(lin[static_cast<std::size_t>(v)] + c); }
    void add_cross(int u, int v, int c) {
        if (u == v) {  // x^2 = x
            add_lin(u, c);
            return;
        }
        int& a = cross[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        a = mod4(a + c);
        cross[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = a;
    }

    // a * XOR(ys) = a * sum y - 2a * sum_{pairs} y y' (mod 4)
    void add_xor(const std::vector<int>& ys, int a) {
        for (std::size_t s = 0; s < ys.size(); ++s) {
            add_lin(ys[s], a);
            for (std::size_t t = s + 1; t < ys.size(); ++t) add_cross(ys[s], ys[t], -2 * a);
        }
    }

    // Replace x_p by c xor XOR(ys), where p is not among ys.
    void substitute(int p, int c, const std::vector<int>& ys) {
        std::size_t ps = static_cast<std::size_t>(p);
        int a = lin[ps];
        lin[ps] = 0;
        if (a) {
            // c xor X = c + (1 - 2c) X as integers
            constant = mod4(constant + a * c);
            add_xor(ys, a * (1 - 2 * c));
        }
        for (std::size_t j = 0; j < cross.size(); ++j) {
            int b = cross[ps][j];
            if (!b) continue;
            cross[ps][j] = cross[j][ps] = 0;
            if (b % 2) throw std::logic_error("eval_affine_csp: odd cross term");
            // b even, so only x_p mod 2 = c + sum ys matters
            int jj = static_cast<int>(j);
            add_lin(jj, b * c);
            for (int y : ys) add_cross(y, jj, b);
        }
    }
};

inline Scalar power_of_one_plus_i(int k) {
    Scalar base = Scalar(1) + Scalar::imag_unit();
    return base.pow(k);
}

} // namespace detail

// Sum over all assignments of prod_c f_c, every f_c affine: collect one global
// linear system over GF(2) and one Z4 quadratic form, solve the system, and
// evaluate the remaining quadratic Gauss sum one variable at a time.
inline Scalar eval_affine_csp(const CspInstance& inst) {
    inst.validate();
    std::vector<std::optional<AffineCheck>> forms(inst.registry.size());
    for (const auto& c : inst.constraints) {
        auto& slot = forms[static_cast<std::size_t>(c.sig)];
        if (slot) continue;
        slot = affine_check(inst.registry[c.sig]);
        if (!slot->member)
            throw DomainError("eval_affine_csp: signature " + inst.registry.names[static_cast<std::size_t>(c.sig)] +
                              " is not affine");
    }

    int N = inst.vars;
    Scalar lambda(1);
    detail::QuadraticZ4 q(N);
    std::vector<gf2::DenseRow> rows;
    for (const auto& c : inst.constraints) {
        const AffineCheck& ac = *forms[static_cast<std::size_t>(c.sig)];
        if (!ac.form) return Scalar();  // the zero signature
        const AffineForm& af = *ac.form;
        int n = static_cast<int>(c.on.size());
        lambda *= af.lambda;
        for (const auto& r : af.support.constraints) {
            gf2::DenseRow row(N);
            row.rhs = r.rhs;
            for (int i = 1; i <= n; ++i)
                if (r.mask & var_bit(n, i)) row.flip(c.on[static_cast<std::size_t>(i - 1)]);
            rows.push_back(std::move(row));
        }
        const Z4Polynomial& p = af.q;
        auto global = [&](int t) { return c.on[static_cast<std::size_t>(af.support.free_vars[static_cast<std::size_t>(t - 1)] - 1)]; };
        for (std::uint32_t m = 0; m < p.coeff.size(); ++m) {
            int a = p.coeff[m];
            if (!a) continue;
            std::vector<int> vs;
            for (int t = 1; t <= p.arity; ++t)
                if (m & var_bit(p.arity, t)) vs.push_back(global(t));
            if (vs.empty())
                q.constant = detail::QuadraticZ4::mod4(q.constant + a);
            else if (vs.size() == 1)
                q.add_lin(vs[0], a);
            else
                q.add_cross(vs[0], vs[1], a);
        }
    }

    gf2::DenseEchelon ech = gf2::reduce(std::move(rows));
    if (!ech.consistent) return Scalar();
    std::vector<char> eliminated(static_cast<std::size_t>(N), 0);
    for (std::size_t k = 0; k < ech.rows.size(); ++k) {
        int p = ech.pivots[k];
        std::vector<int> ys;
        for (int v = 0; v < N; ++v)
            if (v != p && ech.rows[k].get(v)) ys.push_back(v);
        q.substitute(p, ech.rows[k].rhs ? 1 : 0, ys);
        eliminated[static_cast<std::size_t>(p)] = 1;
    }

    // Gauss sum, lowest variable first.
    int twos = 0, one_plus_i = 0;
    for (int x = 0; x < N; ++x) {
        if (eliminated[static_cast<std::size_t>(x)]) continue;
        eliminated[static_cast<std::size_t>(x)] = 1;
        int a = q.lin[static_cast<std::size_t>(x)];
        q.lin[static_cast<std::size_t>(x)] = 0;
        std::vector<int> nb;  // neighbours with cross coefficient 2
        for (int j = 0; j < N; ++j) {
            int b = q.cross[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)];
            if (!b) continue;
            if (b % 2) throw std::logic_error("eval_affine_csp: odd cross term");
            nb.push_back(j);
            q.cross[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)] = q.cross[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] = 0;
        }
        // sum_x i^{a x + 2 x L} = 1 + i^a (-1)^L
        if (a % 2 == 0) {
            // 2 when L = a/2 (mod 2), else 0
            if (nb.empty()) {
                if (a == 2) return Scalar();
                ++twos;
                continue;
            }
            ++twos;
            int piv = nb.front();
            std::vector<int> rest(nb.begin() + 1, nb.end());
            q.substitute(piv, a / 2, rest);
            eliminated[static_cast<std::size_t>(piv)] = 1;
        } else {
            // (1 + i^a) * i^{-a L}
            if (a == 1)
                ++one_plus_i;
            else
                lambda *= Scalar(1) - Scalar::imag_unit();
            q.add_xor(nb, -a);
        }
    }
    Scalar total = lambda * Scalar::power_of_i(q.constant) * detail::power_of_one_plus_i(one_plus_i);
    if (twos) total *= Scalar::from_rational(BigRational(BigInt(1) << twos));
    return total;
}

} // namespace holant

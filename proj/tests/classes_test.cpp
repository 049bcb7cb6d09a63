#include "holant/classes.hpp"
#include "holant/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using holant::Parity;
using holant::Scalar;
using holant::Signature;

namespace {

Signature sym(std::initializer_list<Scalar> w) { return Signature::symmetric(w); }
Signature vals(int n, std::vector<Scalar> v) { return Signature(n, std::move(v)); }
const Scalar I = Scalar::imag_unit();

// Rebuild f from a primitive decomposition.
Signature assemble(const std::vector<holant::PrimitiveFactor>& fs, int n) {
    Signature out = Signature::zero(n);
    for (std::uint32_t x = 0; x < out.size(); ++x) {
        Scalar p(1);
        for (const auto& pf : fs) {
            std::uint32_t y = 0;
            for (int v : pf.vars) y = (y << 1) | ((x & holant::var_bit(n, v)) ? 1u : 0u);
            p *= pf.sig[y];
        }
        out[x] = p;
    }
    return out;
}

} // namespace

TEST(Parity, Labels) {
    EXPECT_EQ(holant::parity_of(sym({1, 0, 1, 0})), Parity::Even);
    EXPECT_EQ(holant::parity_of(sym({0, 1, 0, 0})), Parity::Odd);
    EXPECT_EQ(holant::parity_of(vals(2, {1, 1, 0, 0})), Parity::None);
    EXPECT_EQ(holant::parity_of(Signature::zero(3)), Parity::Zero);
}

TEST(Degenerate, Examples) {
    Signature f = holant::tensor(sym({1, 1}), sym({1, -1}));
    auto d = holant::degenerate_form(f);
    ASSERT_TRUE(d);
    EXPECT_EQ(holant::tensor(d->unaries[0], d->unaries[1]).scaled(d->scale), f);
    EXPECT_FALSE(holant::is_degenerate(Signature::equality(2)));
    EXPECT_TRUE(holant::is_degenerate(Signature::zero(3)));
    EXPECT_TRUE(holant::is_degenerate(Signature::constant(5)));
}

TEST(Degenerate, RandomTensorsReconstruct) {
    holant::random::Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + t % 5;
        Signature f = Signature::constant(1);
        for (int i = 0; i < n; ++i) f = holant::tensor(f, holant::random::signature(rng, 1));
        auto d = holant::degenerate_form(f);
        ASSERT_TRUE(d);
        Signature g = Signature::constant(d->scale);
        for (auto& u : d->unaries) g = holant::tensor(g, u);
        EXPECT_EQ(g, f);
    }
}

TEST(AffineSupport, Crossover) {
    auto s = holant::affine_support(holant::crossover());
    ASSERT_TRUE(s);
    EXPECT_EQ(s->dim, 2);
    EXPECT_EQ(s->free_vars, (std::vector<int>{1, 2}));
    for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(s->contains(x), !holant::crossover()[x].is_zero());
    EXPECT_EQ(holant::compress(holant::crossover(), {1, 2}), vals(2, {1, 1, 1, 1}));
    EXPECT_EQ(holant::compress(holant::crossover(), {3, 4}), vals(2, {1, 1, 1, 1}));
    EXPECT_THROW(holant::compress(holant::crossover(), {1, 3}), holant::DomainError);
    EXPECT_FALSE(holant::affine_support(sym({0, 1, 1, 1})));
}

TEST(AffineSupport, FreeVariablesAreLexicographicallyMinimal) {
    // support {x : x1 = x2}: x1 and x2 each parametrize; x1 wins
    Signature f = holant::tensor(Signature::equality(2), sym({1, 1}));
    auto s = holant::affine_support(f);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->free_vars, (std::vector<int>{1, 3}));
    // x1 fixed: free set {x2, x3}
    Signature g = holant::tensor(sym({0, 1}), sym({1, 2, 3}));
    EXPECT_EQ(holant::affine_support(g)->free_vars, (std::vector<int>{2, 3}));
}

TEST(Z4Polynomial, Examples) {
    auto p = holant::z4_polynomial(vals(2, {1, I, I, -1}));
    EXPECT_EQ(p.coeff, (std::vector<std::uint8_t>{0, 1, 1, 0}));
    EXPECT_EQ(p.to_string(), "x2 + x1");
    EXPECT_EQ(holant::z4_polynomial(Signature::constant(1)).coeff, (std::vector<std::uint8_t>{0}));
    auto q = holant::z4_polynomial(vals(2, {1, 1, 1, -1}));
    EXPECT_EQ(q.coeff, (std::vector<std::uint8_t>{0, 0, 0, 2}));
    EXPECT_THROW(holant::z4_polynomial(vals(1, {1, 2})), holant::DomainError);
}

TEST(Z4Polynomial, ReconstructsRandomInputs) {
    holant::random::Rng rng(2);
    std::vector<Scalar> pw{1, I, -1, -I};
    for (int t = 0; t < 50; ++t) {
        Signature f = holant::random::signature_from(rng, 1 + t % 5, pw);
        auto p = holant::z4_polynomial(f);
        for (std::uint32_t x = 0; x < f.size(); ++x) EXPECT_EQ(Scalar::power_of_i(p.evaluate(x)), f[x]);
    }
}

TEST(Affine, Examples) {
    EXPECT_TRUE(holant::is_affine(sym({1, 0, 1, 0})));
    EXPECT_FALSE(holant::is_affine(sym({1, 0, 2})));
    EXPECT_TRUE(holant::is_affine(vals(2, {1, I, I, 1})));
    EXPECT_FALSE(holant::is_affine(vals(2, {1, I, I, I})));
    EXPECT_TRUE(holant::is_affine(Signature::zero(2)));
    EXPECT_TRUE(holant::is_affine(holant::crossover()));
    EXPECT_FALSE(holant::is_affine(sym({0, 1, 1, 1})));
    EXPECT_FALSE(holant::is_affine(sym({0, 1, 0, 0})));
    for (Scalar a : {Scalar(0), Scalar(1), Scalar(-1), I, -I}) {
        EXPECT_TRUE(holant::is_affine(sym({1, a})));
        EXPECT_TRUE(holant::is_affine(sym({1, 0, a})));
    }
    for (Scalar a : {Scalar(2), Scalar::zeta(1), Scalar(1) + I}) {
        EXPECT_FALSE(holant::is_affine(sym({1, a})));
        EXPECT_FALSE(holant::is_affine(sym({1, 0, a})));
    }
}

TEST(Affine, BinaryCriterion) {
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            for (int e = 0; e < 4; ++e) {
                Scalar d = Scalar::power_of_i(e);
                Signature f = vals(2, {1, Scalar::power_of_i(r), Scalar::power_of_i(s), d});
                bool expect = d == Scalar::power_of_i(r + s) || d == -Scalar::power_of_i(r + s);
                EXPECT_EQ(holant::is_affine(f), expect);
            }
}

TEST(Affine, TernaryEpsilonCriterion) {
    auto P = [](int k) { return Scalar::power_of_i(k); };
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t)
                for (int eps = 0; eps < 16; ++eps) {
                    auto e = [&](int k) { return Scalar((eps >> k & 1) ? -1 : 1); };
                    Signature f = vals(3, {1, P(r), P(s), e(0) * P(r + s), P(t), e(1) * P(r + t), e(2) * P(s + t),
                                           e(3) * P(r + s + t)});
                    bool expect = __builtin_popcount(static_cast<unsigned>(eps)) % 2 == 0;
                    EXPECT_EQ(holant::is_affine(f), expect);
                }
}

TEST(Affine, WitnessReportsOffendingMonomial) {
    Signature f = vals(3, {1, 1, 1, 1, 1, 1, 1, -1});  // (-1)^{x1 x2 x3}
    auto c = holant::affine_check(f);
    EXPECT_FALSE(c.member);
    EXPECT_EQ(c.monomial, (std::vector<int>{1, 2, 3}));
    auto d = holant::affine_check(vals(2, {1, 1, 1, I}));
    EXPECT_FALSE(d.member);
    EXPECT_EQ(d.monomial, (std::vector<int>{1, 2}));
}

TEST(Affine, AgreesWithRepresentationSearchUpToArity2) {
    std::vector<Scalar> alphabet{0, 1, I, -1, -I};
    for (int n = 0; n <= 2; ++n) {
        auto reps = oracle::affine_representations(n);
        std::size_t N = std::size_t{1} << n;
        std::size_t total = 1;
        for (std::size_t k = 0; k < N; ++k) total *= alphabet.size();
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Scalar> v(N);
            std::size_t c = code;
            for (auto& x : v) {
                x = alphabet[c % alphabet.size()];
                c /= alphabet.size();
            }
            bool expect = reps.count(v) > 0;
            EXPECT_EQ(holant::is_affine(Signature(n, v)), expect) << Signature(n, v);
        }
    }
}

TEST(Affine, FormReproducesSignature) {
    holant::random::Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        Signature f = holant::random::affine_member(rng, 1 + t % 6);
        auto c = holant::affine_check(f);
        ASSERT_TRUE(c.member) << f;
        ASSERT_TRUE(c.form);
        const auto& s = c.form->support;
        for (std::uint32_t y = 0; y < (1u << s.dim); ++y)
            EXPECT_EQ(f[s.point(y)], c.form->lambda * Scalar::power_of_i(c.form->q.evaluate(y)));
        EXPECT_EQ(holant::support(f).size(), std::size_t{1} << s.dim);
    }
}

TEST(Product, Examples) {
    EXPECT_TRUE(holant::is_product(holant::crossover()));
    EXPECT_FALSE(holant::is_product(sym({1, 0, 1, 0})));
    EXPECT_TRUE(holant::is_product(sym({0, 1, 0})));
    EXPECT_TRUE(holant::is_product(sym({3, 0, 0, 0, I})));
    EXPECT_TRUE(holant::is_product(sym({1, 0, 2})));
    EXPECT_TRUE(holant::is_product(Signature::zero(3)));
    EXPECT_FALSE(holant::is_product(sym({0, 1, 0, 0})));
    EXPECT_FALSE(holant::is_product(sym({1, 1, 0})));
    EXPECT_TRUE(holant::is_product(holant::tensor(sym({1, 2}), sym({0, 1, 0}))));
}

TEST(Product, CrossoverDecomposition) {
    auto fs = holant::primitive_decomposition(holant::crossover());
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].vars, (std::vector<int>{1, 3}));
    EXPECT_EQ(fs[1].vars, (std::vector<int>{2, 4}));
    EXPECT_EQ(fs[0].sig, Signature::equality(2));
    EXPECT_EQ(fs[1].sig, Signature::equality(2));
    EXPECT_THROW(holant::primitive_decomposition(Signature::zero(2)), holant::DomainError);
}

TEST(Product, SymmetricMembersAreExactlyTheKnownShapes) {
    // non-degenerate symmetric members: not-equal, or generalized equality
    holant::random::Rng rng(5);
    for (int t = 0; t < 400; ++t) {
        int n = 2 + t % 3;
        std::vector<Scalar> w;
        for (int k = 0; k <= n; ++k) w.push_back(holant::random::uniform(rng, 0, 2) ? Scalar() : holant::random::gaussian(rng, 1));
        Signature f = Signature::symmetric(w);
        if (holant::is_degenerate(f)) continue;
        bool gen_eq = true;
        for (int k = 1; k < n; ++k) gen_eq = gen_eq && w[static_cast<std::size_t>(k)].is_zero();
        bool neq = n == 2 && w[0].is_zero() && w[2].is_zero();
        EXPECT_EQ(holant::is_product(f), gen_eq || neq) << f;
    }
}

TEST(Product, StructuralTestMatchesPartitionOracleAndDecomposition) {
    holant::random::Rng rng(13);
    int agree = 0;
    for (int t = 0; t < 600; ++t) {
        int n = 1 + t % 5;
        Signature f;
        switch (t % 3) {
            case 0: f = holant::random::product_member(rng, n); break;
            case 1: f = holant::random::signature_from(rng, n, {0, 0, 0, 1, -1, I}); break;
            default: {
                f = holant::random::product_member(rng, n);
                f[static_cast<std::uint32_t>(holant::random::uniform(rng, 0, (1 << n) - 1))] += 1;
            }
        }
        bool structural = holant::is_product(f);
        EXPECT_EQ(structural, oracle::product_by_partitions(f)) << f;
        if (!f.is_zero()) {
            auto fs = holant::primitive_decomposition(f);
            EXPECT_EQ(assemble(fs, n), f);
            bool by_factors = true;
            for (auto& pf : fs) by_factors = by_factors && holant::in_generalized_equality_class(pf.sig);
            EXPECT_EQ(structural, by_factors) << f;
            auto pf = holant::product_form(f);
            if (pf) {
                for (std::uint32_t x = 0; x < f.size(); ++x) EXPECT_EQ(pf->value(x, n), f[x]);
            }
        }
        agree += structural;
    }
    EXPECT_GT(agree, 150);
}

TEST(Product, DecompositionIsFinest) {
    holant::random::Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 4;
        Signature f = holant::random::signature(rng, n, 3);
        auto fs = holant::primitive_decomposition(f);
        EXPECT_EQ(assemble(fs, n), f);
        // each factor is itself indecomposable
        for (auto& pf : fs) {
            if (pf.sig.arity() > 1) {
                EXPECT_EQ(holant::primitive_decomposition(pf.sig).size(), 1u);
            }
        }
    }
}

TEST(Matchgate, Examples) {
    EXPECT_TRUE(holant::is_matchgate(sym({1, 0, 1, 0})));
    EXPECT_TRUE(holant::is_matchgate(sym({0, 1, 0, 0})));
    EXPECT_FALSE(holant::is_matchgate(vals(2, {1, 1, 0, 0})));
    auto w = holant::matchgate_check(holant::crossover());
    EXPECT_FALSE(w.member);
    EXPECT_FALSE(w.parity_failed);
    EXPECT_EQ(w.alpha, 0b0001u);
    EXPECT_EQ(w.positions, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_TRUE(holant::is_matchgate(Signature::equality(2)));
    EXPECT_FALSE(holant::is_matchgate(Signature::equality(4)));
    // inner = outer = identity matrix
    Signature f = Signature::zero(4);
    f[0b0000] = f[0b1111] = f[0b0110] = f[0b1001] = 1;
    EXPECT_TRUE(holant::is_matchgate(f));
    for (Scalar a : {Scalar(0), Scalar(1), Scalar(2), I})
        for (Scalar b : {Scalar(0), Scalar(1), Scalar(-3)}) {
            Signature u = sym({a, b});
            EXPECT_EQ(holant::is_matchgate(u), a.is_zero() || b.is_zero());
        }
}

TEST(Matchgate, Arity4IdentityOracle) {
    holant::random::Rng rng(23);
    std::vector<Scalar> alphabet{0, 1, -1, I, -I, 2, -2};
    for (int t = 0; t < 500; ++t) {
        Signature f = holant::random::signature_from(rng, 4, alphabet);
        bool odd = t % 2;
        for (std::uint32_t x = 0; x < 16; ++x)
            if (holant::popcount(x) % 2 != odd) f[x] = 0;
        Scalar id = odd ? f[0b1000] * f[0b0111] - f[0b0100] * f[0b1011] + f[0b0010] * f[0b1101] - f[0b0001] * f[0b1110]
                        : f[0b0000] * f[0b1111] - f[0b1100] * f[0b0011] + f[0b1010] * f[0b0101] - f[0b1001] * f[0b0110];
        EXPECT_EQ(holant::is_matchgate(f), id.is_zero()) << f;
    }
}

TEST(Matchgate, LowArityEqualsParity) {
    std::vector<Scalar> alphabet{0, 1, -1};
    for (int n = 0; n <= 3; ++n) {
        std::size_t N = std::size_t{1} << n, total = 1;
        for (std::size_t k = 0; k < N; ++k) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Scalar> v(N);
            std::size_t c = code;
            for (auto& x : v) {
                x = alphabet[c % 3];
                c /= 3;
            }
            Signature f(n, v);
            EXPECT_EQ(holant::is_matchgate(f), holant::parity_of(f) != Parity::None);
        }
    }
}

TEST(ClassReport, TransformedClasses) {
    for (int n = 1; n <= 5; ++n) {
        std::vector<Scalar> w(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; k += 2) w[static_cast<std::size_t>(k)] = 1;
        Signature e = Signature::symmetric(w);  // [1,0,1,0,...]
        auto r = holant::class_report(e);
        EXPECT_TRUE(r.matchgate);
        EXPECT_TRUE(r.affine);
    }
    auto r10 = holant::class_report(sym({1, 0}));
    EXPECT_FALSE(r10.matchgate_hat);
    EXPECT_FALSE(r10.matchgate_hat_dagger);
    for (Scalar s : {Scalar(1), Scalar(-1)}) {
        EXPECT_TRUE(holant::is_matchgate_hat(sym({1, s})));
        EXPECT_TRUE(holant::is_matchgate_hat_dagger(sym({1, s * I})));
        EXPECT_FALSE(holant::is_matchgate_hat(sym({1, s * I})));
    }
    auto r = holant::class_report(sym({1, 0, 1, 0}));
    EXPECT_FALSE(r.product);
    EXPECT_FALSE(r.affine_dagger);
    EXPECT_TRUE(holant::is_affine_dagger(sym({1, Scalar::zeta(1)})));
    EXPECT_FALSE(holant::is_affine(sym({1, Scalar::zeta(1)})));
}

TEST(ClassInvariance, Scaling) {
    holant::random::Rng rng(31);
    for (int t = 0; t < 120; ++t) {
        int n = 1 + t % 4;
        Signature f = t % 3 == 0   ? holant::random::affine_member(rng, n)
                      : t % 3 == 1 ? holant::random::product_member(rng, n)
                                   : holant::random::signature_from(rng, n, {0, 1, -1, I});
        Scalar c = holant::random::nonzero_gaussian(rng, 3) + Scalar::zeta(1);
        auto a = holant::class_report(f), b = holant::class_report(f.scaled(c));
        EXPECT_EQ(a.degenerate, b.degenerate);
        EXPECT_EQ(a.affine, b.affine);
        EXPECT_EQ(a.product, b.product);
        EXPECT_EQ(a.matchgate, b.matchgate);
        EXPECT_EQ(a.matchgate_hat, b.matchgate_hat);
        EXPECT_EQ(a.affine_dagger, b.affine_dagger);
        EXPECT_EQ(a.matchgate_hat_dagger, b.matchgate_hat_dagger);
    }
}

TEST(ClassInvariance, FlipVariable) {
    holant::random::Rng rng(37);
    for (int t = 0; t < 150; ++t) {
        int n = 1 + t % 5;
        Signature f = t % 3 == 0   ? holant::random::affine_member(rng, n)
                      : t % 3 == 1 ? holant::random::product_member(rng, n)
                                   : holant::random::signature_from(rng, n, {0, 0, 1, -1});
        int i = 1 + t % n;
        Signature g = holant::flip_var(f, i);
        EXPECT_EQ(holant::is_affine(f), holant::is_affine(g));
        EXPECT_EQ(holant::is_product(f), holant::is_product(g));
        EXPECT_EQ(holant::is_matchgate(f), holant::is_matchgate(g));
    }
}

TEST(ClassInvariance, ClosureUnderTensorAndPin) {
    holant::random::Rng rng(41);
    for (int t = 0; t < 80; ++t) {
        Signature a = holant::random::affine_member(rng, 1 + t % 3), b = holant::random::affine_member(rng, 1 + t % 2);
        EXPECT_TRUE(holant::is_affine(holant::tensor(a, b)));
        EXPECT_TRUE(holant::is_affine(holant::pin(a, 1, t % 2)));
        Signature p = holant::random::product_member(rng, 1 + t % 3), q = holant::random::product_member(rng, 2);
        EXPECT_TRUE(holant::is_product(holant::tensor(p, q)));
        EXPECT_TRUE(holant::is_product(holant::pin(p, 1, t % 2)));
    }
    std::vector<Signature> mg{sym({1, 0, 1, 0}), sym({0, 1, 0, 0}), Signature::equality(2), sym({2, 0, 3}), sym({0, 1, 0, 0, 0})};
    for (auto& a : mg)
        for (auto& b : mg) {
            EXPECT_TRUE(holant::is_matchgate(holant::tensor(a, b))) << a << b;
            EXPECT_TRUE(holant::is_matchgate(holant::pin(a, 1, 0)));
        }
}

TEST(ClassInvariance, AffineIsHadamardInvariant) {
    holant::random::Rng rng(43);
    for (int t = 0; t < 150; ++t) {
        int n = 1 + t % 5;
        Signature f = t % 2 ? holant::random::affine_member(rng, n)
                            : holant::random::signature_from(rng, n, {0, 1, -1, I, -I});
        EXPECT_EQ(holant::is_affine(f), holant::is_affine(holant::hadamard(f))) << f;
    }
}

TEST(ClassInvariance, ProductWithParityImageIsAffine) {
    holant::random::Rng rng(47);
    int hits = 0;
    for (int t = 0; t < 4000 && hits < 200; ++t) {
        Signature f = holant::random::product_member(rng, 1 + t % 4, 1);
        if (holant::parity_of(holant::hadamard(f)) == Parity::None) continue;
        ++hits;
        EXPECT_TRUE(holant::is_affine(f)) << f;
    }
    EXPECT_EQ(hits, 200);
}

TEST(Transformable, Examples) {
    std::vector<Signature> eq;
    for (int k = 1; k <= 4; ++k) eq.push_back(Signature::equality(k));
    auto H = holant::Transform2x2::hadamard();
    EXPECT_TRUE(holant::is_transformable_given_T(eq, eq, H, holant::ClassId::Matchgate));
    auto Id = holant::Transform2x2::identity();
    EXPECT_TRUE(holant::is_transformable_given_T(eq, {sym({1, 0, 2})}, Id, holant::ClassId::Product));
    EXPECT_FALSE(holant::is_transformable_given_T(eq, {sym({1, 0, 2})}, Id, holant::ClassId::Affine));
}

#include "holant/holographic.hpp"
#include "holant/random.hpp"

#include <gtest/gtest.h>

using holant::Scalar;
using holant::Signature;
using holant::Transform2x2;

namespace {

Signature sym(std::initializer_list<Scalar> w) { return Signature::symmetric(w); }

// T^{(x)n} f by the definition: sum over y of prod_i T[x_i][y_i] f(y).
Signature naive_power(const Transform2x2& t, const Signature& f) {
    int n = f.arity();
    Scalar m[2][2] = {{t.a, t.b}, {t.c, t.d}};
    std::vector<Scalar> out(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x)
        for (std::uint32_t y = 0; y < f.size(); ++y) {
            Scalar p = f[y];
            for (int i = 1; i <= n && !p.is_zero(); ++i) {
                std::uint32_t b = holant::var_bit(n, i);
                p *= m[(x & b) ? 1 : 0][(y & b) ? 1 : 0];
            }
            out[x] += p;
        }
    return Signature(n, std::move(out));
}

} // namespace

TEST(Transform, HadamardExamples) {
    EXPECT_EQ(holant::hadamard(Signature::equality(2)), sym({2, 0, 2}));
    EXPECT_EQ(holant::hadamard(sym({1, 1})), sym({2, 0}));
    EXPECT_EQ(holant::hadamard(holant::crossover()), holant::crossover().scaled(Scalar(4)));
    holant::random::Rng rng(5);
    for (int n = 0; n <= 5; ++n) {
        Signature f = holant::random::signature(rng, n);
        EXPECT_EQ(holant::hadamard(holant::hadamard(f)), f.scaled(Scalar(1 << n)));
    }
}

TEST(Transform, ButterflyMatchesDefinition) {
    holant::random::Rng rng(9);
    for (int t = 0; t < 40; ++t) {
        auto T = holant::random::invertible_gaussian_transform(rng);
        Signature f = holant::random::signature(rng, t % 5);
        EXPECT_EQ(holant::apply_tensor_power(T, f), naive_power(T, f));
        EXPECT_EQ(holant::transform(holant::transform(f, T, holant::Side::Column), T.inverse(), holant::Side::Column), f);
    }
}

TEST(Transform, InverseAndGuards) {
    Transform2x2 t{1, 2, 3, 4};
    EXPECT_EQ(t * t.inverse(), Transform2x2::identity());
    EXPECT_EQ(t.det(), Scalar(-2));
    EXPECT_THROW(Transform2x2({1, 2, 2, 4}).inverse(), holant::DomainError);
    holant::random::Rng rng(2);
    auto g = holant::random::bipartite_planar_grid(rng, 8);
    EXPECT_THROW(holant::check_holant_invariance(g, Transform2x2{1, 1, 1, 1}), holant::DomainError);
}

TEST(Transform, DiagScale) {
    Scalar w = Scalar::zeta(1);
    EXPECT_EQ(holant::diag_scale(sym({1, 1, 1}), w), sym({1, w, w * w}));
    holant::random::Rng rng(4);
    Signature f = holant::random::signature(rng, 3);
    EXPECT_EQ(holant::diag_scale(f, w), holant::apply_tensor_power(Transform2x2::diag(1, w), f));
}

TEST(Holographic, SingleEdge) {
    holant::SignatureGrid g;
    g.num_edges = 2;
    int eq = g.registry.add("=2", Signature::equality(2));
    g.add_vertex(eq, {0, 1}, 0);
    g.add_vertex(eq, {0, 1}, 1);
    auto r = holant::check_holant_invariance(g, Transform2x2::hadamard());
    EXPECT_EQ(r.lhs, Scalar(2));
    EXPECT_EQ(r.rhs, Scalar(2));
    EXPECT_TRUE(r.equal);
}

TEST(Holographic, RandomInvariance) {
    holant::random::Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        auto g = holant::random::bipartite_planar_grid(rng, 12);
        auto T = holant::random::invertible_gaussian_transform(rng);
        auto r = holant::check_holant_invariance(g, T);
        EXPECT_TRUE(r.equal) << r.lhs.to_string() << " vs " << r.rhs.to_string();
    }
}

TEST(Holographic, NonBipartiteRejected) {
    holant::SignatureGrid g;
    g.num_edges = 1;
    int s = g.registry.add("u", sym({1, 2}));
    g.add_vertex(s, {0}, 0);
    g.add_vertex(s, {0}, 0);
    EXPECT_THROW(holant::transform_grid(g, Transform2x2::hadamard()), holant::DomainError);
}

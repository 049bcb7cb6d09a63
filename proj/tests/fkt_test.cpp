#include "holant/brute_force.hpp"
#include "holant/fkt.hpp"
#include "holant/random.hpp"

#include <gtest/gtest.h>

using holant::MatchgateFragment;
using holant::PlanarGraph;
using holant::Scalar;
using holant::Signature;

namespace {

const Scalar I = Scalar::imag_unit();

PlanarGraph cycle(int n) {
    PlanarGraph g;
    g.n = n;
    g.rotation.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int e = g.add_edge(v, (v + 1) % n);
        g.rotation[static_cast<std::size_t>(v)].push_back(e);
        g.rotation[static_cast<std::size_t>((v + 1) % n)].push_back(e);
    }
    return g;
}

PlanarGraph k4() {
    PlanarGraph g;
    g.n = 4;
    // 0:01 1:02 2:03 3:12 4:13 5:23, vertex 0 in the centre
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) g.add_edge(u, v);
    g.rotation = {{0, 1, 2}, {0, 4, 3}, {1, 3, 5}, {2, 5, 4}};
    return g;
}

// r x c grid graph with its straight-line embedding
PlanarGraph grid_graph(int r, int c) {
    PlanarGraph g;
    g.n = r * c;
    g.rotation.resize(static_cast<std::size_t>(g.n));
    auto id = [&](int i, int j) { return i * c + j; };
    std::map<std::pair<int, int>, int> e;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (j + 1 < c) e[{id(i, j), id(i, j + 1)}] = g.add_edge(id(i, j), id(i, j + 1));
            if (i + 1 < r) e[{id(i, j), id(i + 1, j)}] = g.add_edge(id(i, j), id(i + 1, j));
        }
    auto edge = [&](int a, int b) { return a < b ? e.at({a, b}) : e.at({b, a}); };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            // ccw: east, north (i-1), west, south (i+1)
            auto& rot = g.rotation[static_cast<std::size_t>(id(i, j))];
            if (j + 1 < c) rot.push_back(edge(id(i, j), id(i, j + 1)));
            if (i > 0) rot.push_back(edge(id(i, j), id(i - 1, j)));
            if (j > 0) rot.push_back(edge(id(i, j), id(i, j - 1)));
            if (i + 1 < r) rot.push_back(edge(id(i, j), id(i + 1, j)));
        }
    return g;
}

// Leibniz expansion.
Scalar det_oracle(const holant::SkewMatrix& m) {
    std::vector<int> p(m.size());
    std::iota(p.begin(), p.end(), 0);
    Scalar total;
    do {
        int inv = 0;
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = a + 1; b < p.size(); ++b) inv += p[a] > p[b];
        Scalar t(inv % 2 ? -1 : 1);
        for (std::size_t a = 0; a < p.size() && !t.is_zero(); ++a) t *= m[a][static_cast<std::size_t>(p[a])];
        total += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

holant::SkewMatrix random_skew(holant::random::Rng& rng, int n, int zero_odds) {
    holant::SkewMatrix m(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Scalar x = holant::random::uniform(rng, 0, zero_odds) ? holant::random::gaussian(rng, 3) : Scalar();
            m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = x;
            m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = -x;
        }
    return m;
}

} // namespace

TEST(EnumeratePm, Examples) {
    EXPECT_EQ(holant::enumerate_pm(cycle(4)), Scalar(2));
    EXPECT_EQ(holant::enumerate_pm(k4()), Scalar(3));
    EXPECT_EQ(holant::enumerate_pm(cycle(5)), Scalar(0));
    PlanarGraph e;
    e.n = 2;
    e.add_edge(0, 1, Scalar(3) + I);
    EXPECT_EQ(holant::enumerate_pm(e), Scalar(3) + I);
    PlanarGraph empty;
    EXPECT_EQ(holant::enumerate_pm(empty), Scalar(1));
    EXPECT_EQ(holant::enumerate_pm(grid_graph(2, 3)), Scalar(3));
}

TEST(Pfaffian, Examples) {
    Scalar a = Scalar(2) - I;
    EXPECT_EQ(holant::pfaffian({{0, a}, {-a, 0}}), a);
    EXPECT_EQ(holant::pfaffian({{0, 1, 2}, {-1, 0, 3}, {-2, -3, 0}}), Scalar(0));
    EXPECT_EQ(holant::pfaffian({}), Scalar(1));
    EXPECT_THROW(holant::pfaffian({{0, 1}, {1, 0}}), holant::DomainError);
    EXPECT_THROW(holant::pfaffian({{1, 1}, {-1, 0}}), holant::DomainError);
    holant::random::Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        auto m = random_skew(rng, 4, 3);
        auto at = [&](int i, int j) { return m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; };
        EXPECT_EQ(holant::pfaffian(m), at(1, 2) * at(3, 4) - at(1, 3) * at(2, 4) + at(1, 4) * at(2, 3));
    }
}

TEST(Pfaffian, SquareIsDeterminant) {
    holant::random::Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        auto m = random_skew(rng, t % 2 ? 8 : 6, t % 3 ? 1 : 6);
        Scalar pf = holant::pfaffian(m);
        EXPECT_EQ(pf * pf, det_oracle(m));
    }
}

TEST(Kasteleyn, PostconditionOnRandomGraphs) {
    auto c4 = cycle(4);
    auto o = holant::kasteleyn_orient(c4);
    EXPECT_TRUE(holant::is_kasteleyn(c4, o));
    int along = 0;
    for (int e = 0; e < 4; ++e) along += o[static_cast<std::size_t>(e)] > 0;
    EXPECT_EQ(along % 2, 1);  // the cycle's edges run u -> v = v, v+1
    PlanarGraph e;
    e.n = 2;
    e.add_edge(0, 1);
    e.rotation = {{0}, {0}};
    EXPECT_EQ(holant::kasteleyn_orient(e).size(), 1u);
    holant::random::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        auto pg = holant::random::planar_graph(rng, 1 + t % 20, t % 25);
        auto g = holant::random::weighted(pg, [] { return Scalar(1); });
        EXPECT_TRUE(holant::is_kasteleyn(g, holant::kasteleyn_orient(g)));
    }
}

TEST(Kasteleyn, Rejections) {
    PlanarGraph two;
    two.n = 4;
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    two.rotation = {{0}, {0}, {1}, {1}};
    EXPECT_THROW(holant::kasteleyn_orient(two), holant::DomainError);
    PlanarGraph k = k4();
    std::swap(k.rotation[1][1], k.rotation[1][2]);
    EXPECT_THROW(holant::kasteleyn_orient(k), holant::DomainError);
    EXPECT_THROW(holant::count_pm_fkt(k), holant::DomainError);
}

TEST(Fkt, Examples) {
    EXPECT_EQ(holant::count_pm_fkt(cycle(4)), Scalar(2));
    EXPECT_EQ(holant::count_pm_fkt(k4()), Scalar(3));
    EXPECT_EQ(holant::count_pm_fkt(grid_graph(2, 3)), Scalar(3));
    EXPECT_EQ(holant::count_pm_fkt(grid_graph(4, 4)), Scalar(36));
    EXPECT_EQ(holant::count_pm_fkt(grid_graph(6, 6)), Scalar(6728));
    EXPECT_EQ(holant::count_pm_fkt(cycle(7)), Scalar(0));
    PlanarGraph two;
    two.n = 4;
    two.add_edge(0, 1, Scalar(3));
    two.add_edge(2, 3, I);
    two.rotation = {{0}, {0}, {1}, {1}};
    EXPECT_EQ(holant::count_pm_fkt(two), Scalar(3) * I);
    // loops and parallel edges
    PlanarGraph multi;
    multi.n = 2;
    multi.add_edge(0, 1, Scalar(2));
    multi.add_edge(0, 1, Scalar(5));
    multi.add_edge(0, 0, Scalar(7));
    multi.rotation = {{0, 2, 2, 1}, {1, 0}};
    EXPECT_EQ(holant::count_pm_fkt(multi), Scalar(7));
}

TEST(Fkt, SmallGraphsExhaustive) {
    // every edge subset of K4, and of the wheel on 5 vertices, with its induced embedding
    auto check_subsets = [](const PlanarGraph& full, holant::random::Rng& rng) {
        std::size_t m = full.edges.size();
        for (std::uint32_t s = 0; s < (1u << m); ++s) {
            PlanarGraph g;
            g.n = full.n;
            g.rotation.resize(static_cast<std::size_t>(g.n));
            std::vector<int> id(m, -1);
            for (std::size_t e = 0; e < m; ++e)
                if (s >> e & 1u) id[e] = g.add_edge(full.edges[e].u, full.edges[e].v, holant::random::nonzero_gaussian(rng, 2));
            for (int v = 0; v < g.n; ++v)
                for (int e : full.rotation[static_cast<std::size_t>(v)])
                    if (id[static_cast<std::size_t>(e)] >= 0) g.rotation[static_cast<std::size_t>(v)].push_back(id[static_cast<std::size_t>(e)]);
            ASSERT_EQ(holant::count_pm_fkt(g), holant::enumerate_pm(g)) << s;
        }
    };
    holant::random::Rng rng(4);
    check_subsets(k4(), rng);
    PlanarGraph wheel;  // hub 0, rim 1..5 counterclockwise
    wheel.n = 6;
    wheel.rotation.resize(6);
    std::vector<int> spoke, rim;
    for (int k = 1; k <= 5; ++k) spoke.push_back(wheel.add_edge(0, k));
    for (int k = 1; k <= 5; ++k) rim.push_back(wheel.add_edge(k, k % 5 + 1));
    wheel.rotation[0] = spoke;
    for (int k = 1; k <= 5; ++k) {
        int prev = rim[static_cast<std::size_t>((k + 3) % 5)];
        wheel.rotation[static_cast<std::size_t>(k)] = {rim[static_cast<std::size_t>(k - 1)], spoke[static_cast<std::size_t>(k - 1)], prev};
    }
    check_subsets(wheel, rng);
}

TEST(Fkt, RandomPlanarGraphs) {
    holant::random::Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        auto pg = holant::random::planar_graph(rng, 2 + t % 19, holant::random::uniform(rng, 0, 30));
        auto g = holant::random::weighted(pg, [&] { return t % 3 ? holant::random::nonzero_gaussian(rng, 2) : Scalar(1); });
        ASSERT_EQ(holant::count_pm_fkt(g), holant::enumerate_pm(g)) << t;
    }
}

TEST(Fragment, Examples) {
    EXPECT_EQ(holant::fragment_signature(holant::fragments::exact_one(3)), Signature::symmetric({0, 1, 0, 0}));
    Scalar w = Scalar(2) + I;
    EXPECT_EQ(holant::fragment_signature(holant::fragments::weighted_equality(w)), Signature::symmetric({w, 0, 1}));
    EXPECT_EQ(holant::fragment_signature(MatchgateFragment{}), Signature::constant(1));
    EXPECT_EQ(holant::fragment_signature(holant::fragments::unary_zero()), Signature::symmetric({1, 0}));
    EXPECT_EQ(holant::fragment_signature(holant::fragments::even3()), Signature::symmetric({1, 0, 1, 0}));
    for (int k = 1; k <= 6; ++k) {
        std::vector<Scalar> v(static_cast<std::size_t>(k + 1));
        for (int j = 0; j <= k; j += 2) v[static_cast<std::size_t>(j)] = 1;
        EXPECT_EQ(holant::fragment_signature(holant::fragments::even_indicator(k)), Signature::symmetric(v));
    }
}

TEST(Fragment, Validation) {
    MatchgateFragment bad = holant::fragments::even3();
    std::swap(bad.graph.rotation[1][1], bad.graph.rotation[1][2]);
    EXPECT_THROW(holant::fragment_signature(bad), holant::DomainError);
    MatchgateFragment order = holant::fragments::even3();
    // the dangling edges out of counterclockwise order
    std::swap(order.dangling[0], order.dangling[1]);
    std::swap(order.graph.rotation[1][0], order.graph.rotation[2][3]);
    EXPECT_THROW(order.validate(), holant::DomainError);
}

TEST(Fragment, RandomFragmentsAreMatchgates) {
    holant::random::Rng rng(6);
    int nontrivial = 0;
    for (int t = 0; t < 100; ++t) {
        auto f = holant::random::fragment(rng, 1 + t % 8, t % 6, 1 + t % 5);
        Signature s = holant::fragment_signature(f);
        EXPECT_TRUE(holant::is_matchgate(s)) << s.to_string();
        nontrivial += !s.is_zero();
    }
    EXPECT_GT(nontrivial, 50);
}

TEST(Library, EntriesAndRealize) {
    EXPECT_GE(holant::builtin_library().size(), 12u);
    for (const auto& e : holant::builtin_library()) {
        EXPECT_TRUE(holant::is_matchgate(e.sig)) << e.name;
        EXPECT_TRUE(holant::realize(e.sig.scaled(Scalar(3) - I)).has_value()) << e.name;
    }
    EXPECT_TRUE(holant::realize(Signature::symmetric({2, 0, I})).has_value());
    EXPECT_TRUE(holant::realize(Signature::symmetric({0, 0, 0, 0, 5})).has_value());
    EXPECT_TRUE(holant::realize(Signature::symmetric({I, 0, 0, 0, 0, 0, 0, 0})).has_value());
    EXPECT_TRUE(holant::realize(Signature::zero(3)).has_value());
    EXPECT_TRUE(holant::realize(Signature::constant(4)).has_value());
    EXPECT_FALSE(holant::realize(Signature::symmetric({1, 1})).has_value());
    EXPECT_FALSE(holant::realize(Signature::symmetric({1, 0, 0, 0, 1})).has_value());
}

TEST(MatchgateGrid, Examples) {
    holant::SignatureGrid two;
    two.num_edges = 2;
    int eq = two.registry.add("=2", Signature::equality(2));
    two.add_vertex(eq, {0, 1});
    two.add_vertex(eq, {1, 0});
    EXPECT_EQ(holant::evaluate_matchgate_grid(two), Scalar(2));
    EXPECT_EQ(holant::brute_force_holant(two), Scalar(2));
    // Exact-One_3 on K4 counts its perfect matchings
    holant::SignatureGrid k;
    k.num_edges = 6;
    int s = k.registry.add("E3", Signature::exact_one(3));
    for (const auto& r : k4().rotation) k.add_vertex(s, r);
    EXPECT_EQ(holant::evaluate_matchgate_grid(k), Scalar(3));
    // 2x3 grid, Exact-One at every vertex
    holant::SignatureGrid gg;
    auto g23 = grid_graph(2, 3);
    gg.num_edges = static_cast<int>(g23.edges.size());
    for (const auto& r : g23.rotation) {
        std::string name = "E" + std::to_string(r.size());
        int id = gg.registry.find(name);
        if (id < 0) id = gg.registry.add(name, Signature::exact_one(static_cast<int>(r.size())));
        gg.add_vertex(id, r);
    }
    EXPECT_EQ(holant::evaluate_matchgate_grid(gg), Scalar(3));
}

TEST(MatchgateGrid, Errors) {
    holant::SignatureGrid g;
    g.num_edges = 1;
    int s = g.registry.add("u", Signature::symmetric({1, 1}));
    g.add_vertex(s, {0});
    g.add_vertex(s, {0});
    EXPECT_THROW(holant::evaluate_matchgate_grid(g), holant::DomainError);
    try {
        holant::evaluate_matchgate_grid(g);
    } catch (const holant::DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 0"), std::string::npos);
    }
    // a realization of the wrong signature
    std::vector<std::optional<MatchgateFragment>> wrong{holant::fragments::exact_one(1)};
    g.registry.sigs[0] = Signature::symmetric({1, 0});
    EXPECT_THROW(holant::evaluate_matchgate_grid(g, wrong), holant::DomainError);
    wrong[0] = holant::fragments::unary_zero();
    EXPECT_EQ(holant::evaluate_matchgate_grid(g, wrong), Scalar(1));
}

TEST(MatchgateGrid, RandomGridsMatchBruteForce) {
    holant::random::Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        holant::random::PlanarGraph pg;
        do pg = holant::random::planar_graph(rng, 2 + t % 9, holant::random::uniform(rng, 0, 6));
        while (static_cast<int>(pg.edges.size()) > holant::kBruteForceMaxEdges);
        auto g = holant::random::grid_on(pg, [&](int k) { return holant::random::library_signature(rng, k); });
        ASSERT_EQ(holant::evaluate_matchgate_grid(g), holant::brute_force_holant(g)) << t;
    }
}

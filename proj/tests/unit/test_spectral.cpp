#include <doctest.h>

#include <cmath>

#include "tgp/errors.hpp"
#include "tgp/spectral.hpp"

using namespace tgp;

namespace {

RegularGraph complete(int n) {
    BitMatrix adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return validate_regular(adj);
}

BipartiteRegularGraph even_cycle(int n) {
    BitMatrix adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n));
    return validate_bipartite(adj);
}

BipartiteRegularGraph complete_bipartite(int half) {
    BitMatrix adj(static_cast<std::size_t>(2 * half));
    for (int x = 0; x < half; ++x)
        for (int y = 0; y < half; ++y)
            adj.set_edge(static_cast<std::size_t>(x), static_cast<std::size_t>(half + y));
    return validate_bipartite(adj);
}

BipartiteRegularGraph connected_bipartite(int n, int d, std::uint64_t seed0) {
    for (std::uint64_t s = seed0; s < seed0 + 64; ++s) {
        BipartiteRegularGraph g = random_bipartite_regular(n, d, s);
        if (is_connected(g.adj)) return g;
    }
    REQUIRE(false);
    return BipartiteRegularGraph{};
}

}  // namespace

TEST_CASE("alpha: values, monotonicity, growth") {
    for (int k = 1; k <= 12; ++k) CHECK(alpha(k, k) == 1);
    CHECK(alpha(2, 1) == mpq_class(3, 2));
    for (int k = 1; k <= 12; ++k)
        for (int t = 1; t < k; ++t) CHECK(alpha(k, t) >= alpha(k, t + 1));
    // alpha(k,1) = (2^k - 1)/k, so alpha(k,1) * k / 2^k stays below 1
    for (int k = 1; k <= 16; ++k) {
        mpz_class two_k;
        mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
        mpq_class expected(two_k - 1, k);
        expected.canonicalize();
        CHECK(alpha(k, 1) == expected);
        CHECK(alpha(k, 1) * k < two_k);
    }
    CHECK_THROWS_AS(alpha(2, 3), Error);
}

TEST_CASE("psi factors") {
    const std::vector<int> b{1, 0, -1};
    CHECK(psi(4, b, 10, 3, false) == 1);   // empty product
    CHECK(psi(1, b, 10, 3, false) == 18);  // 3 * 1 * 6
    CHECK(psi(2, b, 10, 3, false) == 6);
    const std::vector<int> ones{1, 1, 1, 1};
    CHECK(psi(1, ones, 10, 3, false) == 81);
    CHECK(psi(1, ones, 10, 3, true) == 81);
    const std::vector<int> bip{1, -1};
    CHECK(psi(1, bip, 10, 3, true) == 6);  // 3 * (5 - 3)
    CHECK_THROWS_AS(psi(1, b, 10, 3, true), Error);  // zero entry in bipartite mode
    CHECK_THROWS_AS(psi(0, b, 10, 3, false), Error);
}

TEST_CASE("basis companion values") {
    const RegularGraph k4 = complete(4);
    const GpEigenBasis basis = GpEigenBasis::from_graph(k4);
    CHECK(basis.lambdas[0] == 3.0);
    CHECK(basis.lambda_stars[0] == 0.0);  // n - 1 - d
    for (int i = 1; i < 4; ++i) {
        CHECK(basis.lambdas[static_cast<std::size_t>(i)] == -1.0);  // snapped exactly
        CHECK(basis.lambda_stars[static_cast<std::size_t>(i)] == 0.0);
    }
    const BipartiteRegularGraph c6 = even_cycle(6);
    const GpEigenBasis bip = GpEigenBasis::from_graph(c6);
    CHECK(bip.lambdas[0] == 2.0);
    CHECK(bip.lambdas[5] == -2.0);
    CHECK(bip.lambda_stars[0] == 1.0);   // n/2 - d
    CHECK(bip.lambda_stars[5] == -1.0);
    for (int i = 1; i < 5; ++i)
        CHECK(bip.lambda_stars[static_cast<std::size_t>(i)] ==
              -bip.lambdas[static_cast<std::size_t>(i)]);
}

TEST_CASE("top index tuple gives the product degree") {
    for (std::uint64_t seed : {3, 4}) {
        const RegularGraph g = random_regular(8, 3, seed);
        const GpEigenBasis basis = GpEigenBasis::from_graph(g);
        for (int k = 1; k <= 3; ++k)
            for (int t = 1; t <= k; ++t) {
                const std::vector<int> top(static_cast<std::size_t>(k), 0);
                CHECK(gp_eigenvalue(basis, top, k, t) ==
                      doctest::Approx(degree_gp(8, 3, k, t).get_d()).epsilon(1e-14));
            }
        const BipartiteRegularGraph b = connected_bipartite(8, 2, seed);
        const GpEigenBasis bb = GpEigenBasis::from_graph(b);
        for (int k = 1; k <= 3; ++k)
            for (int t = 1; t <= k; ++t) {
                const std::vector<int> top(static_cast<std::size_t>(k), 0);
                CHECK(sgp_eigenvalue(bb, top, k, t) ==
                      doctest::Approx(degree_bgp(8, 2, k, t).get_d()).epsilon(1e-14));
            }
    }
}

TEST_CASE("gp spectrum formula matches the oracle, with and without the degree condition") {
    struct Case {
        int n, d, k, t;
        std::uint64_t seed;
    };
    // n=6, d=4 deliberately violates d <= (n-1)/2; the formula holds anyway
    const std::vector<Case> cases{{6, 3, 2, 1, 1}, {6, 3, 2, 2, 1}, {5, 2, 2, 1, 2},
                                  {6, 4, 2, 1, 3}, {4, 1, 3, 2, 4}, {6, 2, 3, 3, 5}};
    for (const auto& c : cases) {
        const RegularGraph g = random_regular(c.n, c.d, c.seed);
        const GpEigenBasis basis = GpEigenBasis::from_graph(g);
        const auto formula = gp_spectrum_formula(basis, c.k, c.t);
        const auto oracle = eigenvalues(gp(g, c.k, c.t).adj);
        CHECK(multiset_distance(formula, oracle.values) < 1e-6);
    }
}

TEST_CASE("sgp spectrum formula matches the oracle on connected bases") {
    {
        const BipartiteRegularGraph g = even_cycle(6);
        const GpEigenBasis basis = GpEigenBasis::from_graph(g);
        for (int k = 1; k <= 2; ++k)
            for (int t = 1; t <= k; ++t) {
                const auto formula = sgp_spectrum_formula(basis, k, t);
                const auto oracle = eigenvalues(sgp(g, k, t).adj);
                CHECK(multiset_distance(formula, oracle.values) < 1e-6);
            }
    }
    {
        const BipartiteRegularGraph g = connected_bipartite(10, 2, 7);
        const GpEigenBasis basis = GpEigenBasis::from_graph(g);
        const auto formula = sgp_spectrum_formula(basis, 2, 1);
        const auto oracle = eigenvalues(sgp(g, 2, 1).adj);
        CHECK(multiset_distance(formula, oracle.values) < 1e-6);
    }
}

TEST_CASE("extreme index tuples of sgp give plus-minus d2 with parity signs") {
    const BipartiteRegularGraph g = connected_bipartite(8, 2, 9);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    const int k = 3, t = 1;
    const double d2 = degree_bgp(8, 2, k, t).get_d();
    int plus = 0, minus = 0;
    for (int bits = 0; bits < (1 << k); ++bits) {
        std::vector<int> idx(static_cast<std::size_t>(k), 0);
        int p = 0;
        for (int j = 0; j < k; ++j)
            if ((bits >> j) & 1) {
                idx[static_cast<std::size_t>(j)] = basis.n - 1;
                ++p;
            }
        const double value = sgp_eigenvalue(basis, idx, k, t);
        const double expected = (p % 2 == 0) ? d2 : -d2;
        CHECK(value == doctest::Approx(expected).epsilon(1e-14));
        ((p % 2 == 0) ? plus : minus) += 1;
    }
    CHECK(plus == 4);   // 2^{k-1} of each sign
    CHECK(minus == 4);
}

TEST_CASE("exact second/third eigenvalue formulas agree with the evaluators") {
    const RegularGraph g = random_regular(8, 3, 11);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    for (int k = 1; k <= 3; ++k)
        for (int t = 1; t <= k; ++t)
            for (int i = 1; i < 8; ++i) {
                std::vector<int> idx(static_cast<std::size_t>(k), 0);
                idx[0] = i;
                CHECK(gp_second_eigenvalue_exact(basis, i, k, t) ==
                      doctest::Approx(gp_eigenvalue(basis, idx, k, t)).epsilon(1e-12));
            }
    const BipartiteRegularGraph b = connected_bipartite(8, 3, 13);
    const GpEigenBasis bb = GpEigenBasis::from_graph(b);
    for (int k = 1; k <= 3; ++k)
        for (int t = 1; t <= k; ++t)
            for (int i = 1; i < 7; ++i) {
                std::vector<int> idx(static_cast<std::size_t>(k), 0);
                idx[0] = i;
                CHECK(bgp_third_eigenvalue_exact(bb, i, k, t) ==
                      doctest::Approx(sgp_eigenvalue(bb, idx, k, t)).epsilon(1e-12));
            }
}

TEST_CASE("t = k collapse and zero-lambda bases") {
    const RegularGraph k4 = complete(4);
    const GpEigenBasis basis = GpEigenBasis::from_graph(k4);
    for (int k = 2; k <= 4; ++k) {
        // lambda(K4) = 1, so Lambda = d^{k-1} exactly
        CHECK(lambda_gp(basis, k, k).value == std::pow(3.0, k - 1));
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), 3, static_cast<unsigned long>(k - 1));
        CHECK(second_eigenvalue_coeff(4, 3, k, k, false) == dk);
    }
    const BipartiteRegularGraph k33 = complete_bipartite(3);
    const GpEigenBasis bip = GpEigenBasis::from_graph(k33);
    for (int k = 1; k <= 3; ++k)
        for (int t = 1; t <= k; ++t) CHECK(lambda_bgp(bip, k, t).value == 0.0);
}

TEST_CASE("lambda_gp matches the oracle second eigenvalue of the product") {
    const RegularGraph g = random_regular(6, 3, 15);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    for (int k = 1; k <= 2; ++k)
        for (int t = 1; t <= k; ++t) {
            const auto oracle = eigenvalues(gp(g, k, t).adj);
            CHECK(lambda_gp(basis, k, t).value ==
                  doctest::Approx(lambda_of(oracle, false)).epsilon(1e-9));
        }
}

TEST_CASE("lambda_bgp equals the oracle third-largest-absolute eigenvalue") {
    const BipartiteRegularGraph g = connected_bipartite(8, 2, 17);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    for (int k = 1; k <= 3; ++k)
        for (int t = 1; t <= k; ++t) {
            const auto oracle = eigenvalues(bgp(g, k, t).adj);
            std::vector<double> abs_vals(oracle.values.size());
            for (std::size_t i = 0; i < oracle.values.size(); ++i)
                abs_vals[i] = std::fabs(oracle.values[i]);
            std::sort(abs_vals.begin(), abs_vals.end(), std::greater<double>());
            CHECK(lambda_bgp(basis, k, t).value == doctest::Approx(abs_vals[2]).epsilon(1e-9));
            CHECK(lambda_bgp(basis, k, t).value ==
                  doctest::Approx(sgp_lambda_outside_extremes(basis, k, t)).epsilon(1e-9));
        }
}

TEST_CASE("sandwich bounds hold and collapse at t = k") {
    const RegularGraph g = random_regular(8, 3, 19);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    for (int k = 1; k <= 3; ++k)
        for (int t = 1; t <= k; ++t) {
            const LambdaBounds b = lambda_bounds_gp(basis, k, t);
            CHECK(b.degree_condition_ok);
            const double v = lambda_gp(basis, k, t).value;
            CHECK(b.lower - 1e-9 <= v);
            CHECK(v <= b.upper + 1e-9);
            if (t == k) CHECK(b.lower == b.upper);
        }
    // degree-condition violation is flagged, bounds still produced
    const RegularGraph dense = random_regular(6, 4, 21);
    const LambdaBounds flagged = lambda_bounds_gp(GpEigenBasis::from_graph(dense), 2, 1);
    CHECK_FALSE(flagged.degree_condition_ok);
    CHECK(flagged.upper >= flagged.lower);
}

TEST_CASE("eigenvector residuals are tiny, including degenerate eigenvalues") {
    const RegularGraph g = validate_regular(even_cycle(4).adj);  // C4: eigenvalue 0 is double
    const GpEigenBasis basis = GpEigenBasis::from_graph(g, /*with_vectors=*/true);
    const ProductGraph p = gp(g, 2, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const std::vector<int> idx{i, j};
            CHECK(eigenvector_residual(basis, idx, p) < 1e-8);
        }
    GpEigenBasis no_vectors = GpEigenBasis::from_graph(g);
    CHECK_THROWS_AS(eigenvector_residual(no_vectors, std::vector<int>{0, 0}, p), Error);
}

TEST_CASE("index bounds are enforced") {
    const RegularGraph g = complete(4);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    CHECK_THROWS_AS(gp_eigenvalue(basis, std::vector<int>{0, 4}, 2, 1), Error);
    CHECK_THROWS_AS(gp_second_eigenvalue_exact(basis, 0, 2, 1), Error);
    const BipartiteRegularGraph b = complete_bipartite(2);
    const GpEigenBasis bb = GpEigenBasis::from_graph(b);
    CHECK_THROWS_AS(bgp_third_eigenvalue_exact(bb, 3, 2, 1), Error);  // i = n-1 is extreme
}

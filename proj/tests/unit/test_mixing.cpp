#include <doctest.h>

#include <cmath>

#include "tgp/eigen.hpp"
#include "tgp/mixing.hpp"
#include "tgp/spectral.hpp"

using namespace tgp;

namespace {

ProductGraph small_gp_product(std::uint64_t seed, int k = 2, int t = 1) {
    const RegularGraph g = random_regular(8, 3, seed);
    return gp(g, k, t);
}

IndexSet all_of(std::size_t n, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = lo; i < hi; ++i) idx.push_back(i);
    return IndexSet(n, idx);
}

}  // namespace

TEST_CASE("edge_count conventions") {
    // single edge, S = T = {u, v}: ordered pairs count it twice
    BitMatrix adj(2);
    adj.set_edge(0, 1);
    ProductGraph p;
    p.kind = ProductKind::gp;
    p.adj = adj;
    const IndexSet both(2, {0, 1});
    CHECK(edge_count(adj, both, both) == 2);

    // S = T = V on a regular graph: handshake identity N*D
    const ProductGraph q = small_gp_product(1);
    const IndexSet v = all_of(q.size(), 0, q.size());
    CHECK(edge_count(q.adj, v, v) ==
          static_cast<long long>(q.size()) * static_cast<long long>(q.adj.row_popcount(0)));

    // disjoint sets with no crossing edges
    BitMatrix pair(4);
    pair.set_edge(0, 1);
    pair.set_edge(2, 3);
    CHECK(edge_count(pair, IndexSet(4, {0, 1}), IndexSet(4, {2, 3})) == 0);
}

TEST_CASE("edge_count symmetry and additivity") {
    const ProductGraph p = small_gp_product(2);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const IndexSet S = random_subset(p.size(), 0, p.size(), 1 + rng.below(p.size()), rng);
        const IndexSet T = random_subset(p.size(), 0, p.size(), 1 + rng.below(p.size()), rng);
        CHECK(edge_count(p.adj, S, T) == edge_count(p.adj, T, S));
    }
    // additivity over a disjoint split of S
    const IndexSet s1 = all_of(p.size(), 0, p.size() / 3);
    const IndexSet s2 = all_of(p.size(), p.size() / 3, p.size() / 2);
    const IndexSet s12 = all_of(p.size(), 0, p.size() / 2);
    const IndexSet t = all_of(p.size(), p.size() / 2, p.size());
    CHECK(edge_count(p.adj, s12, t) == edge_count(p.adj, s1, t) + edge_count(p.adj, s2, t));
}

TEST_CASE("expected_edges") {
    CHECK(expected_edges(3, 10, 10, 10, false) == mpq_class(30));   // D*N
    CHECK(expected_edges(3, 10, 0, 7, false) == 0);
    CHECK(expected_edges(2, 8, 4, 4, true) == mpq_class(8));        // 2D(N/2)(N/2)/N = DN/2
    CHECK(expected_edges(3, 7, 2, 3, false) == mpq_class(18, 7));   // exact rational
}

TEST_CASE("eml_check trivial cases") {
    const ProductGraph p = small_gp_product(4);
    const IndexSet v = all_of(p.size(), 0, p.size());
    const double lam = 5.0;
    const DiscrepancyReport full = eml_check(p, v, v, lam);
    CHECK(full.pass);
    CHECK(full.ratio == doctest::Approx(0.0));  // e = mu exactly by regularity

    const IndexSet empty(p.size(), {});
    const DiscrepancyReport none = eml_check(p, empty, empty, lam);
    CHECK(none.pass);
    CHECK(none.e == 0);
    CHECK(none.bound == 0.0);
}

TEST_CASE("oracle-lambda scans never fail") {
    for (std::uint64_t seed : {1, 2}) {
        const ProductGraph p = small_gp_product(seed);
        const double lam = lambda_of(eigenvalues(p.adj), false);
        const ScanResult scan = jumbledness_scan(p, lam, 200, seed);
        CHECK(scan.all_pass);
        CHECK(scan.max_ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("formula-bound scans never fail under the degree condition") {
    const RegularGraph g = random_regular(8, 3, 6);
    const GpEigenBasis basis = GpEigenBasis::from_graph(g);
    for (int t = 1; t <= 2; ++t) {
        const ProductGraph p = gp(g, 2, t);
        const double bound_value = lambda_bounds_gp(basis, 2, t).upper;
        const ScanResult scan = jumbledness_scan(p, bound_value, 300, 99);
        CHECK(scan.all_pass);
    }
}

TEST_CASE("bipartite scans draw sides correctly") {
    const BipartiteRegularGraph g = random_bipartite_regular(8, 2, 8);
    const ProductGraph p = bgp(g, 2, 1);
    const double lam = lambda_of(eigenvalues(p.adj), true);
    const ScanResult scan = jumbledness_scan(p, lam, 200, 5);
    CHECK(scan.all_pass);
    // full sides: e equals mu exactly
    const IndexSet left = all_of(p.size(), 0, p.size() / 2);
    const IndexSet right = all_of(p.size(), p.size() / 2, p.size());
    const DiscrepancyReport full = eml_check(p, left, right, lam);
    CHECK(full.ratio == doctest::Approx(0.0));
    CHECK_THROWS_AS(eml_check(p, right, left, lam), Error);  // wrong sides
}

TEST_CASE("relative error application") {
    const RegularGraph g = random_regular(8, 4, 10);  // lambda <= 2 sqrt(d) holds easily
    const double lam = lambda_of(eigenvalues(g.adj), false);
    const ProductGraph p = gp(g, 2, 1);

    // xi = 1: S = T = V, epsilon is exactly zero
    const RelativeErrorReport full = relative_error_report(p, 1.0, g.d, lam, 10, 1);
    CHECK(full.premise_ok);
    CHECK(full.epsilon_observed == doctest::Approx(0.0));

    const RelativeErrorReport half = relative_error_report(p, 0.5, g.d, lam, 100, 2);
    CHECK(half.premise_ok);
    CHECK(half.pass);
    CHECK(half.epsilon_observed <= half.epsilon_bound);

    // premise gate: pretend the base lambda is larger than 2 sqrt(d)
    const RelativeErrorReport gated = relative_error_report(p, 0.5, g.d, 2.0 * std::sqrt(4.0) + 0.5, 10, 3);
    CHECK_FALSE(gated.premise_ok);
}

TEST_CASE("csv export shape") {
    const ProductGraph p = small_gp_product(11);
    const double lam = lambda_of(eigenvalues(p.adj), false);
    const ScanResult scan = jumbledness_scan(p, lam, 5, 7, /*keep_rows=*/true);
    const std::string csv = to_csv(scan.rows);
    CHECK(csv.find("size_s,size_t,e,mu,bound,ratio,pass") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows
}

#include <doctest.h>

#include <cmath>

#include "tgp/cospectral.hpp"
#include "tgp/eigen.hpp"
#include "tgp/errors.hpp"

using namespace tgp;

namespace {

BipartiteRegularGraph complete_bipartite(int half) {
    BitMatrix adj(static_cast<std::size_t>(2 * half));
    for (int x = 0; x < half; ++x)
        for (int y = 0; y < half; ++y)
            adj.set_edge(static_cast<std::size_t>(x), static_cast<std::size_t>(half + y));
    return validate_bipartite(adj);
}

// star K_{1,3} on balanced 3+3 parts: center 0 with leaves 3..5, vertices
// 1 and 2 isolated on the X side
BipartiteView balanced_star() {
    BipartiteView v;
    v.n = 6;
    v.nx = 3;
    v.adj = BitMatrix(6);
    v.adj.set_edge(0, 3);
    v.adj.set_edge(0, 4);
    v.adj.set_edge(0, 5);
    return v;
}

BitMatrix cycle_bits(int n) {
    BitMatrix adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n));
    return adj;
}

}  // namespace

TEST_CASE("walk counts: K22 closed 2-walks and trivial patterns") {
    const BipartiteView g = BipartiteView::of(complete_bipartite(2));
    const std::vector<int> ones{1, 1};
    CHECK(count_walks_trace(g, ones, Side::X) == 4);  // d per X vertex
    CHECK(count_walks_enumerate(g, ones, Side::X) == 4);
    const std::vector<int> zeros{0, 0};
    CHECK(count_walks_trace(g, zeros, Side::X) == 0);  // no non-edges in K22
    const std::vector<int> odd{1, 1, 1};
    CHECK(count_walks_trace(g, odd, Side::X) == 0);    // odd length closes nothing
    CHECK(count_walks_enumerate(g, odd, Side::X) == 0);
}

TEST_CASE("trace and enumeration agree across all patterns") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const BipartiteRegularGraph g = random_bipartite_regular(8, 2, seed);
        const BipartiteView v = BipartiteView::of(g);
        for (int ell : {2, 4, 6}) {
            std::vector<int> u(static_cast<std::size_t>(ell));
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ell); ++bits) {
                for (int i = 0; i < ell; ++i) u[static_cast<std::size_t>(i)] = (bits >> i) & 1;
                CHECK(count_walks_trace(v, u, Side::X) == count_walks_enumerate(v, u, Side::X));
                CHECK(count_walks_trace(v, u, Side::Y) == count_walks_enumerate(v, u, Side::Y));
            }
        }
    }
}

TEST_CASE("walk lemma holds on regular bases") {
    for (std::uint64_t seed : {4, 5}) {
        const BipartiteRegularGraph g = random_bipartite_regular(12, 3, seed);
        const WalkLemmaReport r = verify_walk_lemma(BipartiteView::of(g), 6);
        CHECK(r.holds);
    }
}

TEST_CASE("walk lemma breaks on the balanced star control") {
    const WalkLemmaReport r = verify_walk_lemma(balanced_star(), 4, /*with_enumeration=*/true);
    CHECK_FALSE(r.holds);
    CHECK(r.methods_agree);
    REQUIRE(r.violating_u.has_value());
    CHECK(r.violating_x != r.violating_y);
}

TEST_CASE("all-ones pattern restriction identities") {
    const BipartiteRegularGraph g = random_bipartite_regular(10, 2, 6);
    const BipartiteView v = BipartiteView::of(g);
    for (int ell : {2, 4, 6}) {
        const std::vector<int> ones(static_cast<std::size_t>(ell), 1);
        const long long x = count_walks_trace(v, ones, Side::X);
        const long long y = count_walks_trace(v, ones, Side::Y);
        CHECK(x == y);  // cyclic shift pairs the two sides
        const auto traces = exact_traces(g.adj, ell);
        CHECK(mpz_class(static_cast<long>(x + y)) == traces[static_cast<std::size_t>(ell - 1)]);
    }
}

TEST_CASE("connectivity multisets are template independent") {
    const BipartiteRegularGraph g = random_bipartite_regular(8, 2, 7);
    for (int k = 1; k <= 2; ++k) {
        for (int ell : {2, 4}) {
            const auto ref = connectivity_multiset(g, k, 1, Template::all_x(k), ell);
            for (const auto& tau : Template::representatives(k)) {
                CHECK(connectivity_multiset(g, k, 1, tau, ell) == ref);
                CHECK(connectivity_multiset(g, k, 1, tau.complement(), ell) == ref);
            }
        }
    }
}

TEST_CASE("connectivity vectors for 2-cycles are symmetric pairs") {
    const BipartiteRegularGraph g = random_bipartite_regular(6, 2, 8);
    const auto ms = connectivity_multiset(g, 2, 1, Template::parse("XY"), 2);
    for (const auto& [vec, count] : ms) {
        REQUIRE(vec.size() == 2);
        CHECK(vec[0] == vec[1]);  // q(a,b) == q(b,a)
        CHECK(count > 0);
    }
    // odd length: empty multiset
    CHECK(connectivity_multiset(g, 2, 1, Template::parse("XY"), 3).empty());
}

TEST_CASE("exact traces match float spectra power sums") {
    const BipartiteRegularGraph g = random_bipartite_regular(8, 3, 9);
    const auto traces = exact_traces(g.adj, 8);
    const Spectrum s = eigenvalues(g.adj);
    for (int ell = 1; ell <= 8; ++ell) {
        double power_sum = 0;
        for (double v : s.values) power_sum += std::pow(v, ell);
        CHECK(traces[static_cast<std::size_t>(ell - 1)].get_d() ==
              doctest::Approx(power_sum).epsilon(1e-9));
    }
}

TEST_CASE("cospectral certification basics") {
    const BitMatrix c6 = cycle_bits(6);
    // a graph is cospectral with itself and with any relabeling
    CHECK(cospectral_certify(c6, c6).cospectral);
    BitMatrix relabeled(6);
    const int perm[6] = {2, 4, 0, 5, 1, 3};
    for (std::size_t i = 0; i < 6; ++i)
        for (int j : c6.neighbors(i))
            relabeled.set_edge(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j]));
    CHECK(cospectral_certify(c6, relabeled).cospectral);

    // C6 vs two triangles: trace at length 3 differs (0 vs 12)
    BitMatrix two_triangles(6);
    for (int base : {0, 3})
        for (int i = 0; i < 3; ++i)
            two_triangles.set_edge(static_cast<std::size_t>(base + i),
                                   static_cast<std::size_t>(base + (i + 1) % 3));
    const TraceCertificate cert = cospectral_certify(c6, two_triangles);
    CHECK_FALSE(cert.cospectral);
    const auto ta = exact_traces(c6, 3);
    const auto tb = exact_traces(two_triangles, 3);
    CHECK(ta[2] == 0);
    CHECK(tb[2] == 12);

    BitMatrix smaller(5);
    CHECK_THROWS_AS(cospectral_certify(c6, smaller), Error);
}

TEST_CASE("hybrid certification kicks in past the exact cap") {
    const BitMatrix c6 = cycle_bits(6);
    const TraceCertificate cert = cospectral_certify(c6, c6, /*exact_cap=*/3);
    CHECK(cert.method == TraceCertificate::Method::exact_prefix_plus_spectrum);
    CHECK(cert.exact_ell == 3);
    CHECK(cert.cospectral);
}

TEST_CASE("nonisomorphism witness") {
    const BitMatrix c6 = cycle_bits(6);
    CHECK_FALSE(nonisomorphism_witness(c6, c6).found);  // inconclusive on equal graphs

    // C6 and two triangles share diag(A^4) = (6,...,6): closed 4-walk counts
    // cannot separate them, the witness stays inconclusive
    BitMatrix two_triangles(6);
    for (int base : {0, 3})
        for (int i = 0; i < 3; ++i)
            two_triangles.set_edge(static_cast<std::size_t>(base + i),
                                   static_cast<std::size_t>(base + (i + 1) % 3));
    CHECK_FALSE(nonisomorphism_witness(c6, two_triangles).found);

    // K4 plus two isolated vertices against C6: 4-walk profiles differ
    BitMatrix k4_iso(6);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            k4_iso.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    const WitnessResult w = nonisomorphism_witness(c6, k4_iso);
    CHECK(w.found);
    CHECK(w.diag1 != w.diag2);
}

TEST_CASE("template products of one base are cospectral") {
    const BipartiteRegularGraph g = random_bipartite_regular(8, 2, 10);
    const CospectralFamily family = cospectral_family(g, 2, 1);
    REQUIRE(family.templates.size() == 2);
    CHECK(family.all_cospectral);
    CHECK(family.exact_ell == static_cast<int>(family.products[0].size()));  // fully exact here
    // spectra agree as a double check
    CHECK(multiset_close(eigenvalues(family.products[0].adj).values,
                          eigenvalues(family.products[1].adj).values, 1e-8));
}

TEST_CASE("k = 1 family is a single class") {
    const BipartiteRegularGraph g = random_bipartite_regular(6, 2, 11);
    const CospectralFamily family = cospectral_family(g, 1, 1);
    CHECK(family.templates.size() == 1);
    CHECK(family.all_cospectral);
}

TEST_CASE("enumeration budget is enforced") {
    const BipartiteRegularGraph g = random_bipartite_regular(12, 3, 12);
    const BipartiteView v = BipartiteView::of(g);
    const std::vector<int> u{1, 1, 1, 1, 1, 1};
    CHECK_THROWS_AS(count_walks_enumerate(v, u, Side::X, /*budget=*/10), Error);
}

TEST_CASE("k = 1 connectivity vectors reduce to walk-pattern counts") {
    const BipartiteRegularGraph g = random_bipartite_regular(8, 3, 13);
    const BipartiteView v = BipartiteView::of(g);
    for (int ell : {2, 4}) {
        const auto ms = connectivity_multiset(g, 1, 1, Template::all_x(1), ell);
        std::vector<int> u(static_cast<std::size_t>(ell));
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ell); ++bits) {
            long long expected = 0;
            for (int i = 0; i < ell; ++i) u[static_cast<std::size_t>(i)] = (bits >> i) & 1;
            expected = count_walks_trace(v, u, Side::X) + count_walks_trace(v, u, Side::Y);
            const auto it = ms.find(u);
            const long long got = it == ms.end() ? 0 : it->second;
            CHECK(got == expected);
        }
    }
}

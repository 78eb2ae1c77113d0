#include <doctest.h>

#include "tgp/errors.hpp"
#include "tgp/product.hpp"
#include "tgp/rng.hpp"
#include "tgp/verify.hpp"

using namespace tgp;

TEST_CASE("edge list round trip") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const RegularGraph g = random_regular(10, 3, seed);
        const std::string text = write_edge_list(to_edge_list(g));
        const EdgeList back = parse_edge_list(text);
        CHECK(back.n == g.n);
        CHECK(back.d == g.d);
        CHECK_FALSE(back.bipartite);
        CHECK(edge_list_bits(back) == g.adj);

        const BipartiteRegularGraph b = random_bipartite_regular(8, 2, seed);
        const EdgeList bel = parse_edge_list(write_edge_list(to_edge_list(b)));
        CHECK(bel.bipartite);
        CHECK(edge_list_bits(bel) == b.adj);
    }
}

TEST_CASE("product files carry a provenance header") {
    const BipartiteRegularGraph g = random_bipartite_regular(8, 2, 4);
    const ProductGraph p = sgp(g, 2, 1);
    const EdgeList el = to_edge_list(p, 77);
    REQUIRE_FALSE(el.comments.empty());
    CHECK(el.comments[0].find("kind=sgp") != std::string::npos);
    CHECK(el.comments[0].find("k=2") != std::string::npos);
    CHECK(el.comments[0].find("t=1") != std::string::npos);
    CHECK(el.comments[0].find("seed=77") != std::string::npos);
    CHECK(el.comments[0].find("base-hash=") != std::string::npos);
    // comments survive the round trip
    const EdgeList back = parse_edge_list(write_edge_list(el));
    CHECK(back.comments == el.comments);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_edge_list(""), Error);                       // no header
    CHECK_THROWS_AS(parse_edge_list("4 2\n1 0\n"), Error);             // u >= v
    CHECK_THROWS_AS(parse_edge_list("4 2\n0 9\n"), Error);             // out of range
    CHECK_THROWS_AS(parse_edge_list("4 2\n0 1\n0 1\n"), Error);        // duplicate
    CHECK_THROWS_AS(parse_edge_list("4 2 weird\n0 1\n"), Error);       // bad tag
    CHECK_NOTHROW(parse_edge_list("# note\n4 2 bipartite\n0 2\n"));
}

TEST_CASE("graph hash distinguishes graphs and ignores nothing it should not") {
    const RegularGraph a = random_regular(10, 3, 1);
    const RegularGraph b = random_regular(10, 3, 2);
    CHECK(graph_hash(a.n, a.d, a.adj) != graph_hash(b.n, b.d, b.adj));
    CHECK(graph_hash(a.n, a.d, a.adj) == graph_hash(a.n, a.d, a.adj));
}

TEST_CASE("spectrum json shape") {
    Spectrum s;
    s.values = {2.0, 0.0, -2.0};
    const json j = spectrum_json(4, 2, s);
    CHECK(j["n"] == 4);
    CHECK(j["d"] == 2);
    CHECK(j["values"].size() == 3);
}

TEST_CASE("rng streams are deterministic and independent") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng s0 = Rng::stream(42, 0), s1 = Rng::stream(42, 1);
    bool differ = false;
    for (int i = 0; i < 10; ++i) differ = differ || (s0.next() != s1.next());
    CHECK(differ);
    // below() stays in range and hits both ends eventually
    Rng r(7);
    bool low = false, high = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t v = r.below(10);
        CHECK(v < 10);
        low = low || v == 0;
        high = high || v == 9;
    }
    CHECK(low);
    CHECK(high);
}

TEST_CASE("tiny verify-all report is byte stable") {
    RunConfig cfg;
    cfg.seed = 7;
    cfg.grid = GridSpec::tiny();
    cfg.mixing_samples = 50;
    cfg.application_samples = 20;
    cfg.walk_bases = 2;
    cfg.walk_ell_max = 4;
    const std::string a = verify_all(cfg).dump(2);
    const std::string b = verify_all(cfg).dump(2);
    CHECK(a == b);
}

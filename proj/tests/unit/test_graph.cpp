#include <doctest.h>

#include "tgp/errors.hpp"
#include "tgp/graph.hpp"

using namespace tgp;

namespace {

BitMatrix cycle(int n) {
    BitMatrix adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n));
    return adj;
}

}  // namespace

TEST_CASE("validate accepts the 4-cycle") {
    const RegularGraph g = validate_regular(cycle(4));
    CHECK(g.n == 4);
    CHECK(g.d == 2);
}

TEST_CASE("validate rejects self-loops, asymmetry and irregularity") {
    BitMatrix loop(3);
    loop.set(1, 1, true);
    CHECK_THROWS_AS(validate_regular(loop), Error);

    BitMatrix asym(3);
    asym.set(0, 1, true);  // deliberately one-directional
    try {
        validate_regular(asym);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSymmetric);
    }

    BitMatrix path(3);
    path.set_edge(0, 1);
    path.set_edge(1, 2);
    try {
        validate_regular(path);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotRegular);
    }
}

TEST_CASE("bipartite validation relabels interleaved parts") {
    // 4-cycle 0-1-2-3 has parts {0,2} and {1,3}; canonical layout puts X first
    const BipartiteRegularGraph g = validate_bipartite(cycle(4));
    CHECK(g.n == 4);
    CHECK(g.d == 2);
    // relabeled graph is K_{2,2}: all cross pairs, nothing inside a part
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 2; y < 4; ++y) CHECK(g.adj.get(x, y));
    CHECK_FALSE(g.adj.get(0, 1));
    CHECK_FALSE(g.adj.get(2, 3));
}

TEST_CASE("odd cycle is rejected with a witness") {
    try {
        validate_bipartite(cycle(3));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotBipartite);
        CHECK(std::string(e.what()).find("witness") != std::string::npos);
    }
}

TEST_CASE("random_regular produces valid graphs and K4 when forced") {
    const RegularGraph k4 = random_regular(4, 3, 7);
    CHECK(k4.d == 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(k4.adj.get(i, j));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RegularGraph g = random_regular(12, 3, seed);
        CHECK_NOTHROW(validate_regular(g.adj));
        const RegularGraph again = random_regular(12, 3, seed);
        CHECK(g.adj == again.adj);  // deterministic per seed
    }
}

TEST_CASE("random_regular rejects infeasible degrees") {
    CHECK_THROWS_AS(random_regular(5, 3, 1), Error);   // parity
    CHECK_THROWS_AS(random_regular(4, 4, 1), Error);   // d >= n
}

TEST_CASE("random_bipartite_regular basics") {
    const BipartiteRegularGraph c4 = random_bipartite_regular(4, 2, 3);
    // only one simple option: the 4-cycle as complete bipartite K22
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 2; y < 4; ++y) CHECK(c4.adj.get(x, y));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const BipartiteRegularGraph g = random_bipartite_regular(12, 3, seed);
        CHECK_NOTHROW(validate_bipartite(g.adj));
        CHECK(g.d == 3);
        // all edges cross
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) CHECK_FALSE(g.adj.get(i, j));
    }
    CHECK_THROWS_AS(random_bipartite_regular(6, 4, 1), Error);  // d > n/2
}

TEST_CASE("bipartite complement is an involution with complementary degree") {
    const BipartiteRegularGraph g = random_bipartite_regular(12, 3, 9);
    const BipartiteRegularGraph gc = bipartite_complement(g);
    CHECK(gc.d == 3);  // n/2 - d = 3
    CHECK_NOTHROW(validate_bipartite(gc.adj));
    CHECK(bipartite_complement(gc).adj == g.adj);

    // matching on 6 vertices -> 2-regular complement
    const BipartiteRegularGraph m = random_bipartite_regular(6, 1, 2);
    const BipartiteRegularGraph mc = bipartite_complement(m);
    CHECK(mc.d == 2);
    CHECK_NOTHROW(validate_bipartite(mc.adj));

    // d = n/2 complements to the edgeless graph
    const BipartiteRegularGraph full = random_bipartite_regular(4, 2, 1);
    const BipartiteRegularGraph empty = bipartite_complement(full);
    CHECK(empty.d == 0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(empty.adj.row_popcount(i) == 0);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(cycle(6)));
    BitMatrix two(4);
    two.set_edge(0, 1);
    two.set_edge(2, 3);
    CHECK_FALSE(is_connected(two));
}

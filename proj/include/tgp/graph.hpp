#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tgp/bitmatrix.hpp"

namespace tgp {

// Simple d-regular graph on n vertices. Instances always come out of
// validate_regular() or a generator, so the invariants (no self-loops,
// symmetric adjacency, uniform degree) hold by construction and the value
// can be shared freely across threads.
struct RegularGraph {
    int n = 0;
    int d = 0;
    BitMatrix adj;

    std::vector<int> neighbors(int v) const { return adj.neighbors(static_cast<std::size_t>(v)); }
};

// d-regular bipartite graph in canonical layout: X occupies indices
// 0..n/2-1, Y occupies n/2..n-1, every edge crosses the two halves.
struct BipartiteRegularGraph {
    int n = 0;
    int d = 0;
    BitMatrix adj;

    int half() const { return n / 2; }
    std::vector<int> neighbors(int v) const { return adj.neighbors(static_cast<std::size_t>(v)); }
};

// Checks simplicity, symmetry and regularity; throws NotSimple /
// NotSymmetric / NotRegular with the offending vertex.
RegularGraph validate_regular(const BitMatrix& adj);

// Additionally finds a proper 2-coloring (throws NotBipartite with an
// odd-cycle witness) and relabels vertices into the canonical X-first
// layout. Accepts any vertex order on input.
BipartiteRegularGraph validate_bipartite(const BitMatrix& adj);

// Pairing-model generator: d stubs per vertex, random perfect matching of
// stubs, restart on self-loop or duplicate edge. Deterministic per seed.
RegularGraph random_regular(int n, int d, std::uint64_t seed, int max_retries = 20000);

// Union of d random perfect matchings between the two halves, restarted
// whenever two matchings collide on an edge. Deterministic per seed.
BipartiteRegularGraph random_bipartite_regular(int n, int d, std::uint64_t seed,
                                               int max_retries = 20000);

// Complement within the complete bipartite graph: adj' = C - adj. The
// result is (n/2 - d)-regular; d = n/2 yields the edgeless graph.
BipartiteRegularGraph bipartite_complement(const BipartiteRegularGraph& g);

bool is_connected(const BitMatrix& adj);

// FNV-1a over (n, d, sorted edge list); identifies base graphs in product
// file headers and reports.
std::uint64_t graph_hash(int n, int d, const BitMatrix& adj);

// --- edge-list text format ------------------------------------------------
// Optional '#' comment lines, then "n d [bipartite]", then one "u v" per
// line with u < v, 0-indexed.

struct EdgeList {
    int n = 0;
    int d = 0;
    bool bipartite = false;
    std::vector<std::pair<int, int>> edges;       // u < v, sorted
    std::vector<std::string> comments;            // without leading '#'
};

EdgeList to_edge_list(const RegularGraph& g);
EdgeList to_edge_list(const BipartiteRegularGraph& g);
std::string write_edge_list(const EdgeList& el);
EdgeList parse_edge_list(std::string_view text);
BitMatrix edge_list_bits(const EdgeList& el);

RegularGraph load_regular(const std::string& path);
BipartiteRegularGraph load_bipartite(const std::string& path);
EdgeList read_edge_list_file(const std::string& path);
void write_edge_list_file(const std::string& path, const EdgeList& el);

}  // namespace tgp

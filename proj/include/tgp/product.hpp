#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgp/graph.hpp"

namespace tgp {

enum class Side : std::uint8_t { X, Y };

// Which half each tuple coordinate is drawn from.
struct Template {
    std::vector<Side> symbols;

    int k() const { return static_cast<int>(symbols.size()); }
    Template complement() const;
    std::string str() const;                      // e.g. "XYX"
    static Template parse(const std::string& s);  // accepts upper or lower case
    static Template all_x(int k);
    // One template per complement-pair class: every template starting with X.
    static std::vector<Template> representatives(int k);
    int x_count() const;

    friend bool operator==(const Template&, const Template&) = default;
};

enum class ProductKind { gp, bgp, bgp_template, sgp };

const char* to_string(ProductKind kind);
ProductKind product_kind_from(const std::string& name);

// Explicit threshold product. Vertices are k-tuples of base vertex indices
// listed lexicographically (last coordinate fastest); for the two-block
// kinds the tau block precedes the tau-complement block.
struct ProductGraph {
    ProductKind kind = ProductKind::gp;
    int k = 1;
    int t = 1;
    int base_n = 0;
    int base_d = 0;
    bool base_bipartite = false;
    std::uint64_t base_hash = 0;
    std::optional<Template> tau;  // bgp_template only
    std::vector<std::vector<int>> vertices;
    BitMatrix adj;

    std::size_t size() const { return vertices.size(); }
    // d1 for gp, d2 for the bipartite kinds (Eq. of the degree formulas)
    mpz_class formula_degree() const;
    // bgp / bgp_template have the two template blocks as bipartition halves
    bool two_block_layout() const {
        return kind == ProductKind::bgp || kind == ProductKind::bgp_template;
    }
};

// Number of coordinates where (a_i, b_i) is a base edge.
int coordinate_edge_count(std::span<const int> a, std::span<const int> b, const BitMatrix& base_adj);

ProductGraph gp(const RegularGraph& g, int k, int t, std::size_t cap = 4096);
ProductGraph bgp(const BipartiteRegularGraph& g, int k, int t, std::size_t cap = 4096);
ProductGraph bgp_template(const BipartiteRegularGraph& g, int k, int t, const Template& tau,
                          std::size_t cap = 4096);
ProductGraph sgp(const BipartiteRegularGraph& g, int k, int t, std::size_t cap = 4096);

// Adjacency of sgp built the other way: sum over sign vectors b (at least t
// ones) of k-fold Kronecker products of A / A-bar. Returns the dense 0/1
// matrix row-major; must match sgp().adj entrywise.
std::vector<std::uint8_t> sgp_adjacency_tensor(const BipartiteRegularGraph& g, int k, int t,
                                               std::size_t cap = 4096);

mpz_class binomial(int n, int r);
mpz_class degree_gp(int n, int d, int k, int t);
mpz_class degree_bgp(int n, int d, int k, int t);

// Exact per-vertex degree audit against the closed formula.
struct DegreeAudit {
    bool regular = false;
    bool matches_formula = false;
    std::uint64_t audited_degree = 0;
    mpz_class formula;
};
DegreeAudit audit_degree(const ProductGraph& p);

// All tuples with the given template, lexicographic order (X half maps to
// base indices [0, n/2), Y half to [n/2, n)).
std::vector<std::vector<int>> template_block_tuples(int base_n, const Template& tau);

EdgeList to_edge_list(const ProductGraph& p, std::uint64_t seed);

}  // namespace tgp

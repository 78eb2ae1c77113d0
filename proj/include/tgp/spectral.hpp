#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "tgp/eigen.hpp"
#include "tgp/graph.hpp"
#include "tgp/product.hpp"

namespace tgp {

// Base spectrum plus the companion values that drive the closed-form
// product spectra. Nonbipartite mode pairs lambda*_1 = n-1-d with
// lambda*_i = -1-lambda_i; bipartite mode pairs lambda*_1 = n/2-d,
// lambda*_n = d-n/2 and lambda*_i = -lambda_i in between. Eigenvalues
// within 1e-9 of an integer are snapped (adjacency eigenvalues are
// algebraic integers, so a rational eigenvalue is an integer), which keeps
// the extreme-tuple evaluations exact.
struct GpEigenBasis {
    bool bipartite = false;
    int n = 0;
    int d = 0;
    std::vector<double> lambdas;       // sorted descending, lambdas[0] == d
    std::vector<double> lambda_stars;
    std::vector<std::vector<double>> vectors;  // empty unless requested

    static GpEigenBasis from_graph(const RegularGraph& g, bool with_vectors = false);
    static GpEigenBasis from_graph(const BipartiteRegularGraph& g, bool with_vectors = false);
};

// alpha(k, t) = sum_{l=0}^{k-t} C(k-t, l) / C(t+l, l), exact.
mpq_class alpha(int k, int t);

// Product over j = s..#b of d (b_j = 1), 1 (b_j = 0, nonbipartite only) or
// n-d-1 resp. n/2-d (b_j = -1). 1-based s; s = #b + 1 gives the empty
// product.
mpz_class psi(int s, std::span<const int> b, int n, int d, bool bipartite);

// Closed-form eigenvalue for one index tuple (0-based indices into the
// sorted base spectrum). gp: sign vectors over {-1,0,1}^k with >= t ones;
// sgp: over {-1,1}^k.
double gp_eigenvalue(const GpEigenBasis& basis, std::span<const int> idx, int k, int t);
double sgp_eigenvalue(const GpEigenBasis& basis, std::span<const int> idx, int k, int t);

// Sum of psi over vectors with exactly t-1 ones in {-1,0,1}^{k-1}
// (nonbipartite) or {-1,1}^{k-1} (bipartite): the coefficient multiplying
// lambda_i in the exact second/third-eigenvalue formulas.
mpz_class second_eigenvalue_coeff(int n, int d, int k, int t, bool bipartite);

// lambda_i * second_eigenvalue_coeff, for a single non-top base index.
double gp_second_eigenvalue_exact(const GpEigenBasis& basis, int i, int k, int t);
double bgp_third_eigenvalue_exact(const GpEigenBasis& basis, int i, int k, int t);

struct LambdaResult {
    double value = 0.0;       // |Lambda| at the extremal base index
    int star_index = 0;       // 0-based index of the chosen base eigenvalue
    double base_lambda = 0.0; // max{lambda_2, |lambda_n|} (bipartite: |lambda_{n-1}|)
};

// Largest nontrivial product eigenvalue by the exact formulas; ties between
// lambda_2 and |lambda_n| break toward the positive one.
LambdaResult lambda_gp(const GpEigenBasis& basis, int k, int t);
LambdaResult lambda_bgp(const GpEigenBasis& basis, int k, int t);

struct LambdaBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool degree_condition_ok = false;  // d <= (n-1)/2 for gp, d <= n/4 for bgp
};

// Sandwich estimates; computed regardless of the degree condition, with the
// condition reported so callers can flag unverified bounds.
LambdaBounds lambda_bounds_gp(const GpEigenBasis& basis, int k, int t);
LambdaBounds lambda_bounds_bgp(const GpEigenBasis& basis, int k, int t);

// Full closed-form multiset over all n^k index tuples, sorted descending.
std::vector<double> gp_spectrum_formula(const GpEigenBasis& basis, int k, int t);
std::vector<double> sgp_spectrum_formula(const GpEigenBasis& basis, int k, int t);

// max |Lambda| over index tuples with at least one index outside {1, n}
// (the brute-force cross-check for lambda_bgp).
double sgp_lambda_outside_extremes(const GpEigenBasis& basis, int k, int t);

// ||A w - Lambda w|| / ||w|| for the tensor eigenvector of the given index
// tuple; the basis must carry eigenvectors and the product must be gp or
// sgp (the kinds with tensor eigenvectors over the full tuple space).
double eigenvector_residual(const GpEigenBasis& basis, std::span<const int> idx,
                            const ProductGraph& product);

}  // namespace tgp

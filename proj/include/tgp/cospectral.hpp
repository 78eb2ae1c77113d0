#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tgp/graph.hpp"
#include "tgp/product.hpp"

namespace tgp {

// Bipartite adjacency with an explicit (possibly unbalanced) left block
// X = [0, nx). Regularity is deliberately not required: the walk-count
// lemma is supposed to fail on irregular controls.
struct BipartiteView {
    int n = 0;
    int nx = 0;
    BitMatrix adj;

    static BipartiteView of(const BipartiteRegularGraph& g) { return {g.n, g.n / 2, g.adj}; }
};

// Closed alternating walks that follow the 0/1 pattern u: step i crosses an
// edge when u_i = 1 and a bipartite non-edge when u_i = 0. Counted as the
// trace of I_X (resp. I_Y) times the ordered product of A / A-bar factors,
// in exact integer arithmetic.
long long count_walks_trace(const BipartiteView& g, std::span<const int> u, Side start);

// The same count by exhaustive enumeration; the independent oracle for the
// trace route. Throws BudgetExceeded when the search tree outgrows budget.
long long count_walks_enumerate(const BipartiteView& g, std::span<const int> u, Side start,
                                long long budget = 200'000'000);

struct WalkLemmaReport {
    bool holds = true;
    bool methods_agree = true;  // trace vs enumeration, when enumeration ran
    int ell_max = 0;
    long long patterns_checked = 0;
    std::optional<std::vector<int>> violating_u;  // first pattern with |X-walks| != |Y-walks|
    long long violating_x = 0, violating_y = 0;
};

// Checks |walks from X| == |walks from Y| for every u in {0,1}^ell,
// ell <= ell_max. Enumeration cross-checking is optional (it is the slow
// half).
WalkLemmaReport verify_walk_lemma(const BipartiteView& g, int ell_max, bool with_enumeration = false,
                                  long long budget = 200'000'000);

using ConnectivityMultiset = std::map<std::vector<int>, long long>;

// Multiset of connectivity vectors over all circular alternating ordered
// ell-tuples on the template blocks of BGP_{k,t,tau}. Independent of tau —
// that is the certified statement. Odd ell yields the empty multiset.
ConnectivityMultiset connectivity_multiset(const BipartiteRegularGraph& g, int k, int t,
                                           const Template& tau, int ell,
                                           long long budget = 50'000'000);

// tr(A^ell) for ell = 1..count, exact.
std::vector<mpz_class> exact_traces(const BitMatrix& adj, int count);

struct TraceCertificate {
    enum class Method { exact_full, exact_prefix_plus_spectrum };
    Method method = Method::exact_full;
    int exact_ell = 0;          // traces compared exactly for ell = 1..exact_ell
    bool traces_equal = false;
    bool spectra_equal = true;  // float multiset comparison (hybrid method only)
    double spectra_distance = 0.0;
    bool cospectral = false;
};

// Equal traces of all matrix powers certify cospectrality. Powers up to the
// dimension suffice; when the dimension exceeds exact_cap the tail is
// covered by a float-spectrum multiset comparison at spectrum_tol.
TraceCertificate cospectral_certify(const BitMatrix& a1, const BitMatrix& a2, int exact_cap = 50,
                                    double spectrum_tol = 1e-6);

struct WitnessResult {
    bool found = false;  // sorted diag(A^4) differ => definitely not isomorphic
    std::vector<long long> diag1, diag2;
};

// Compares sorted closed-4-walk counts per vertex; inconclusive when equal.
WitnessResult nonisomorphism_witness(const BitMatrix& a1, const BitMatrix& a2);

struct CospectralFamily {
    std::vector<Template> templates;  // one per complement-pair class
    std::vector<ProductGraph> products;
    std::vector<std::vector<mpz_class>> traces;  // per product, ell = 1..exact_ell
    int exact_ell = 0;
    bool all_cospectral = false;
    bool used_spectrum_fallback = false;
    struct WitnessEntry {
        int first = 0, second = 0;
        bool comparable = false;  // templates with different X-counts
        bool found = false;
    };
    std::vector<WitnessEntry> witnesses;
};

// Builds one product per template class, certifies pairwise cospectrality
// and attaches non-isomorphism witnesses for class pairs with different
// X-counts.
CospectralFamily cospectral_family(const BipartiteRegularGraph& g, int k, int t,
                                   int exact_cap = 50, double spectrum_tol = 1e-6,
                                   std::size_t cap = 4096);

}  // namespace tgp

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tgp/product.hpp"
#include "tgp/rng.hpp"

namespace tgp {

// Vertex subset of a product, kept as a bitmask so edge counting runs on
// word intersections.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::size_t universe, const std::vector<std::size_t>& indices);

    std::size_t universe() const { return universe_; }
    std::size_t count() const { return count_; }
    const std::uint64_t* words() const { return words_.data(); }
    std::size_t word_count() const { return words_.size(); }
    bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    std::vector<std::size_t> indices() const;

private:
    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

// Uniform subset of the given size drawn from [lo, hi).
IndexSet random_subset(std::size_t universe, std::size_t lo, std::size_t hi, std::size_t size,
                       Rng& rng);

// e(S, T): ordered pairs (u, v) with u in S, v in T and (u, v) an edge.
// An edge inside the intersection contributes twice.
long long edge_count(const BitMatrix& adj, const IndexSet& S, const IndexSet& T);

// mu_{S,T} = D |S| |T| / N, or 2 D |S| |T| / N in bipartite mode.
mpq_class expected_edges(const mpz_class& D, std::size_t N, std::size_t size_s, std::size_t size_t_,
                         bool bipartite);

struct DiscrepancyReport {
    std::size_t size_s = 0;
    std::size_t size_t_ = 0;
    long long e = 0;
    mpq_class mu;
    double bound = 0.0;
    double ratio = 0.0;  // |e - mu| / bound
    bool pass = true;
};

// bound = lambda_value * sqrt(|S| |T|); lambda_value is either the
// product's oracle lambda or the formula-side estimate. Comparison
// allows 1e-9 relative slack so exact-equality cases don't flap.
DiscrepancyReport eml_check(const ProductGraph& p, const IndexSet& S, const IndexSet& T,
                            double lambda_value);

struct ScanResult {
    int samples = 0;
    bool all_pass = true;
    double max_ratio = 0.0;              // of |e - mu| / (lambda sqrt(|S||T|))
    DiscrepancyReport tightest;          // the pair achieving max_ratio
    std::vector<DiscrepancyReport> rows; // kept only when requested
};

// Seeded scan over random and structured (S, T) pairs; bipartite products
// draw S from the first block and T from the second. Set keep_rows for CSV
// export.
ScanResult jumbledness_scan(const ProductGraph& p, double lambda_value, int samples,
                            std::uint64_t seed, bool keep_rows = false);

struct RelativeErrorReport {
    bool premise_ok = false;   // base lambda <= 2 sqrt(d)
    double xi = 0.0;
    double epsilon_observed = 0.0;
    double epsilon_bound = 0.0;  // 2 / (xi sqrt(d))
    int samples = 0;
    bool pass = false;
};

// The large-set application check on a gp product: for |S| = |T| = xi N,
// max |e - mu| / mu must stay below 2 / (xi sqrt(d)) when the base graph
// has lambda <= 2 sqrt(d).
RelativeErrorReport relative_error_report(const ProductGraph& p, double xi, int base_d,
                                          double base_lambda, int samples, std::uint64_t seed);

std::string to_csv(const std::vector<DiscrepancyReport>& rows);

}  // namespace tgp

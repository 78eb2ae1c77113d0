#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgp/eigen.hpp"
#include "tgp/product.hpp"

namespace tgp {

using json = nlohmann::ordered_json;

// Acceptance tolerances, pinned once.
namespace tol {
inline constexpr double spectrum = 1e-6;        // formula vs oracle, per sorted entry
inline constexpr double sandwich_slack = 1e-9;  // absolute slack on the bound inequalities
inline constexpr double collapse = 1e-8;        // t = k collapse with irrational base lambda
inline constexpr double eigenvector = 1e-8;     // tensor eigenvector residual
inline constexpr double multiset_default = 1e-8;
}  // namespace tol

struct GridSpec {
    std::string name = "standard";
    std::vector<int> ns{4, 6, 8, 10};
    int k_max = 3;
    int seed_reps = 3;
    std::size_t max_product = 1500;

    static GridSpec standard();
    static GridSpec tiny();
    static GridSpec by_name(const std::string& name);
};

struct PointSpec {
    ProductKind kind = ProductKind::gp;
    int n = 0, d = 0, k = 1, t = 1;
};

struct RunConfig {
    std::uint64_t seed = 1;
    GridSpec grid = GridSpec::standard();
    std::optional<PointSpec> point;  // set => single-point mode where it applies
    int mixing_samples = 1000;
    int application_samples = 200;
    int walk_bases = 10;
    int walk_ell_max = 6;
    int cospectral_seeds = 20;
    int trace_exact_cap = 50;
    std::size_t cap = 4096;  // dimension cap for products and eigensolves
};

struct GridPoint {
    int n = 0, d = 0, k = 1, t = 1;
    int seed_rep = 0;
    std::uint64_t seed = 0;  // derived base-graph seed
};

std::uint64_t point_seed(std::uint64_t master, int n, int d, int k, int t, int seed_rep);
std::vector<GridPoint> gp_grid(const RunConfig& cfg);            // d <= (n-1)/2
std::vector<GridPoint> bipartite_spectrum_grid(const RunConfig& cfg);  // d <= n/2
std::vector<GridPoint> bipartite_bounds_grid(const RunConfig& cfg);    // d <= n/4

struct CheckResult {
    std::string name;
    std::string source;  // the mathematical statement being exercised
    bool pass = false;
    json details;
};

// Product oracle spectra are the expensive part of a verify run; checks
// share them through this memo.
class SpectrumCache {
public:
    const Spectrum* find(const std::string& key) const;
    void store(const std::string& key, Spectrum s);
    static std::string key(ProductKind kind, const GridPoint& p);

private:
    std::map<std::string, Spectrum> cache_;
};

CheckResult check_degree_formulas(const RunConfig& cfg);
CheckResult check_gp_spectrum(const RunConfig& cfg, SpectrumCache& cache);
CheckResult check_sgp_spectrum(const RunConfig& cfg, SpectrumCache& cache);
CheckResult check_bgp_third_eigenvalue(const RunConfig& cfg, SpectrumCache& cache);
CheckResult check_tensor_collapse(const RunConfig& cfg);
CheckResult check_sandwich_bounds(const RunConfig& cfg);
CheckResult check_tensor_identity(const RunConfig& cfg);
CheckResult check_eigenvectors(const RunConfig& cfg);
CheckResult check_walk_lemma(const RunConfig& cfg);
CheckResult check_connectivity_multisets(const RunConfig& cfg);
CheckResult check_cospectral_family(const RunConfig& cfg);
CheckResult check_mixing(const RunConfig& cfg, SpectrumCache& cache);
CheckResult check_application(const RunConfig& cfg);

json config_json(const RunConfig& cfg);
json report_for(const std::vector<CheckResult>& checks, const RunConfig& cfg,
                const std::string& command);
// The full suite in fixed order; the report is byte-stable for a fixed
// config and seed.
json verify_all(const RunConfig& cfg);

json spectrum_json(int n, int d, const Spectrum& s);

}  // namespace tgp

#include "tgp/verify.hpp"

#include <algorithm>
#include <cmath>

#include "tgp/cospectral.hpp"
#include "tgp/errors.hpp"
#include "tgp/mixing.hpp"
#include "tgp/parallel.hpp"
#include "tgp/spectral.hpp"
#include "tgp/version.hpp"

namespace tgp {

GridSpec GridSpec::standard() { return GridSpec{}; }

GridSpec GridSpec::tiny() {
    GridSpec g;
    g.name = "tiny";
    g.ns = {4, 6};
    g.k_max = 2;
    g.seed_reps = 1;
    g.max_product = 300;
    return g;
}

GridSpec GridSpec::by_name(const std::string& name) {
    if (name == "standard") return standard();
    if (name == "tiny") return tiny();
    fail(ErrorCode::InvalidArgument, "unknown grid '" + name + "' (expected standard or tiny)");
}

std::uint64_t point_seed(std::uint64_t master, int n, int d, int k, int t, int seed_rep) {
    std::uint64_t h = master * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
    };
    mix(static_cast<std::uint64_t>(n));
    mix(static_cast<std::uint64_t>(d));
    mix(static_cast<std::uint64_t>(k));
    mix(static_cast<std::uint64_t>(t));
    mix(static_cast<std::uint64_t>(seed_rep));
    return h;
}

namespace {

std::size_t int_pow(std::size_t base, int exp) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

template <class DegreeOk>
std::vector<GridPoint> make_grid(const RunConfig& cfg, bool bipartite, DegreeOk&& degree_ok) {
    std::vector<GridPoint> out;
    for (int n : cfg.grid.ns) {
        for (int d = 1; d < n; ++d) {
            if (!degree_ok(n, d)) continue;
            if (!bipartite && (n * d) % 2 != 0) continue;
            if (bipartite && (n % 2 != 0 || d > n / 2)) continue;
            for (int k = 1; k <= cfg.grid.k_max; ++k) {
                if (int_pow(static_cast<std::size_t>(n), k) > cfg.grid.max_product) continue;
                for (int t = 1; t <= k; ++t)
                    for (int s = 0; s < cfg.grid.seed_reps; ++s)
                        out.push_back(GridPoint{n, d, k, t, s, point_seed(cfg.seed, n, d, k, t, s)});
            }
        }
    }
    return out;
}

std::vector<GridPoint> single_point(const RunConfig& cfg) {
    return {GridPoint{cfg.point->n, cfg.point->d, cfg.point->k, cfg.point->t, 0, cfg.seed}};
}

json point_json(const GridPoint& p) {
    return json{{"n", p.n}, {"d", p.d}, {"k", p.k}, {"t", p.t}, {"seed_rep", p.seed_rep}};
}

}  // namespace

std::vector<GridPoint> gp_grid(const RunConfig& cfg) {
    if (cfg.point && cfg.point->kind == ProductKind::gp) return single_point(cfg);
    return make_grid(cfg, false, [](int n, int d) { return 2 * d <= n - 1; });
}

std::vector<GridPoint> bipartite_spectrum_grid(const RunConfig& cfg) {
    if (cfg.point && cfg.point->kind != ProductKind::gp) return single_point(cfg);
    return make_grid(cfg, true, [](int n, int d) { return 2 * d <= n; });
}

std::vector<GridPoint> bipartite_bounds_grid(const RunConfig& cfg) {
    if (cfg.point && cfg.point->kind != ProductKind::gp) return single_point(cfg);
    return make_grid(cfg, true, [](int n, int d) { return 4 * d <= n; });
}

const Spectrum* SpectrumCache::find(const std::string& key) const {
    auto it = cache_.find(key);
    return it == cache_.end() ? nullptr : &it->second;
}

void SpectrumCache::store(const std::string& key, Spectrum s) { cache_[key] = std::move(s); }

std::string SpectrumCache::key(ProductKind kind, const GridPoint& p) {
    return std::string(to_string(kind)) + ":" + std::to_string(p.n) + ":" + std::to_string(p.d) +
           ":" + std::to_string(p.k) + ":" + std::to_string(p.t) + ":" + std::to_string(p.seed);
}

namespace {

struct PointOutcome {
    bool skipped = false;
    bool pass = true;
    double distance = 0.0;
    Spectrum spectrum;  // product oracle spectrum, for the cache
};

json grid_check_details(const std::vector<GridPoint>& points,
                        const std::vector<PointOutcome>& outcomes) {
    json details;
    int tested = 0, skipped = 0;
    double worst = 0.0;
    int worst_idx = -1;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].skipped) {
            ++skipped;
            continue;
        }
        ++tested;
        if (outcomes[i].distance >= worst) {
            worst = outcomes[i].distance;
            worst_idx = static_cast<int>(i);
        }
    }
    details["points_tested"] = tested;
    details["points_skipped"] = skipped;
    details["max_distance"] = worst;
    if (worst_idx >= 0) details["worst_point"] = point_json(points[static_cast<std::size_t>(worst_idx)]);
    return details;
}

RegularGraph complete_graph(int n) {
    BitMatrix adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return validate_regular(adj);
}

RegularGraph petersen_graph() {
    BitMatrix adj(10);
    for (int i = 0; i < 5; ++i) {
        adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % 5));
        adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(5 + i));
        adj.set_edge(static_cast<std::size_t>(5 + i), static_cast<std::size_t>(5 + (i + 2) % 5));
    }
    return validate_regular(adj);
}

}  // namespace

CheckResult check_degree_formulas(const RunConfig& cfg) {
    CheckResult result{"degree-formulas", "closed-form product degrees vs audited adjacency", true, {}};
    const auto points = gp_grid(cfg);
    const auto bip_points = bipartite_spectrum_grid(cfg);
    std::vector<char> ok(points.size() + 3 * bip_points.size(), 1);

    parallel_for(points.size(), [&](std::size_t i) {
        const auto& p = points[i];
        const RegularGraph base = random_regular(p.n, p.d, p.seed);
        ok[i] = audit_degree(gp(base, p.k, p.t, cfg.cap)).matches_formula;
    });
    parallel_for(bip_points.size(), [&](std::size_t i) {
        const auto& p = bip_points[i];
        const BipartiteRegularGraph base = random_bipartite_regular(p.n, p.d, p.seed);
        const std::size_t at = points.size() + 3 * i;
        ok[at] = audit_degree(bgp(base, p.k, p.t, cfg.cap)).matches_formula;
        ok[at + 1] = audit_degree(sgp(base, p.k, p.t, cfg.cap)).matches_formula;
        Template tau = Template::representatives(p.k).back();  // alternating-ish class
        ok[at + 2] = audit_degree(bgp_template(base, p.k, p.t, tau, cfg.cap)).matches_formula;
    });

    int failures = 0;
    for (char c : ok) failures += (c == 0);
    result.pass = failures == 0;
    result.details["products_audited"] = ok.size();
    result.details["failures"] = failures;
    return result;
}

CheckResult check_gp_spectrum(const RunConfig& cfg, SpectrumCache& cache) {
    CheckResult result{"gp-spectrum-formula",
                       "closed-form threshold-product spectrum vs dense eigensolver", true, {}};
    const auto points = gp_grid(cfg);
    std::vector<PointOutcome> outcomes(points.size());

    parallel_for(points.size(), [&](std::size_t i) {
        const auto& p = points[i];
        const RegularGraph base = random_regular(p.n, p.d, p.seed);
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const std::vector<double> formula = gp_spectrum_formula(basis, p.k, p.t);
        const ProductGraph product = gp(base, p.k, p.t, cfg.cap);
        EigenOptions opts;
        opts.dim_cap = static_cast<int>(cfg.cap);
        Spectrum oracle = eigenvalues(product.adj, opts);
        outcomes[i].distance = multiset_distance(formula, oracle.values);
        outcomes[i].pass = outcomes[i].distance <= tol::spectrum;
        outcomes[i].spectrum = std::move(oracle);
    });

    for (std::size_t i = 0; i < points.size(); ++i) {
        cache.store(SpectrumCache::key(ProductKind::gp, points[i]), std::move(outcomes[i].spectrum));
        result.pass = result.pass && outcomes[i].pass;
    }
    result.details = grid_check_details(points, outcomes);
    result.details["tolerance"] = tol::spectrum;
    return result;
}

CheckResult check_sgp_spectrum(const RunConfig& cfg, SpectrumCache& cache) {
    CheckResult result{"sgp-spectrum-formula",
                       "closed-form shuffled-product spectrum vs dense eigensolver", true, {}};
    const auto points = bipartite_spectrum_grid(cfg);
    std::vector<PointOutcome> outcomes(points.size());

    parallel_for(points.size(), [&](std::size_t i) {
        const auto& p = points[i];
        const BipartiteRegularGraph base = random_bipartite_regular(p.n, p.d, p.seed);
        if (!is_connected(base.adj)) {  // spectrum claims hold for connected bases
            outcomes[i].skipped = true;
            return;
        }
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const std::vector<double> formula = sgp_spectrum_formula(basis, p.k, p.t);
        const ProductGraph product = sgp(base, p.k, p.t, cfg.cap);
        EigenOptions opts;
        opts.dim_cap = static_cast<int>(cfg.cap);
        Spectrum oracle = eigenvalues(product.adj, opts);
        outcomes[i].distance = multiset_distance(formula, oracle.values);
        outcomes[i].pass = outcomes[i].distance <= tol::spectrum;
        outcomes[i].spectrum = std::move(oracle);
    });

    int tested = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (outcomes[i].skipped) continue;
        ++tested;
        cache.store(SpectrumCache::key(ProductKind::sgp, points[i]), std::move(outcomes[i].spectrum));
        result.pass = result.pass && outcomes[i].pass;
    }
    result.pass = result.pass && tested > 0;
    result.details = grid_check_details(points, outcomes);
    result.details["tolerance"] = tol::spectrum;
    return result;
}

CheckResult check_bgp_third_eigenvalue(const RunConfig& cfg, SpectrumCache& cache) {
    CheckResult result{"bgp-third-eigenvalue",
                       "exact third-eigenvalue formula vs oracle and full index sweep", true, {}};
    const auto points = bipartite_spectrum_grid(cfg);
    std::vector<PointOutcome> outcomes(points.size());

    parallel_for(points.size(), [&](std::size_t i) {
        const auto& p = points[i];
        const BipartiteRegularGraph base = random_bipartite_regular(p.n, p.d, p.seed);
        if (!is_connected(base.adj)) {
            outcomes[i].skipped = true;
            return;
        }
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const double formula = lambda_bgp(basis, p.k, p.t).value;
        const double sweep = sgp_lambda_outside_extremes(basis, p.k, p.t);

        const ProductGraph product = bgp(base, p.k, p.t, cfg.cap);
        EigenOptions opts;
        opts.dim_cap = static_cast<int>(cfg.cap);
        Spectrum oracle = eigenvalues(product.adj, opts);
        std::vector<double> abs_sorted(oracle.values.size());
        for (std::size_t j = 0; j < oracle.values.size(); ++j)
            abs_sorted[j] = std::fabs(oracle.values[j]);
        std::sort(abs_sorted.begin(), abs_sorted.end(), std::greater<double>());
        const double oracle_third = abs_sorted.size() >= 3 ? abs_sorted[2] : 0.0;

        outcomes[i].distance =
            std::max(std::fabs(oracle_third - formula), std::fabs(sweep - formula));
        outcomes[i].pass = outcomes[i].distance <= tol::spectrum;
        outcomes[i].spectrum = std::move(oracle);
    });

    int tested = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (outcomes[i].skipped) continue;
        ++tested;
        cache.store(SpectrumCache::key(ProductKind::bgp, points[i]), std::move(outcomes[i].spectrum));
        result.pass = result.pass && outcomes[i].pass;
    }
    result.pass = result.pass && tested > 0;
    result.details = grid_check_details(points, outcomes);
    result.details["tolerance"] = tol::spectrum;
    return result;
}

CheckResult check_tensor_collapse(const RunConfig& cfg) {
    CheckResult result{"tensor-collapse",
                       "t = k: product lambda equals base lambda times d^(k-1)", true, {}};
    int exact_cases = 0, float_cases = 0, failures = 0;

    // coefficient identity in integer arithmetic, across the whole grid range
    bool coeff_ok = true;
    for (int n : cfg.grid.ns)
        for (int d = 1; d < n; ++d)
            for (int k = 1; k <= cfg.grid.k_max; ++k) {
                mpz_class dk;
                mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d),
                              static_cast<unsigned long>(k - 1));
                if (second_eigenvalue_coeff(n, d, k, k, false) != dk) coeff_ok = false;
                if (n % 2 == 0 && d <= n / 2 &&
                    second_eigenvalue_coeff(n, d, k, k, true) != dk)
                    coeff_ok = false;
            }

    // named bases with integer spectra: the collapse must be exact
    std::vector<RegularGraph> named;
    named.push_back(complete_graph(4));
    named.push_back(complete_graph(6));
    named.push_back(petersen_graph());
    for (const auto& base : named) {
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const double lam = lambda_of(eigenvalues(base.adj), false);
        for (int k = 2; k <= cfg.grid.k_max; ++k) {
            const double expected = std::round(lam) * std::pow(static_cast<double>(base.d), k - 1);
            ++exact_cases;
            if (lambda_gp(basis, k, k).value != expected) ++failures;
        }
    }

    // grid bases, generally irrational lambda
    for (const auto& p : gp_grid(cfg)) {
        if (p.t != p.k || p.k < 2) continue;
        const RegularGraph base = random_regular(p.n, p.d, p.seed);
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const double lam = std::fabs(basis.lambdas[static_cast<std::size_t>(
            lambda_gp(basis, p.k, p.t).star_index)]);
        const double expected = lam * std::pow(static_cast<double>(p.d), p.k - 1);
        ++float_cases;
        if (std::fabs(lambda_gp(basis, p.k, p.t).value - expected) > tol::collapse) ++failures;
    }

    result.pass = coeff_ok && failures == 0;
    result.details["coefficient_identity_exact"] = coeff_ok;
    result.details["exact_cases"] = exact_cases;
    result.details["float_cases"] = float_cases;
    result.details["failures"] = failures;
    return result;
}

CheckResult check_sandwich_bounds(const RunConfig& cfg) {
    CheckResult result{"sandwich-bounds", "lambda sandwich estimates under the degree conditions",
                       true, {}};
    int tested = 0, skipped = 0, failures = 0, collapse_failures = 0;

    for (const auto& p : gp_grid(cfg)) {
        const RegularGraph base = random_regular(p.n, p.d, p.seed);
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const LambdaBounds b = lambda_bounds_gp(basis, p.k, p.t);
        if (!b.degree_condition_ok) {
            ++skipped;
            continue;
        }
        ++tested;
        const double value = lambda_gp(basis, p.k, p.t).value;
        if (!(b.lower - tol::sandwich_slack <= value && value <= b.upper + tol::sandwich_slack))
            ++failures;
        if (p.t == p.k && b.lower != b.upper) ++collapse_failures;
    }
    for (const auto& p : bipartite_bounds_grid(cfg)) {
        const BipartiteRegularGraph base = random_bipartite_regular(p.n, p.d, p.seed);
        if (!is_connected(base.adj)) {
            ++skipped;
            continue;
        }
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const LambdaBounds b = lambda_bounds_bgp(basis, p.k, p.t);
        if (!b.degree_condition_ok) {
            ++skipped;
            continue;
        }
        ++tested;
        const double value = lambda_bgp(basis, p.k, p.t).value;
        if (!(b.lower - tol::sandwich_slack <= value && value <= b.upper + tol::sandwich_slack))
            ++failures;
    }

    result.pass = failures == 0 && collapse_failures == 0 && tested > 0;
    result.details["points_tested"] = tested;
    result.details["points_skipped"] = skipped;
    result.details["failures"] = failures;
    result.details["collapse_failures"] = collapse_failures;
    result.details["slack"] = tol::sandwich_slack;
    return result;
}

CheckResult check_tensor_identity(const RunConfig& cfg) {
    CheckResult result{"tensor-identity",
                       "sign-vector Kronecker sum equals the constructed shuffled adjacency", true, {}};
    const auto points = bipartite_spectrum_grid(cfg);
    std::vector<long long> mismatches(points.size(), 0);

    parallel_for(points.size(), [&](std::size_t i) {
        const auto& p = points[i];
        const BipartiteRegularGraph base = random_bipartite_regular(p.n, p.d, p.seed);
        const ProductGraph product = sgp(base, p.k, p.t, cfg.cap);
        const auto tensor = sgp_adjacency_tensor(base, p.k, p.t, cfg.cap);
        const std::size_t n = product.size();
        long long bad = 0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint8_t entry = tensor[r * n + c];
                if (entry > 1 || (entry == 1) != product.adj.get(r, c)) ++bad;
            }
        mismatches[i] = bad;
    });

    long long total = 0;
    for (long long m : mismatches) total += m;
    result.pass = total == 0;
    result.details["points_tested"] = points.size();
    result.details["entry_mismatches"] = total;
    return result;
}

CheckResult check_eigenvectors(const RunConfig& cfg) {
    CheckResult result{"tensor-eigenvectors",
                       "tensor eigenvector residuals against constructed products", true, {}};
    double worst = 0.0;
    int cases = 0;

    auto sweep_residuals = [&](const GpEigenBasis& basis, const ProductGraph& product) {
        std::vector<int> idx(static_cast<std::size_t>(product.k), 0);
        for (;;) {
            worst = std::max(worst, eigenvector_residual(basis, idx, product));
            ++cases;
            int pos = product.k - 1;
            while (pos >= 0) {
                if (++idx[static_cast<std::size_t>(pos)] < basis.n) break;
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    };

    {
        const RegularGraph base = random_regular(5, 2, point_seed(cfg.seed, 5, 2, 2, 1, 0));
        const GpEigenBasis basis = GpEigenBasis::from_graph(base, /*with_vectors=*/true);
        sweep_residuals(basis, gp(base, 2, 1, cfg.cap));
        sweep_residuals(basis, gp(base, 2, 2, cfg.cap));
    }
    {
        // 6-cycle: connected bipartite with a degenerate eigenvalue pair
        BitMatrix adj(6);
        for (int i = 0; i < 6; ++i)
            adj.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % 6));
        const BipartiteRegularGraph base = validate_bipartite(adj);
        const GpEigenBasis basis = GpEigenBasis::from_graph(base, /*with_vectors=*/true);
        sweep_residuals(basis, sgp(base, 2, 1, cfg.cap));
        sweep_residuals(basis, sgp(base, 2, 2, cfg.cap));
    }

    result.pass = worst <= tol::eigenvector;
    result.details["cases"] = cases;
    result.details["max_residual"] = worst;
    result.details["tolerance"] = tol::eigenvector;
    return result;
}

CheckResult check_walk_lemma(const RunConfig& cfg) {
    CheckResult result{"walk-lemma",
                       "alternating walk counts from the two sides agree on regular bases", true, {}};
    // (n, d) pool with d <= n/4, cycled to produce the seeded bases
    const std::vector<std::pair<int, int>> shapes{{8, 2},  {10, 2}, {12, 3}, {12, 2}, {8, 1},
                                                  {10, 1}, {12, 1}, {8, 2},  {12, 3}, {10, 2}};
    const int bases = std::min<int>(cfg.walk_bases, static_cast<int>(shapes.size()));
    std::vector<WalkLemmaReport> reports(static_cast<std::size_t>(bases));

    parallel_for(static_cast<std::size_t>(bases), [&](std::size_t i) {
        const auto [n, d] = shapes[i];
        const BipartiteRegularGraph g =
            random_bipartite_regular(n, d, point_seed(cfg.seed, n, d, 1, 1, static_cast<int>(i)));
        reports[i] = verify_walk_lemma(BipartiteView::of(g), cfg.walk_ell_max,
                                       /*with_enumeration=*/true);
    });

    bool all_hold = true, methods_agree = true;
    long long patterns = 0;
    for (const auto& r : reports) {
        all_hold = all_hold && r.holds;
        methods_agree = methods_agree && r.methods_agree;
        patterns += r.patterns_checked;
    }

    // negative control: the star K_{1,3} on balanced 3+3 parts is not
    // regular, and the count identity must break for some pattern
    BipartiteView star;
    star.n = 6;
    star.nx = 3;
    star.adj = BitMatrix(6);
    star.adj.set_edge(0, 3);
    star.adj.set_edge(0, 4);
    star.adj.set_edge(0, 5);
    const WalkLemmaReport control = verify_walk_lemma(star, 4, /*with_enumeration=*/true);

    result.pass = all_hold && methods_agree && !control.holds && control.methods_agree;
    result.details["bases"] = bases;
    result.details["ell_max"] = cfg.walk_ell_max;
    result.details["patterns_checked"] = patterns;
    result.details["control_violation_found"] = !control.holds;
    if (control.violating_u) {
        json u = json::array();
        for (int b : *control.violating_u) u.push_back(b);
        result.details["control_violating_u"] = u;
        result.details["control_counts"] = json{{"x", control.violating_x}, {"y", control.violating_y}};
    }
    return result;
}

CheckResult check_connectivity_multisets(const RunConfig& cfg) {
    CheckResult result{"connectivity-multisets",
                       "connectivity-vector multisets are template independent", true, {}};
    int comparisons = 0, failures = 0;
    const std::vector<std::pair<int, int>> shapes{{6, 1}, {6, 2}, {8, 2}};
    for (std::size_t si = 0; si < shapes.size(); ++si) {
        const auto [n, d] = shapes[si];
        const BipartiteRegularGraph g =
            random_bipartite_regular(n, d, point_seed(cfg.seed, n, d, 2, 1, static_cast<int>(si)));
        for (int k = 1; k <= 2; ++k) {
            for (int ell : {2, 4}) {
                const auto reference =
                    connectivity_multiset(g, k, 1, Template::all_x(k), ell);
                // every template, not just class representatives
                for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
                    Template tau = Template::all_x(k);
                    for (int j = 0; j < k; ++j)
                        if ((bits >> j) & 1) tau.symbols[static_cast<std::size_t>(j)] = Side::Y;
                    ++comparisons;
                    if (connectivity_multiset(g, k, 1, tau, ell) != reference) ++failures;
                }
            }
        }
    }
    result.pass = failures == 0;
    result.details["comparisons"] = comparisons;
    result.details["failures"] = failures;
    return result;
}

CheckResult check_cospectral_family(const RunConfig& cfg) {
    CheckResult result{"cospectral-family",
                       "template products are cospectral; sorted diag(A^4) separates classes", true, {}};
    // the replicated experiment configuration, scaled down on the tiny grid
    int n = 12, d = 3, k = 3, t = 1;
    int seeds = cfg.cospectral_seeds;
    if (cfg.grid.name == "tiny") {
        n = 8;
        d = 2;
        k = 2;
        t = 1;
        seeds = std::min(seeds, 5);
    }
    if (cfg.point) {
        n = cfg.point->n;
        d = cfg.point->d;
        k = cfg.point->k;
        t = cfg.point->t;
    }

    const BipartiteRegularGraph base =
        random_bipartite_regular(n, d, point_seed(cfg.seed, n, d, k, t, 0));
    const CospectralFamily family =
        cospectral_family(base, k, t, cfg.trace_exact_cap, tol::spectrum, cfg.cap);

    // witness sweep: template X..X against the class with one flipped symbol
    Template tau_a = Template::all_x(k);
    Template tau_b = tau_a;
    if (k >= 2) tau_b.symbols[static_cast<std::size_t>(k / 2)] = Side::Y;
    int hits = 0;
    std::vector<char> hit(static_cast<std::size_t>(seeds), 0);
    parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t s) {
        const BipartiteRegularGraph g = random_bipartite_regular(
            n, d, point_seed(cfg.seed, n, d, k, t, static_cast<int>(s) + 1));
        const ProductGraph pa = bgp_template(g, k, t, tau_a, cfg.cap);
        const ProductGraph pb = bgp_template(g, k, t, tau_b, cfg.cap);
        hit[s] = nonisomorphism_witness(pa.adj, pb.adj).found ? 1 : 0;
    });
    for (char h : hit) hits += h;

    // templates with distinct X-counts are reliably non-isomorphic only from
    // k = 3 up; the k = 2 classes are too small for diag(A^4) to separate
    const bool witness_needed = k >= 3;
    result.pass = family.all_cospectral && (!witness_needed || hits >= 1);
    result.details["config"] = json{{"n", n}, {"d", d}, {"k", k}, {"t", t}};
    result.details["template_classes"] = family.templates.size();
    result.details["exact_trace_length"] = family.exact_ell;
    result.details["spectrum_fallback"] = family.used_spectrum_fallback;
    result.details["all_cospectral"] = family.all_cospectral;
    result.details["witness_seeds"] = seeds;
    result.details["witness_hits"] = hits;
    return result;
}

CheckResult check_mixing(const RunConfig& cfg, SpectrumCache& cache) {
    CheckResult result{"eml-mixing", "edge discrepancy bounds from the mixing inequalities", true, {}};
    struct MixOutcome {
        bool skipped = false;
        bool pass = true;
        double formula_ratio = 0.0;
        double oracle_ratio = 0.0;
    };

    const auto run_scan = [&cfg](const ProductGraph& product, double formula_value,
                                 double oracle_value, std::uint64_t seed, MixOutcome& out) {
        const ScanResult a = jumbledness_scan(product, formula_value, cfg.mixing_samples, seed);
        const ScanResult b = jumbledness_scan(product, oracle_value, cfg.mixing_samples, seed ^ 0x5a5aULL);
        out.pass = a.all_pass && b.all_pass;
        out.formula_ratio = a.max_ratio;
        out.oracle_ratio = b.max_ratio;
    };

    const auto gp_points = gp_grid(cfg);
    std::vector<MixOutcome> gp_out(gp_points.size());
    parallel_for(gp_points.size(), [&](std::size_t i) {
        const auto& p = gp_points[i];
        const RegularGraph base = random_regular(p.n, p.d, p.seed);
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const ProductGraph product = gp(base, p.k, p.t, cfg.cap);
        const double formula_bound = lambda_bounds_gp(basis, p.k, p.t).upper;
        double oracle;
        if (const Spectrum* s = cache.find(SpectrumCache::key(ProductKind::gp, p))) {
            oracle = lambda_of(*s, false);
        } else {
            EigenOptions opts;
            opts.dim_cap = static_cast<int>(cfg.cap);
            oracle = lambda_of(eigenvalues(product.adj, opts), false);
        }
        run_scan(product, formula_bound, oracle, p.seed ^ 0x11aaULL, gp_out[i]);
    });

    const auto bgp_points = bipartite_bounds_grid(cfg);
    std::vector<MixOutcome> bgp_out(bgp_points.size());
    parallel_for(bgp_points.size(), [&](std::size_t i) {
        const auto& p = bgp_points[i];
        const BipartiteRegularGraph base = random_bipartite_regular(p.n, p.d, p.seed);
        if (!is_connected(base.adj)) {
            bgp_out[i].skipped = true;
            return;
        }
        const GpEigenBasis basis = GpEigenBasis::from_graph(base);
        const ProductGraph product = bgp(base, p.k, p.t, cfg.cap);
        const double formula_bound = lambda_bounds_bgp(basis, p.k, p.t).upper;
        double oracle;
        if (const Spectrum* s = cache.find(SpectrumCache::key(ProductKind::bgp, p))) {
            oracle = lambda_of(*s, true);
        } else {
            EigenOptions opts;
            opts.dim_cap = static_cast<int>(cfg.cap);
            oracle = lambda_of(eigenvalues(product.adj, opts), true);
        }
        run_scan(product, formula_bound, oracle, p.seed ^ 0x22bbULL, bgp_out[i]);
    });

    int tested = 0, skipped = 0, failures = 0;
    double max_formula = 0.0, max_oracle = 0.0;
    auto fold = [&](const std::vector<MixOutcome>& v) {
        for (const auto& o : v) {
            if (o.skipped) {
                ++skipped;
                continue;
            }
            ++tested;
            if (!o.pass) ++failures;
            max_formula = std::max(max_formula, o.formula_ratio);
            max_oracle = std::max(max_oracle, o.oracle_ratio);
        }
    };
    fold(gp_out);
    fold(bgp_out);

    result.pass = failures == 0 && tested > 0;
    result.details["points_tested"] = tested;
    result.details["points_skipped"] = skipped;
    result.details["samples_per_point"] = cfg.mixing_samples;
    result.details["failures"] = failures;
    result.details["max_ratio_formula_bound"] = max_formula;
    result.details["max_ratio_oracle_bound"] = max_oracle;
    return result;
}

CheckResult check_application(const RunConfig& cfg) {
    CheckResult result{"application-relative-error",
                       "large equal-size sets have near-expected edge counts on expander bases", true,
                       {}};
    int tested = 0, premise_skipped = 0, failures = 0;
    double worst_margin = 0.0;  // epsilon_observed / epsilon_bound

    for (const auto& p : gp_grid(cfg)) {
        if (p.k != 2 || p.d < 2 || p.seed_rep != 0) continue;
        const RegularGraph base = random_regular(p.n, p.d, p.seed);
        const double lam = lambda_of(eigenvalues(base.adj), false);
        const double xi =
            std::min(1.0, std::max(0.4, std::log(static_cast<double>(p.d)) /
                                            std::sqrt(static_cast<double>(p.d))));
        const ProductGraph product = gp(base, p.k, p.t, cfg.cap);
        const RelativeErrorReport rep = relative_error_report(
            product, xi, p.d, lam, cfg.application_samples, p.seed ^ 0x33ccULL);
        if (!rep.premise_ok) {
            ++premise_skipped;
            continue;
        }
        ++tested;
        if (!rep.pass) ++failures;
        if (rep.epsilon_bound > 0)
            worst_margin = std::max(worst_margin, rep.epsilon_observed / rep.epsilon_bound);
    }

    result.pass = failures == 0 && tested > 0;
    result.details["points_tested"] = tested;
    result.details["premise_skipped"] = premise_skipped;
    result.details["failures"] = failures;
    result.details["worst_margin"] = worst_margin;
    return result;
}

json config_json(const RunConfig& cfg) {
    json grid{{"name", cfg.grid.name},
              {"ns", cfg.grid.ns},
              {"k_max", cfg.grid.k_max},
              {"seed_reps", cfg.grid.seed_reps},
              {"max_product", cfg.grid.max_product}};
    json out{{"seed", cfg.seed},
             {"grid", grid},
             {"mixing_samples", cfg.mixing_samples},
             {"application_samples", cfg.application_samples},
             {"walk_bases", cfg.walk_bases},
             {"walk_ell_max", cfg.walk_ell_max},
             {"cospectral_seeds", cfg.cospectral_seeds},
             {"trace_exact_cap", cfg.trace_exact_cap},
             {"dimension_cap", cfg.cap},
             {"tolerances",
              json{{"spectrum", tol::spectrum},
                   {"sandwich_slack", tol::sandwich_slack},
                   {"collapse", tol::collapse},
                   {"eigenvector", tol::eigenvector}}}};
    if (cfg.point) {
        out["point"] = json{{"kind", to_string(cfg.point->kind)},
                            {"n", cfg.point->n},
                            {"d", cfg.point->d},
                            {"k", cfg.point->k},
                            {"t", cfg.point->t}};
    }
    return out;
}

json report_for(const std::vector<CheckResult>& checks, const RunConfig& cfg,
                const std::string& command) {
    json out;
    out["tool"] = kToolName;
    out["version"] = kToolVersion;
    out["command"] = command;
    out["config"] = config_json(cfg);
    json list = json::array();
    int passed = 0;
    for (const auto& c : checks) {
        list.push_back(json{{"name", c.name}, {"source", c.source}, {"pass", c.pass},
                            {"details", c.details}});
        passed += c.pass ? 1 : 0;
    }
    out["checks"] = list;
    out["summary"] = json{{"total", checks.size()},
                          {"passed", passed},
                          {"failed", checks.size() - static_cast<std::size_t>(passed)}};
    out["pass"] = passed == static_cast<int>(checks.size());
    return out;
}

json verify_all(const RunConfig& cfg) {
    SpectrumCache cache;
    std::vector<CheckResult> checks;
    checks.push_back(check_degree_formulas(cfg));
    checks.push_back(check_gp_spectrum(cfg, cache));
    checks.push_back(check_sgp_spectrum(cfg, cache));
    checks.push_back(check_bgp_third_eigenvalue(cfg, cache));
    checks.push_back(check_tensor_collapse(cfg));
    checks.push_back(check_sandwich_bounds(cfg));
    checks.push_back(check_tensor_identity(cfg));
    checks.push_back(check_eigenvectors(cfg));
    checks.push_back(check_walk_lemma(cfg));
    checks.push_back(check_connectivity_multisets(cfg));
    checks.push_back(check_cospectral_family(cfg));
    checks.push_back(check_mixing(cfg, cache));
    checks.push_back(check_application(cfg));
    return report_for(checks, cfg, "verify all");
}

json spectrum_json(int n, int d, const Spectrum& s) {
    return json{{"n", n}, {"d", d}, {"values", s.values}};
}

}  // namespace tgp

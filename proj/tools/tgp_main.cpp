// tgp: build threshold graph products, evaluate their closed-form spectra
// and mixing bounds, and verify everything against brute-force oracles.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tgp/cospectral.hpp"
#include "tgp/errors.hpp"
#include "tgp/kernels.hpp"
#include "tgp/mixing.hpp"
#include "tgp/parallel.hpp"
#include "tgp/spectral.hpp"
#include "tgp/verify.hpp"
#include "tgp/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) tgp::fail(tgp::ErrorCode::ParseError, "cannot write " + path);
    out << content;
}

struct VerifyOptions {
    std::string what = "all";
    std::string kind = "";
    std::string grid = "standard";
    std::string seeds_range = "";
    std::string output = "";
    int n = 0, d = 0, k = 0, t = 0;
    std::uint64_t seed = 1;
    int samples = 1000;
    std::size_t cap = 4096;
};

// Product bases are usually validated regular graphs, but irregular bases
// are still constructible (the worked toy examples use one); the degree
// audit then reports the mismatch through the exit code.
tgp::RegularGraph load_regular_base(const std::string& path) {
    const tgp::EdgeList el = tgp::read_edge_list_file(path);
    tgp::BitMatrix adj = tgp::edge_list_bits(el);
    try {
        return tgp::validate_regular(adj);
    } catch (const tgp::Error& e) {
        if (e.code() != tgp::ErrorCode::NotRegular) throw;
        std::cerr << "note: base graph is not regular; the degree audit will flag the product\n";
        return tgp::RegularGraph{el.n, el.d, std::move(adj)};
    }
}

tgp::BipartiteRegularGraph load_bipartite_base(const std::string& path) {
    const tgp::EdgeList el = tgp::read_edge_list_file(path);
    tgp::BitMatrix adj = tgp::edge_list_bits(el);
    try {
        return tgp::validate_bipartite(adj);
    } catch (const tgp::Error& e) {
        if (e.code() != tgp::ErrorCode::NotRegular) throw;
        // irregular bases skip the relabeling pass, so they must already be
        // in the canonical X-first layout
        const std::size_t half = adj.size() / 2;
        for (std::size_t u = 0; u < adj.size(); ++u)
            for (int v : adj.neighbors(u))
                if ((u < half) == (static_cast<std::size_t>(v) < half))
                    tgp::fail(tgp::ErrorCode::NotBipartite,
                              "irregular base must keep all edges across the index halves");
        std::cerr << "note: base graph is not regular; the degree audit will flag the product\n";
        return tgp::BipartiteRegularGraph{el.n, el.d, std::move(adj)};
    }
}

std::pair<std::uint64_t, int> parse_seed_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        tgp::fail(tgp::ErrorCode::InvalidArgument, "--seeds expects the form a..b");
    const long a = std::stol(text.substr(0, dots));
    const long b = std::stol(text.substr(dots + 2));
    if (b < a) tgp::fail(tgp::ErrorCode::InvalidArgument, "--seeds range is empty");
    return {static_cast<std::uint64_t>(a), static_cast<int>(b - a + 1)};
}

int run_verify(const VerifyOptions& opt) {
    tgp::RunConfig cfg;
    cfg.seed = opt.seed;
    cfg.grid = tgp::GridSpec::by_name(opt.grid);
    cfg.mixing_samples = opt.samples;
    cfg.cap = opt.cap;
    if (!opt.seeds_range.empty()) {
        const auto [start, count] = parse_seed_range(opt.seeds_range);
        cfg.seed = start;
        cfg.cospectral_seeds = count;
    }
    if (opt.n > 0 || opt.d > 0 || opt.k > 0) {
        if (opt.n <= 0 || opt.d <= 0 || opt.k <= 0 || opt.t <= 0)
            tgp::fail(tgp::ErrorCode::InvalidArgument,
                      "single-point mode needs all of -n, -d, -k, -t");
        tgp::PointSpec point;
        point.kind = opt.kind.empty() ? tgp::ProductKind::gp : tgp::product_kind_from(opt.kind);
        point.n = opt.n;
        point.d = opt.d;
        point.k = opt.k;
        point.t = opt.t;
        cfg.point = point;
    }

    tgp::json report;
    if (opt.what == "all") {
        report = tgp::verify_all(cfg);
    } else {
        tgp::SpectrumCache cache;
        std::vector<tgp::CheckResult> checks;
        if (opt.what == "degree") {
            checks.push_back(tgp::check_degree_formulas(cfg));
        } else if (opt.what == "spectrum") {
            const std::string kind = opt.kind.empty() ? "all" : opt.kind;
            if (kind == "gp" || kind == "all") checks.push_back(tgp::check_gp_spectrum(cfg, cache));
            if (kind == "sgp" || kind == "all") checks.push_back(tgp::check_sgp_spectrum(cfg, cache));
            if (kind == "bgp" || kind == "all")
                checks.push_back(tgp::check_bgp_third_eigenvalue(cfg, cache));
            if (checks.empty())
                tgp::fail(tgp::ErrorCode::InvalidArgument, "--kind must be gp, sgp or bgp");
        } else if (opt.what == "bounds") {
            checks.push_back(tgp::check_tensor_collapse(cfg));
            checks.push_back(tgp::check_sandwich_bounds(cfg));
        } else if (opt.what == "tensor") {
            checks.push_back(tgp::check_tensor_identity(cfg));
        } else if (opt.what == "eigenvectors") {
            checks.push_back(tgp::check_eigenvectors(cfg));
        } else if (opt.what == "walks") {
            checks.push_back(tgp::check_walk_lemma(cfg));
            checks.push_back(tgp::check_connectivity_multisets(cfg));
        } else if (opt.what == "cospectral") {
            checks.push_back(tgp::check_cospectral_family(cfg));
        } else if (opt.what == "mixing") {
            checks.push_back(tgp::check_mixing(cfg, cache));
            checks.push_back(tgp::check_application(cfg));
        } else {
            tgp::fail(tgp::ErrorCode::InvalidArgument, "unknown verify target '" + opt.what + "'");
        }
        report = tgp::report_for(checks, cfg, "verify " + opt.what);
    }

    for (const auto& check : report["checks"])
        std::cerr << (check["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                  << check["name"].get<std::string>() << '\n';
    write_output(opt.output, report.dump(2) + "\n");
    return report["pass"].get<bool>() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(tgp::kToolName) + " " + tgp::kToolVersion +
                 " - threshold graph products and their verification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");

    std::string kernels = "auto";
    int threads = 0;
    app.add_option("--kernels", kernels, "kernel backend: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a seeded random regular graph");
    int gen_n = 0, gen_d = 0;
    std::uint64_t gen_seed = 1;
    bool gen_bipartite = false;
    std::string gen_out;
    gen->add_option("-n", gen_n, "vertex count")->required();
    gen->add_option("-d", gen_d, "degree")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_flag("--bipartite", gen_bipartite, "generate a bipartite regular graph");
    gen->add_option("-o,--output", gen_out, "output edge-list file (default stdout)");

    // --- product -----------------------------------------------------------
    auto* product = app.add_subcommand("product", "construct a threshold product of a base graph");
    std::string prod_kind = "gp", prod_base, prod_template, prod_out;
    int prod_k = 1, prod_t = 1;
    std::uint64_t prod_seed = 0;
    std::size_t prod_cap = 4096;
    product->add_option("--kind", prod_kind, "gp, bgp, bgp-template or sgp")
        ->check(CLI::IsMember({"gp", "bgp", "bgp-template", "sgp"}));
    product->add_option("-k", prod_k, "power")->required();
    product->add_option("-t", prod_t, "threshold")->required();
    product->add_option("--template", prod_template, "template string, e.g. XYX (bgp-template)");
    product->add_option("--seed", prod_seed, "seed recorded in the output header");
    product->add_option("--cap", prod_cap, "vertex-count cap");
    product->add_option("base", prod_base, "base graph edge-list file")->required();
    product->add_option("-o,--output", prod_out, "output edge-list file (default stdout)");

    // --- spectrum ----------------------------------------------------------
    auto* spectrum = app.add_subcommand("spectrum", "full spectrum of a graph file as JSON");
    std::string spec_in, spec_out;
    std::size_t spec_cap = 4096;
    spectrum->add_option("input", spec_in, "edge-list file")->required();
    spectrum->add_option("--cap", spec_cap, "dimension cap");
    spectrum->add_option("-o,--output", spec_out, "output JSON file (default stdout)");

    // --- lambda ------------------------------------------------------------
    auto* lambda_cmd =
        app.add_subcommand("lambda", "closed-form product lambda, bounds and oracle cross-check");
    std::string lam_kind = "gp", lam_out;
    int lam_n = 0, lam_d = 0, lam_k = 1, lam_t = 1;
    std::uint64_t lam_seed = 1;
    std::size_t lam_cap = 4096;
    lambda_cmd->add_option("--kind", lam_kind, "gp or bgp")->check(CLI::IsMember({"gp", "bgp"}));
    lambda_cmd->add_option("-n", lam_n, "base vertex count")->required();
    lambda_cmd->add_option("-d", lam_d, "base degree")->required();
    lambda_cmd->add_option("-k", lam_k, "power")->required();
    lambda_cmd->add_option("-t", lam_t, "threshold")->required();
    lambda_cmd->add_option("--seed", lam_seed, "base generator seed");
    lambda_cmd->add_option("--cap", lam_cap, "dimension cap");
    double lam_tol = 1e-6;
    lambda_cmd->add_option("--tol", lam_tol, "oracle comparison tolerance");
    lambda_cmd->add_option("-o,--output", lam_out, "output JSON file (default stdout)");

    // --- mixing ------------------------------------------------------------
    auto* mixing_cmd = app.add_subcommand("mixing", "sampled discrepancy rows for one product, as CSV");
    std::string mix_base, mix_kind = "gp", mix_out;
    int mix_k = 1, mix_t = 1, mix_samples = 200;
    std::uint64_t mix_seed = 1;
    std::size_t mix_cap = 4096;
    mixing_cmd->add_option("base", mix_base, "base graph edge-list file")->required();
    mixing_cmd->add_option("--kind", mix_kind, "gp or bgp")->check(CLI::IsMember({"gp", "bgp"}));
    mixing_cmd->add_option("-k", mix_k, "power")->required();
    mixing_cmd->add_option("-t", mix_t, "threshold")->required();
    mixing_cmd->add_option("--samples", mix_samples, "sampled set pairs");
    mixing_cmd->add_option("--seed", mix_seed, "sampling seed");
    mixing_cmd->add_option("--cap", mix_cap, "dimension cap");
    mixing_cmd->add_option("-o,--output", mix_out, "output CSV file (default stdout)");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run verification suites");
    VerifyOptions vopt;
    verify->add_option("what", vopt.what,
                       "all, degree, spectrum, bounds, tensor, eigenvectors, walks, cospectral, mixing");
    verify->add_option("--kind", vopt.kind, "product kind for spectrum checks (gp, sgp, bgp)");
    verify->add_option("-n", vopt.n, "single-point base vertex count");
    verify->add_option("-d", vopt.d, "single-point base degree");
    verify->add_option("-k", vopt.k, "single-point power");
    verify->add_option("-t", vopt.t, "single-point threshold");
    verify->add_option("--seed", vopt.seed, "master seed");
    verify->add_option("--seeds", vopt.seeds_range, "seed range a..b (cospectral sweep)");
    verify->add_option("--grid", vopt.grid, "grid scale: standard or tiny")
        ->check(CLI::IsMember({"standard", "tiny"}));
    verify->add_option("--samples", vopt.samples, "mixing samples per grid point");
    verify->add_option("--cap", vopt.cap, "dimension cap");
    verify->add_option("-o,--output", vopt.output, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (kernels == "scalar") tgp::kernels::set_backend(tgp::kernels::Backend::scalar);
        if (kernels == "avx2") tgp::kernels::set_backend(tgp::kernels::Backend::avx2);
        tgp::set_thread_count(threads);

        if (gen->parsed()) {
            tgp::EdgeList el;
            if (gen_bipartite) {
                el = tgp::to_edge_list(tgp::random_bipartite_regular(gen_n, gen_d, gen_seed));
            } else {
                el = tgp::to_edge_list(tgp::random_regular(gen_n, gen_d, gen_seed));
            }
            el.comments.push_back("tgp gen seed=" + std::to_string(gen_seed));
            write_output(gen_out, tgp::write_edge_list(el));
            return kExitPass;
        }

        if (product->parsed()) {
            const tgp::ProductKind kind = tgp::product_kind_from(prod_kind);
            tgp::ProductGraph p;
            if (kind == tgp::ProductKind::gp) {
                p = tgp::gp(load_regular_base(prod_base), prod_k, prod_t, prod_cap);
            } else {
                const tgp::BipartiteRegularGraph base = load_bipartite_base(prod_base);
                if (kind == tgp::ProductKind::bgp) {
                    p = tgp::bgp(base, prod_k, prod_t, prod_cap);
                } else if (kind == tgp::ProductKind::sgp) {
                    p = tgp::sgp(base, prod_k, prod_t, prod_cap);
                } else {
                    if (prod_template.empty())
                        tgp::fail(tgp::ErrorCode::InvalidArgument,
                                  "--template is required for bgp-template");
                    p = tgp::bgp_template(base, prod_k, prod_t,
                                          tgp::Template::parse(prod_template), prod_cap);
                }
            }
            const tgp::DegreeAudit audit = tgp::audit_degree(p);
            std::cerr << "product " << tgp::to_string(p.kind) << " k=" << p.k << " t=" << p.t
                      << " vertices=" << p.size() << " formula-degree=" << audit.formula.get_str()
                      << " audited-degree=" << audit.audited_degree
                      << (audit.matches_formula ? " [ok]"
                          : audit.regular       ? " [MISMATCH]"
                                                : " [NOT REGULAR]")
                      << '\n';
            write_output(prod_out, tgp::write_edge_list(tgp::to_edge_list(p, prod_seed)));
            return audit.matches_formula ? kExitPass : kExitCheckFailure;
        }

        if (lambda_cmd->parsed()) {
            tgp::json out;
            out["kind"] = lam_kind;
            out["n"] = lam_n;
            out["d"] = lam_d;
            out["k"] = lam_k;
            out["t"] = lam_t;
            out["seed"] = lam_seed;
            out["alpha"] = tgp::alpha(lam_k, lam_t).get_str();
            tgp::EigenOptions opts;
            opts.dim_cap = static_cast<int>(lam_cap);
            double oracle_lambda;
            tgp::LambdaResult formula;
            tgp::LambdaBounds bounds;
            if (lam_kind == "gp") {
                const tgp::RegularGraph base = tgp::random_regular(lam_n, lam_d, lam_seed);
                const tgp::GpEigenBasis basis = tgp::GpEigenBasis::from_graph(base);
                out["degree"] = tgp::degree_gp(lam_n, lam_d, lam_k, lam_t).get_str();
                formula = tgp::lambda_gp(basis, lam_k, lam_t);
                bounds = tgp::lambda_bounds_gp(basis, lam_k, lam_t);
                const tgp::ProductGraph p = tgp::gp(base, lam_k, lam_t, lam_cap);
                oracle_lambda = tgp::lambda_of(tgp::eigenvalues(p.adj, opts), false);
            } else {
                const tgp::BipartiteRegularGraph base =
                    tgp::random_bipartite_regular(lam_n, lam_d, lam_seed);
                if (!tgp::is_connected(base.adj))
                    tgp::fail(tgp::ErrorCode::PremiseNotMet,
                              "bipartite lambda formulas need a connected base; try another seed");
                const tgp::GpEigenBasis basis = tgp::GpEigenBasis::from_graph(base);
                out["degree"] = tgp::degree_bgp(lam_n, lam_d, lam_k, lam_t).get_str();
                formula = tgp::lambda_bgp(basis, lam_k, lam_t);
                bounds = tgp::lambda_bounds_bgp(basis, lam_k, lam_t);
                const tgp::ProductGraph p = tgp::bgp(base, lam_k, lam_t, lam_cap);
                oracle_lambda = tgp::lambda_of(tgp::eigenvalues(p.adj, opts), true);
            }
            out["base_lambda"] = formula.base_lambda;
            out["lambda_formula"] = formula.value;
            out["lambda_oracle"] = oracle_lambda;
            out["bounds"] = tgp::json{{"lower", bounds.lower},
                                      {"upper", bounds.upper},
                                      {"degree_condition_ok", bounds.degree_condition_ok}};
            const bool sandwich_ok = !bounds.degree_condition_ok ||
                                     (bounds.lower - 1e-9 <= formula.value &&
                                      formula.value <= bounds.upper + 1e-9);
            const bool oracle_ok = std::abs(formula.value - oracle_lambda) <= lam_tol;
            out["pass"] = tgp::json{{"oracle_match", oracle_ok}, {"sandwich", sandwich_ok}};
            write_output(lam_out, out.dump(2) + "\n");
            return (oracle_ok && sandwich_ok) ? kExitPass : kExitCheckFailure;
        }

        if (mixing_cmd->parsed()) {
            tgp::ProductGraph p;
            double lambda_value;
            tgp::EigenOptions opts;
            opts.dim_cap = static_cast<int>(mix_cap);
            if (mix_kind == "gp") {
                const tgp::RegularGraph base = tgp::load_regular(mix_base);
                p = tgp::gp(base, mix_k, mix_t, mix_cap);
                lambda_value = tgp::lambda_of(tgp::eigenvalues(p.adj, opts), false);
            } else {
                const tgp::BipartiteRegularGraph base = tgp::load_bipartite(mix_base);
                p = tgp::bgp(base, mix_k, mix_t, mix_cap);
                lambda_value = tgp::lambda_of(tgp::eigenvalues(p.adj, opts), true);
            }
            const tgp::ScanResult scan =
                tgp::jumbledness_scan(p, lambda_value, mix_samples, mix_seed, /*keep_rows=*/true);
            write_output(mix_out, tgp::to_csv(scan.rows));
            std::cerr << "samples=" << scan.samples << " max-ratio=" << scan.max_ratio
                      << (scan.all_pass ? " [ok]" : " [FAIL]") << '\n';
            return scan.all_pass ? kExitPass : kExitCheckFailure;
        }

        if (spectrum->parsed()) {
            const tgp::EdgeList el = tgp::read_edge_list_file(spec_in);
            const tgp::RegularGraph g = tgp::validate_regular(tgp::edge_list_bits(el));
            tgp::EigenOptions opts;
            opts.dim_cap = static_cast<int>(spec_cap);
            const tgp::Spectrum s = tgp::eigenvalues(g.adj, opts);
            write_output(spec_out, tgp::spectrum_json(g.n, g.d, s).dump(2) + "\n");
            return kExitPass;
        }

        if (verify->parsed()) return run_verify(vopt);
    } catch (const tgp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_budget() ? kExitBudget : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

#include "tgp/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tgp/errors.hpp"
#include "tgp/kernels.hpp"

namespace tgp {

IndexSet::IndexSet(std::size_t universe, const std::vector<std::size_t>& indices)
    : universe_(universe), count_(indices.size()), words_(BitMatrix::words_for(universe), 0) {
    for (std::size_t i : indices) {
        if (i >= universe)
            fail(ErrorCode::IndexOutOfRange,
                 "vertex " + std::to_string(i) + " outside universe of size " + std::to_string(universe));
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    count_ = kernels::popcount_words(words_.data(), words_.size());
}

std::vector<std::size_t> IndexSet::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            out.push_back((w << 6) + static_cast<std::size_t>(__builtin_ctzll(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

IndexSet random_subset(std::size_t universe, std::size_t lo, std::size_t hi, std::size_t size,
                       Rng& rng) {
    const std::size_t range = hi - lo;
    if (size > range)
        fail(ErrorCode::InvalidArgument, "subset size " + std::to_string(size) +
                                             " exceeds range of " + std::to_string(range));
    std::vector<std::size_t> pool(range);
    std::iota(pool.begin(), pool.end(), lo);
    // partial Fisher-Yates: the first `size` slots become the sample
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(range - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    return IndexSet(universe, pool);
}

long long edge_count(const BitMatrix& adj, const IndexSet& S, const IndexSet& T) {
    if (S.universe() != adj.size() || T.universe() != adj.size())
        fail(ErrorCode::IndexOutOfRange, "set universe does not match the graph");
    long long total = 0;
    for (std::size_t w = 0; w < S.word_count(); ++w) {
        std::uint64_t bits = S.words()[w];
        while (bits) {
            const std::size_t u = (w << 6) + static_cast<std::size_t>(__builtin_ctzll(bits));
            bits &= bits - 1;
            total += static_cast<long long>(
                kernels::and_popcount(adj.row(u), T.words(), adj.words_per_row()));
        }
    }
    return total;
}

mpq_class expected_edges(const mpz_class& D, std::size_t N, std::size_t size_s, std::size_t size_t_,
                         bool bipartite) {
    mpz_class numer = D * mpz_class(static_cast<unsigned long>(size_s)) *
                      mpz_class(static_cast<unsigned long>(size_t_));
    if (bipartite) numer *= 2;
    mpq_class mu(numer, mpz_class(static_cast<unsigned long>(N)));
    mu.canonicalize();
    return mu;
}

DiscrepancyReport eml_check(const ProductGraph& p, const IndexSet& S, const IndexSet& T,
                            double lambda_value) {
    const bool bipartite = p.two_block_layout();
    if (bipartite) {
        const std::size_t half = p.size() / 2;
        for (std::size_t u : S.indices())
            if (u >= half)
                fail(ErrorCode::InvalidArgument, "bipartite mode: S must lie in the first block");
        for (std::size_t v : T.indices())
            if (v < half)
                fail(ErrorCode::InvalidArgument, "bipartite mode: T must lie in the second block");
    }
    DiscrepancyReport r;
    r.size_s = S.count();
    r.size_t_ = T.count();
    r.e = edge_count(p.adj, S, T);
    r.mu = expected_edges(p.formula_degree(), p.size(), S.count(), T.count(), bipartite);
    r.bound = lambda_value * std::sqrt(static_cast<double>(S.count()) * static_cast<double>(T.count()));
    const mpq_class diff_q = mpq_class(static_cast<long>(r.e)) - r.mu;
    const double discrepancy = std::fabs(diff_q.get_d());
    r.pass = discrepancy <= r.bound * (1.0 + 1e-9);
    if (r.bound > 0.0)
        r.ratio = discrepancy / r.bound;
    else
        r.ratio = discrepancy == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return r;
}

namespace {

// neighborhoods stress the bound far more than uniform sets do, so a few
// structured pairs are mixed into every scan
IndexSet neighborhood_set(const ProductGraph& p, std::size_t v, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idx;
    for (int u : p.adj.neighbors(v)) {
        const std::size_t uu = static_cast<std::size_t>(u);
        if (uu >= lo && uu < hi) idx.push_back(uu);
    }
    if (idx.empty()) idx.push_back(lo);
    return IndexSet(p.size(), idx);
}

IndexSet full_range_set(std::size_t universe, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idx(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    return IndexSet(universe, idx);
}

}  // namespace

ScanResult jumbledness_scan(const ProductGraph& p, double lambda_value, int samples,
                            std::uint64_t seed, bool keep_rows) {
    if (samples < 1) fail(ErrorCode::InvalidArgument, "need at least one sample");
    const std::size_t n = p.size();
    const bool bipartite = p.two_block_layout();
    const std::size_t s_lo = 0, s_hi = bipartite ? n / 2 : n;
    const std::size_t t_lo = bipartite ? n / 2 : 0, t_hi = n;

    ScanResult scan;
    scan.samples = samples;
    for (int i = 0; i < samples; ++i) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
        IndexSet S, T;
        switch (i % 8) {
            case 0:  // full sides: discrepancy must vanish by regularity
                S = full_range_set(n, s_lo, s_hi);
                T = full_range_set(n, t_lo, t_hi);
                break;
            case 1:  // neighborhood against a random set
                S = neighborhood_set(p, rng.below(n), s_lo, s_hi);
                T = random_subset(n, t_lo, t_hi, 1 + rng.below(t_hi - t_lo), rng);
                break;
            case 2:  // two neighborhoods
                S = neighborhood_set(p, rng.below(n), s_lo, s_hi);
                T = neighborhood_set(p, rng.below(n), t_lo, t_hi);
                break;
            default:
                S = random_subset(n, s_lo, s_hi, 1 + rng.below(s_hi - s_lo), rng);
                T = random_subset(n, t_lo, t_hi, 1 + rng.below(t_hi - t_lo), rng);
                break;
        }
        DiscrepancyReport r = eml_check(p, S, T, lambda_value);
        scan.all_pass = scan.all_pass && r.pass;
        if (r.ratio >= scan.max_ratio) {
            scan.max_ratio = r.ratio;
            scan.tightest = r;
        }
        if (keep_rows) scan.rows.push_back(std::move(r));
    }
    return scan;
}

RelativeErrorReport relative_error_report(const ProductGraph& p, double xi, int base_d,
                                          double base_lambda, int samples, std::uint64_t seed) {
    if (p.kind != ProductKind::gp)
        fail(ErrorCode::InvalidArgument, "the relative-error application applies to gp products");
    RelativeErrorReport rep;
    rep.xi = xi;
    rep.samples = samples;
    rep.premise_ok = base_lambda <= 2.0 * std::sqrt(static_cast<double>(base_d)) + 1e-12;
    if (!rep.premise_ok) return rep;  // reported, check skipped

    const std::size_t n = p.size();
    std::size_t size = static_cast<std::size_t>(std::llround(xi * static_cast<double>(n)));
    size = std::min(std::max<std::size_t>(size, 1), n);
    rep.epsilon_bound = 2.0 / (xi * std::sqrt(static_cast<double>(base_d)));

    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
        const IndexSet S = random_subset(n, 0, n, size, rng);
        const IndexSet T = random_subset(n, 0, n, size, rng);
        const long long e = edge_count(p.adj, S, T);
        const mpq_class mu = expected_edges(p.formula_degree(), n, size, size, false);
        if (mu == 0) continue;
        const mpq_class rel = (mpq_class(static_cast<long>(e)) - mu) / mu;
        worst = std::max(worst, std::fabs(rel.get_d()));
    }
    rep.epsilon_observed = worst;
    rep.pass = worst <= rep.epsilon_bound * (1.0 + 1e-9);
    return rep;
}

std::string to_csv(const std::vector<DiscrepancyReport>& rows) {
    std::ostringstream os;
    os << "size_s,size_t,e,mu,bound,ratio,pass\n";
    os.precision(17);
    for (const auto& r : rows) {
        os << r.size_s << ',' << r.size_t_ << ',' << r.e << ',' << r.mu.get_d() << ',' << r.bound
           << ',' << r.ratio << ',' << (r.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace tgp

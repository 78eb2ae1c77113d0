#include "tgp/cospectral.hpp"

#include <algorithm>
#include <cmath>

#include "tgp/eigen.hpp"
#include "tgp/errors.hpp"
#include "tgp/kernels.hpp"
#include "tgp/parallel.hpp"

namespace tgp {

namespace {

bool crosses(const BipartiteView& g, int u, int v) {
    return (u < g.nx) != (v < g.nx);
}

// walk-step candidate lists: neighbors for u_i = 1, cross-side non-neighbors
// for u_i = 0
struct StepLists {
    std::vector<std::vector<int>> edge;     // A
    std::vector<std::vector<int>> nonedge;  // A-bar = C - A
};

StepLists step_lists(const BipartiteView& g) {
    StepLists lists;
    lists.edge.resize(static_cast<std::size_t>(g.n));
    lists.nonedge.resize(static_cast<std::size_t>(g.n));
    for (int u = 0; u < g.n; ++u) {
        for (int v = 0; v < g.n; ++v) {
            if (!crosses(g, u, v)) continue;
            if (g.adj.get(static_cast<std::size_t>(u), static_cast<std::size_t>(v)))
                lists.edge[static_cast<std::size_t>(u)].push_back(v);
            else
                lists.nonedge[static_cast<std::size_t>(u)].push_back(v);
        }
    }
    return lists;
}

using IntMatrix = std::vector<long long>;

IntMatrix factor_matrix(const BipartiteView& g, bool use_edges) {
    IntMatrix m(static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.n), 0);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v) {
            if (!crosses(g, u, v)) continue;
            const bool edge = g.adj.get(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
            if (edge == use_edges) m[static_cast<std::size_t>(u) * g.n + v] = 1;
        }
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, int n) {
    IntMatrix c(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            const long long v = a[static_cast<std::size_t>(i) * n + l];
            if (v == 0) continue;
            const long long* brow = b.data() + static_cast<std::size_t>(l) * n;
            long long* crow = c.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += v * brow[j];
        }
    return c;
}

void check_walk_budget(const BipartiteView& g, std::size_t ell) {
    // product entries are bounded by n^ell; keep them inside long long
    double bits = static_cast<double>(ell + 1) * std::log2(std::max(2, g.n));
    if (bits > 62.0)
        fail(ErrorCode::BudgetExceeded, "walk length " + std::to_string(ell) +
                                            " would overflow exact integer counting at n=" +
                                            std::to_string(g.n));
}

}  // namespace

long long count_walks_trace(const BipartiteView& g, std::span<const int> u, Side start) {
    if (u.empty()) fail(ErrorCode::InvalidArgument, "walk pattern must have length >= 1");
    for (int x : u)
        if (x != 0 && x != 1) fail(ErrorCode::InvalidEntry, "walk pattern entries must be 0 or 1");
    check_walk_budget(g, u.size());

    const int n = g.n;
    IntMatrix p = factor_matrix(g, u[0] == 1);
    for (std::size_t i = 1; i < u.size(); ++i)
        p = multiply(p, factor_matrix(g, u[i] == 1), n);

    long long total = 0;
    const int lo = (start == Side::X) ? 0 : g.nx;
    const int hi = (start == Side::X) ? g.nx : n;
    for (int i = lo; i < hi; ++i) total += p[static_cast<std::size_t>(i) * n + i];
    return total;
}

long long count_walks_enumerate(const BipartiteView& g, std::span<const int> u, Side start,
                                long long budget) {
    if (u.empty()) fail(ErrorCode::InvalidArgument, "walk pattern must have length >= 1");
    const StepLists lists = step_lists(g);
    const int ell = static_cast<int>(u.size());
    long long steps = 0;
    long long count = 0;

    std::vector<int> walk(static_cast<std::size_t>(ell));
    auto dfs = [&](auto&& self, int pos) -> void {
        if (++steps > budget)
            fail(ErrorCode::BudgetExceeded, "walk enumeration exceeded its step budget");
        const int v = walk[static_cast<std::size_t>(pos)];
        const bool last = pos == ell - 1;
        if (last) {
            // closing step back to the start vertex
            const int v0 = walk[0];
            if (!crosses(g, v, v0)) return;
            const bool edge = g.adj.get(static_cast<std::size_t>(v), static_cast<std::size_t>(v0));
            if (edge == (u[static_cast<std::size_t>(pos)] == 1)) ++count;
            return;
        }
        const auto& next = (u[static_cast<std::size_t>(pos)] == 1)
                               ? lists.edge[static_cast<std::size_t>(v)]
                               : lists.nonedge[static_cast<std::size_t>(v)];
        for (int w : next) {
            walk[static_cast<std::size_t>(pos + 1)] = w;
            self(self, pos + 1);
        }
    };

    const int lo = (start == Side::X) ? 0 : g.nx;
    const int hi = (start == Side::X) ? g.nx : g.n;
    for (int v0 = lo; v0 < hi; ++v0) {
        walk[0] = v0;
        dfs(dfs, 0);
    }
    return count;
}

WalkLemmaReport verify_walk_lemma(const BipartiteView& g, int ell_max, bool with_enumeration,
                                  long long budget) {
    WalkLemmaReport report;
    report.ell_max = ell_max;
    for (int ell = 1; ell <= ell_max; ++ell) {
        std::vector<int> u(static_cast<std::size_t>(ell), 0);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ell); ++bits) {
            for (int i = 0; i < ell; ++i) u[static_cast<std::size_t>(i)] = (bits >> i) & 1;
            const long long x = count_walks_trace(g, u, Side::X);
            const long long y = count_walks_trace(g, u, Side::Y);
            ++report.patterns_checked;
            if (with_enumeration) {
                const long long ex = count_walks_enumerate(g, u, Side::X, budget);
                const long long ey = count_walks_enumerate(g, u, Side::Y, budget);
                if (ex != x || ey != y) report.methods_agree = false;
            }
            if (x != y && report.holds) {
                report.holds = false;
                report.violating_u = u;
                report.violating_x = x;
                report.violating_y = y;
            }
        }
    }
    return report;
}

ConnectivityMultiset connectivity_multiset(const BipartiteRegularGraph& g, int k, int t,
                                           const Template& tau, int ell, long long budget) {
    if (t < 1 || t > k) fail(ErrorCode::InvalidArgument, "need 1 <= t <= k");
    if (tau.k() != k) fail(ErrorCode::LengthMismatch, "template length does not match k");
    if (ell < 1) fail(ErrorCode::InvalidArgument, "need ell >= 1");
    ConnectivityMultiset out;
    if (ell % 2 != 0) return out;  // circular alternating tuples need even length

    const auto block0 = template_block_tuples(g.n, tau);
    const auto block1 = template_block_tuples(g.n, tau.complement());
    const double size = static_cast<double>(block0.size());
    if (2.0 * std::pow(size, ell) * k > static_cast<double>(budget))
        fail(ErrorCode::BudgetExceeded, "connectivity enumeration too large for the budget");

    std::vector<const std::vector<std::vector<int>>*> blocks{&block0, &block1};
    std::vector<int> choice(static_cast<std::size_t>(ell));
    std::vector<int> cvec(static_cast<std::size_t>(ell));

    auto dfs = [&](auto&& self, int pos, int start_block) -> void {
        if (pos == ell) {
            const auto& last = (*blocks[static_cast<std::size_t>((start_block + ell - 1) % 2)])
                                   [static_cast<std::size_t>(choice[static_cast<std::size_t>(ell - 1)])];
            const auto& first = (*blocks[static_cast<std::size_t>(start_block)])
                                    [static_cast<std::size_t>(choice[0])];
            cvec[static_cast<std::size_t>(ell - 1)] = coordinate_edge_count(last, first, g.adj);
            ++out[cvec];
            return;
        }
        const auto& block = *blocks[static_cast<std::size_t>((start_block + pos) % 2)];
        for (std::size_t i = 0; i < block.size(); ++i) {
            choice[static_cast<std::size_t>(pos)] = static_cast<int>(i);
            if (pos > 0) {
                const auto& prev = (*blocks[static_cast<std::size_t>((start_block + pos - 1) % 2)])
                                       [static_cast<std::size_t>(choice[static_cast<std::size_t>(pos - 1)])];
                cvec[static_cast<std::size_t>(pos - 1)] = coordinate_edge_count(prev, block[i], g.adj);
            }
            self(self, pos + 1, start_block);
        }
    };

    dfs(dfs, 0, 0);
    dfs(dfs, 0, 1);
    return out;
}

std::vector<mpz_class> exact_traces(const BitMatrix& adj, int count) {
    const std::size_t n = adj.size();
    std::vector<std::vector<int>> nbrs(n);
    for (std::size_t v = 0; v < n; ++v) nbrs[v] = adj.neighbors(v);

    std::vector<mpz_class> traces(static_cast<std::size_t>(count));
    if (count < 1) return traces;

    // Powers are walked up to ceil(count/2); tr(A^{2m}) and tr(A^{2m+1})
    // come from Frobenius products of consecutive powers (A is symmetric).
    std::vector<mpz_class> p(n * n), q(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (int j : nbrs[i]) p[i * n + static_cast<std::size_t>(j)] = 1;

    auto trace_of = [&](const std::vector<mpz_class>& m) {
        mpz_class t = 0;
        for (std::size_t i = 0; i < n; ++i) t += m[i * n + i];
        return t;
    };
    auto frobenius = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> partial(n);
        parallel_for(n, [&](std::size_t i) {
            mpz_class acc = 0;
            const mpz_class* ra = a.data() + i * n;
            const mpz_class* rb = b.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) acc += ra[j] * rb[j];
            partial[i] = acc;
        });
        mpz_class total = 0;
        for (const auto& v : partial) total += v;
        return total;
    };
    // q = p * A, exploiting 0/1 entries of A: pure additions
    auto advance = [&]() {
        parallel_for(n, [&](std::size_t i) {
            const mpz_class* prow = p.data() + i * n;
            mpz_class* qrow = q.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                mpz_class acc = 0;
                for (int l : nbrs[j]) acc += prow[static_cast<std::size_t>(l)];
                qrow[j] = acc;
            }
        });
        std::swap(p, q);
    };

    traces[0] = trace_of(p);  // ell = 1
    for (int m = 1; 2 * m <= count || 2 * m + 1 <= count; ++m) {
        if (2 * m <= count) traces[static_cast<std::size_t>(2 * m - 1)] = frobenius(p, p);
        if (2 * m + 1 <= count) {
            advance();  // p becomes A^{m+1}
            traces[static_cast<std::size_t>(2 * m)] = frobenius(q, p);
        } else {
            break;
        }
    }
    return traces;
}

TraceCertificate cospectral_certify(const BitMatrix& a1, const BitMatrix& a2, int exact_cap,
                                    double spectrum_tol) {
    if (a1.size() != a2.size())
        fail(ErrorCode::SizeMismatch, "graphs have " + std::to_string(a1.size()) + " and " +
                                          std::to_string(a2.size()) + " vertices");
    const int n = static_cast<int>(a1.size());
    TraceCertificate cert;
    cert.exact_ell = std::min(n, exact_cap);
    cert.method = (cert.exact_ell == n) ? TraceCertificate::Method::exact_full
                                        : TraceCertificate::Method::exact_prefix_plus_spectrum;

    const auto t1 = exact_traces(a1, cert.exact_ell);
    const auto t2 = exact_traces(a2, cert.exact_ell);
    cert.traces_equal = t1 == t2;

    if (cert.method == TraceCertificate::Method::exact_prefix_plus_spectrum) {
        const auto s1 = eigenvalues(a1);
        const auto s2 = eigenvalues(a2);
        cert.spectra_distance = multiset_distance(s1.values, s2.values);
        cert.spectra_equal = cert.spectra_distance <= spectrum_tol;
    }
    cert.cospectral = cert.traces_equal && cert.spectra_equal;
    return cert;
}

WitnessResult nonisomorphism_witness(const BitMatrix& a1, const BitMatrix& a2) {
    if (a1.size() != a2.size())
        fail(ErrorCode::SizeMismatch, "graphs have " + std::to_string(a1.size()) + " and " +
                                          std::to_string(a2.size()) + " vertices");
    auto sorted_diag4 = [](const BitMatrix& adj) {
        const std::size_t n = adj.size();
        // A^2 through row intersections, then diag(A^4)_i = sum_j (A^2)_ij^2
        std::vector<long long> sq(n * n, 0);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j)
                sq[i * n + j] = static_cast<long long>(
                    kernels::and_popcount(adj.row(i), adj.row(j), adj.words_per_row()));
        });
        std::vector<long long> diag(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            long long acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += sq[i * n + j] * sq[i * n + j];
            diag[i] = acc;
        }
        std::sort(diag.begin(), diag.end());
        return diag;
    };
    WitnessResult w;
    w.diag1 = sorted_diag4(a1);
    w.diag2 = sorted_diag4(a2);
    w.found = w.diag1 != w.diag2;
    return w;
}

CospectralFamily cospectral_family(const BipartiteRegularGraph& g, int k, int t, int exact_cap,
                                   double spectrum_tol, std::size_t cap) {
    CospectralFamily family;
    family.templates = Template::representatives(k);
    for (const auto& tau : family.templates)
        family.products.push_back(bgp_template(g, k, t, tau, cap));

    const int n = static_cast<int>(family.products.front().size());
    family.exact_ell = std::min(n, exact_cap);
    for (const auto& p : family.products)
        family.traces.push_back(exact_traces(p.adj, family.exact_ell));

    bool all_traces_equal = true;
    for (std::size_t i = 1; i < family.traces.size(); ++i)
        all_traces_equal = all_traces_equal && (family.traces[i] == family.traces[0]);

    bool spectra_ok = true;
    if (family.exact_ell < n) {
        family.used_spectrum_fallback = true;
        std::vector<Spectrum> spectra;
        spectra.reserve(family.products.size());
        for (const auto& p : family.products) spectra.push_back(eigenvalues(p.adj));
        for (std::size_t i = 1; i < spectra.size(); ++i)
            spectra_ok =
                spectra_ok && multiset_close(spectra[i].values, spectra[0].values, spectrum_tol);
    }
    family.all_cospectral = all_traces_equal && spectra_ok;

    for (std::size_t i = 0; i < family.products.size(); ++i) {
        for (std::size_t j = i + 1; j < family.products.size(); ++j) {
            CospectralFamily::WitnessEntry entry;
            entry.first = static_cast<int>(i);
            entry.second = static_cast<int>(j);
            entry.comparable =
                family.templates[i].x_count() != family.templates[j].x_count();
            entry.found =
                nonisomorphism_witness(family.products[i].adj, family.products[j].adj).found;
            family.witnesses.push_back(entry);
        }
    }
    return family;
}

}  // namespace tgp

#include "tgp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "tgp/errors.hpp"

namespace tgp {

namespace {

constexpr double kSnapTolerance = 1e-9;

std::vector<double> snap_integers(std::vector<double> v) {
    for (double& x : v) {
        const double r = std::nearbyint(x);
        if (std::fabs(x - r) <= kSnapTolerance) x = r;
    }
    return v;
}

std::vector<double> companion_values(const std::vector<double>& lambdas, bool bipartite, int n, int d) {
    std::vector<double> stars(lambdas.size());
    if (bipartite) {
        stars[0] = static_cast<double>(n) / 2.0 - d;
        stars[lambdas.size() - 1] = -static_cast<double>(n) / 2.0 + d;
        for (std::size_t i = 1; i + 1 < lambdas.size(); ++i) stars[i] = -lambdas[i];
    } else {
        stars[0] = static_cast<double>(n - 1 - d);
        for (std::size_t i = 1; i < lambdas.size(); ++i) stars[i] = -1.0 - lambdas[i];
    }
    return stars;
}

GpEigenBasis make_basis(const BitMatrix& adj, int n, int d, bool bipartite, bool with_vectors) {
    GpEigenBasis basis;
    basis.bipartite = bipartite;
    basis.n = n;
    basis.d = d;
    if (with_vectors) {
        EigenDecomposition dec = eigen_decompose(SymMatrix::from_bits(adj));
        basis.lambdas = snap_integers(std::move(dec.values));
        basis.vectors = std::move(dec.vectors);
    } else {
        basis.lambdas = snap_integers(eigenvalues(adj).values);
    }
    basis.lambdas[0] = d;  // Perron root of a d-regular graph, exactly
    if (bipartite) basis.lambdas[basis.lambdas.size() - 1] = -d;
    basis.lambda_stars = companion_values(basis.lambdas, bipartite, n, d);
    return basis;
}

void check_index_tuple(const GpEigenBasis& basis, std::span<const int> idx, int k) {
    if (static_cast<int>(idx.size()) != k)
        fail(ErrorCode::LengthMismatch, "index tuple length " + std::to_string(idx.size()) +
                                            " does not match k=" + std::to_string(k));
    for (int i : idx)
        if (i < 0 || i >= basis.n)
            fail(ErrorCode::IndexOutOfRange, "base index " + std::to_string(i) + " outside [0, " +
                                                 std::to_string(basis.n) + ")");
}

// Sum over sign vectors with at least t ones of per-coordinate factor
// products, evaluated by a ones-count DP (counts above t are capped at t).
double threshold_sum(std::span<const double> one_factor, std::span<const double> minus_factor,
                     bool with_zero, int k, int t) {
    std::vector<double> f(static_cast<std::size_t>(t) + 1, 0.0);
    f[0] = 1.0;
    std::vector<double> next(f.size());
    for (int j = 0; j < k; ++j) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int m = 0; m <= t; ++m) {
            const double cur = f[static_cast<std::size_t>(m)];
            if (cur == 0.0) continue;
            const int m1 = std::min(m + 1, t);
            next[static_cast<std::size_t>(m1)] += cur * one_factor[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(m)] += cur * minus_factor[static_cast<std::size_t>(j)];
            if (with_zero) next[static_cast<std::size_t>(m)] += cur;
        }
        std::swap(f, next);
    }
    return f[static_cast<std::size_t>(t)];
}

double eigenvalue_from_tuple(const GpEigenBasis& basis, std::span<const int> idx, int k, int t,
                             bool with_zero) {
    std::vector<double> one(static_cast<std::size_t>(k)), minus(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        one[static_cast<std::size_t>(j)] = basis.lambdas[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        minus[static_cast<std::size_t>(j)] =
            basis.lambda_stars[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    }
    return threshold_sum(one, minus, with_zero, k, t);
}

// iterate all n^k index tuples without materializing them
template <class Fn>
void for_each_index_tuple(int n, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    for (;;) {
        fn(std::span<const int>(idx));
        int pos = k - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] < n) break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) return;
    }
}

}  // namespace

GpEigenBasis GpEigenBasis::from_graph(const RegularGraph& g, bool with_vectors) {
    return make_basis(g.adj, g.n, g.d, false, with_vectors);
}

GpEigenBasis GpEigenBasis::from_graph(const BipartiteRegularGraph& g, bool with_vectors) {
    return make_basis(g.adj, g.n, g.d, true, with_vectors);
}

mpq_class alpha(int k, int t) {
    if (k < 1 || t < 1 || t > k)
        fail(ErrorCode::InvalidArgument,
             "need 1 <= t <= k, got k=" + std::to_string(k) + " t=" + std::to_string(t));
    mpq_class total = 0;
    for (int l = 0; l <= k - t; ++l) {
        mpq_class term(binomial(k - t, l), binomial(t + l, l));
        term.canonicalize();
        total += term;
    }
    return total;
}

mpz_class psi(int s, std::span<const int> b, int n, int d, bool bipartite) {
    const int m = static_cast<int>(b.size());
    if (s < 1 || s > m + 1)
        fail(ErrorCode::IndexOutOfRange, "start index " + std::to_string(s) + " outside [1, " +
                                             std::to_string(m + 1) + "]");
    mpz_class out = 1;
    for (int j = s - 1; j < m; ++j) {
        const int bj = b[static_cast<std::size_t>(j)];
        if (bj == 1) {
            out *= d;
        } else if (bj == -1) {
            out *= bipartite ? (n / 2 - d) : (n - d - 1);
        } else if (bj == 0) {
            if (bipartite) fail(ErrorCode::InvalidEntry, "0 entry is not allowed in bipartite mode");
            // factor 1
        } else {
            fail(ErrorCode::InvalidEntry, "entry " + std::to_string(bj) + " outside {-1,0,1}");
        }
    }
    return out;
}

double gp_eigenvalue(const GpEigenBasis& basis, std::span<const int> idx, int k, int t) {
    if (basis.bipartite) fail(ErrorCode::InvalidArgument, "gp evaluator needs a nonbipartite basis");
    check_index_tuple(basis, idx, k);
    return eigenvalue_from_tuple(basis, idx, k, t, /*with_zero=*/true);
}

double sgp_eigenvalue(const GpEigenBasis& basis, std::span<const int> idx, int k, int t) {
    if (!basis.bipartite) fail(ErrorCode::InvalidArgument, "sgp evaluator needs a bipartite basis");
    check_index_tuple(basis, idx, k);
    return eigenvalue_from_tuple(basis, idx, k, t, /*with_zero=*/false);
}

mpz_class second_eigenvalue_coeff(int n, int d, int k, int t, bool bipartite) {
    // sum over vectors in {-1,0,1}^{k-1} (no zeros when bipartite) with
    // exactly t-1 ones; grouped by zero count, psi depends only on counts
    mpz_class total = 0;
    const int m = k - 1;
    const int ones = t - 1;
    const int zmax = bipartite ? 0 : m - ones;
    for (int z = 0; z <= zmax; ++z) {
        const int minus = m - ones - z;
        if (minus < 0) continue;
        std::vector<int> b;
        b.insert(b.end(), static_cast<std::size_t>(ones), 1);
        b.insert(b.end(), static_cast<std::size_t>(z), 0);
        b.insert(b.end(), static_cast<std::size_t>(minus), -1);
        const mpz_class placements = binomial(m, ones) * binomial(m - ones, z);
        total += placements * psi(1, b, n, d, bipartite);
    }
    return total;
}

double gp_second_eigenvalue_exact(const GpEigenBasis& basis, int i, int k, int t) {
    if (basis.bipartite) fail(ErrorCode::InvalidArgument, "gp formula needs a nonbipartite basis");
    if (i < 1 || i >= basis.n)
        fail(ErrorCode::IndexOutOfRange, "index " + std::to_string(i) + " must be in [1, n)");
    const mpz_class coeff = second_eigenvalue_coeff(basis.n, basis.d, k, t, false);
    return basis.lambdas[static_cast<std::size_t>(i)] * coeff.get_d();
}

double bgp_third_eigenvalue_exact(const GpEigenBasis& basis, int i, int k, int t) {
    if (!basis.bipartite) fail(ErrorCode::InvalidArgument, "bgp formula needs a bipartite basis");
    if (i < 1 || i >= basis.n - 1)
        fail(ErrorCode::IndexOutOfRange, "index " + std::to_string(i) + " must be in [1, n-1)");
    const mpz_class coeff = second_eigenvalue_coeff(basis.n, basis.d, k, t, true);
    return basis.lambdas[static_cast<std::size_t>(i)] * coeff.get_d();
}

namespace {

// extremal nontrivial index: lambda_2 vs |lambda_n| (or |lambda_{n-1}|),
// ties broken toward the positive eigenvalue
int star_index(const GpEigenBasis& basis) {
    if (basis.bipartite) {
        if (basis.n < 3) fail(ErrorCode::DegenerateSpectrum, "no nontrivial bipartite eigenvalue");
        const double pos = basis.lambdas[1];
        const double neg = basis.lambdas[static_cast<std::size_t>(basis.n - 2)];
        return (pos >= std::fabs(neg)) ? 1 : basis.n - 2;
    }
    if (basis.n < 2) fail(ErrorCode::DegenerateSpectrum, "no nontrivial eigenvalue");
    const double pos = basis.lambdas[1];
    const double neg = basis.lambdas[static_cast<std::size_t>(basis.n - 1)];
    return (pos >= std::fabs(neg)) ? 1 : basis.n - 1;
}

}  // namespace

LambdaResult lambda_gp(const GpEigenBasis& basis, int k, int t) {
    LambdaResult r;
    r.star_index = star_index(basis);
    r.base_lambda = std::fabs(basis.lambdas[static_cast<std::size_t>(r.star_index)]);
    r.value = std::fabs(gp_second_eigenvalue_exact(basis, r.star_index, k, t));
    return r;
}

LambdaResult lambda_bgp(const GpEigenBasis& basis, int k, int t) {
    LambdaResult r;
    r.star_index = star_index(basis);
    r.base_lambda = std::fabs(basis.lambdas[static_cast<std::size_t>(r.star_index)]);
    r.value = std::fabs(bgp_third_eigenvalue_exact(basis, r.star_index, k, t));
    return r;
}

LambdaBounds lambda_bounds_gp(const GpEigenBasis& basis, int k, int t) {
    if (basis.d < 1) fail(ErrorCode::DegenerateSpectrum, "bounds need a base degree of at least 1");
    const double lam = std::fabs(basis.lambdas[static_cast<std::size_t>(star_index(basis))]);
    const double d1 = degree_gp(basis.n, basis.d, k, t).get_d();
    const double inv_alpha = mpq_class(1 / alpha(k, t)).get_d();
    LambdaBounds b;
    b.upper = (lam / basis.d) * inv_alpha * d1;
    b.lower = b.upper * (static_cast<double>(t) / k);
    b.degree_condition_ok = 2 * basis.d <= basis.n - 1;
    return b;
}

LambdaBounds lambda_bounds_bgp(const GpEigenBasis& basis, int k, int t) {
    if (basis.d < 1) fail(ErrorCode::DegenerateSpectrum, "bounds need a base degree of at least 1");
    const double lam = std::fabs(basis.lambdas[static_cast<std::size_t>(star_index(basis))]);
    const double d2 = degree_bgp(basis.n, basis.d, k, t).get_d();
    const double inv_alpha = mpq_class(1 / alpha(k, t)).get_d();
    LambdaBounds b;
    b.upper = (lam / basis.d) * d2;
    b.lower = (lam / basis.d) * inv_alpha * (static_cast<double>(t) / k) * d2;
    b.degree_condition_ok = 4 * basis.d <= basis.n;
    return b;
}

std::vector<double> gp_spectrum_formula(const GpEigenBasis& basis, int k, int t) {
    if (basis.bipartite) fail(ErrorCode::InvalidArgument, "gp sweep needs a nonbipartite basis");
    std::vector<double> out;
    for_each_index_tuple(basis.n, k, [&](std::span<const int> idx) {
        out.push_back(eigenvalue_from_tuple(basis, idx, k, t, true));
    });
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

std::vector<double> sgp_spectrum_formula(const GpEigenBasis& basis, int k, int t) {
    if (!basis.bipartite) fail(ErrorCode::InvalidArgument, "sgp sweep needs a bipartite basis");
    std::vector<double> out;
    for_each_index_tuple(basis.n, k, [&](std::span<const int> idx) {
        out.push_back(eigenvalue_from_tuple(basis, idx, k, t, false));
    });
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

double sgp_lambda_outside_extremes(const GpEigenBasis& basis, int k, int t) {
    if (!basis.bipartite) fail(ErrorCode::InvalidArgument, "sweep needs a bipartite basis");
    double best = 0.0;
    for_each_index_tuple(basis.n, k, [&](std::span<const int> idx) {
        bool all_extreme = true;
        for (int i : idx)
            if (i != 0 && i != basis.n - 1) {
                all_extreme = false;
                break;
            }
        if (all_extreme) return;
        best = std::max(best, std::fabs(eigenvalue_from_tuple(basis, idx, k, t, false)));
    });
    return best;
}

double eigenvector_residual(const GpEigenBasis& basis, std::span<const int> idx,
                            const ProductGraph& product) {
    if (basis.vectors.empty())
        fail(ErrorCode::InvalidArgument, "basis was built without eigenvectors");
    const int k = product.k;
    check_index_tuple(basis, idx, k);

    double lambda;
    if (product.kind == ProductKind::gp) {
        lambda = gp_eigenvalue(basis, idx, k, product.t);
    } else if (product.kind == ProductKind::sgp) {
        lambda = sgp_eigenvalue(basis, idx, k, product.t);
    } else {
        fail(ErrorCode::InvalidArgument, "tensor eigenvectors apply to gp and sgp products");
    }

    const std::size_t size = product.size();
    std::vector<double> w(size);
    for (std::size_t r = 0; r < size; ++r) {
        double v = 1.0;
        const auto& tuple = product.vertices[r];
        for (int j = 0; j < k; ++j)
            v *= basis.vectors[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]
                              [static_cast<std::size_t>(tuple[static_cast<std::size_t>(j)])];
        w[r] = v;
    }

    double norm2 = 0.0, res2 = 0.0;
    for (std::size_t r = 0; r < size; ++r) {
        double aw = 0.0;
        for (int c : product.adj.neighbors(r)) aw += w[static_cast<std::size_t>(c)];
        const double diff = aw - lambda * w[r];
        res2 += diff * diff;
        norm2 += w[r] * w[r];
    }
    if (norm2 == 0.0) fail(ErrorCode::InvalidArgument, "tensor eigenvector is zero");
    return std::sqrt(res2 / norm2);
}

}  // namespace tgp

#include "tgp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tgp/errors.hpp"
#include "tgp/kernels.hpp"

namespace tgp {

double SymMatrix::frobenius() const {
    double sum = 0.0;
    for (double v : a_) sum += v * v;
    return std::sqrt(sum);
}

void SymMatrix::require_symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i))
                fail(ErrorCode::NotSymmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") differs from its transpose");
}

SymMatrix SymMatrix::from_bits(const BitMatrix& adj) {
    SymMatrix m(static_cast<int>(adj.size()));
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (int j : adj.neighbors(i)) m.at(static_cast<int>(i), j) = 1.0;
    return m;
}

namespace {

double off_diagonal_norm(const SymMatrix& a) {
    const int n = a.size();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* row = a.row(i);
        for (int j = i + 1; j < n; ++j) sum += row[j] * row[j];
    }
    return std::sqrt(2.0 * sum);
}

// Cyclic-by-rows Jacobi. Rotations are applied to full row pairs through the
// rotate_pair kernel, then mirrored back into the two columns; the 2x2 pivot
// block is updated analytically. When vectors != nullptr its rows accumulate
// the transposed rotation product, i.e. they end up as eigenvectors.
void jacobi_inplace(SymMatrix& a, SymMatrix* vectors, double rel_threshold) {
    const int n = a.size();
    const std::size_t nn = static_cast<std::size_t>(n);
    if (vectors) {
        *vectors = SymMatrix(n);
        for (int i = 0; i < n; ++i) vectors->at(i, i) = 1.0;
    }
    const double norm = a.frobenius();
    if (norm == 0.0 || n < 2) return;
    const double target = rel_threshold * norm;
    // Elements this small cannot push the off-diagonal norm back above the
    // target even if every entry sat at the cut, so they are zeroed rather
    // than rotated. Rotating them only sprays rounding noise, which stalls
    // the tail on matrices with large eigenvalue clusters (product spectra
    // are full of them).
    const double floor_cut = target / (4.0 * n);

    constexpr int kMaxSweeps = 300;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off <= target) return;
        // loose rotations are skipped early on, mopped up by later sweeps
        const double skip = (sweep < 4) ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                if (std::fabs(apq) <= floor_cut) {
                    a.at(p, q) = 0.0;
                    a.at(q, p) = 0.0;
                    continue;
                }
                if (std::fabs(apq) <= skip) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                kernels::rotate_pair(a.row(p), a.row(q), nn, c, s);
                a.at(p, p) = app - t * apq;
                a.at(q, q) = aqq + t * apq;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (int j = 0; j < n; ++j) {
                    if (j == p || j == q) continue;
                    a.at(j, p) = a.at(p, j);
                    a.at(j, q) = a.at(q, j);
                }
                if (vectors) kernels::rotate_pair(vectors->row(p), vectors->row(q), nn, c, s);
            }
        }
    }
    fail(ErrorCode::ConvergenceFailure, "jacobi did not reach the off-diagonal target in 300 sweeps");
}

// Householder reduction to tridiagonal form (values only), in place.
// Produces diagonal d and subdiagonal e (e[0] unused).
void tridiagonalize(SymMatrix& m, std::vector<double>& d, std::vector<double>& e) {
    const int n = m.size();
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    auto a = [&m](int i, int j) -> double& { return m.at(i, j); };

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
    }
    // each reflector updated the leading block in place, so the final
    // diagonal is the tridiagonal diagonal
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
}

double pythag(double x, double y) {
    const double ax = std::fabs(x), ay = std::fabs(y);
    if (ax > ay) {
        const double r = ay / ax;
        return ax * std::sqrt(1.0 + r * r);
    }
    if (ay == 0.0) return 0.0;
    const double r = ax / ay;
    return ay * std::sqrt(1.0 + r * r);
}

// Implicit-shift QL on a symmetric tridiagonal matrix.
void tql_inplace(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n < 2) return;
    for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(n - 1)] = 0.0;

    // Splitting must also be judged against the whole-matrix scale: blocks
    // whose diagonal is tiny relative to the norm would otherwise never
    // satisfy a purely local test and the iteration spins on rounding noise.
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        anorm = std::max(anorm, std::fabs(d[i]) + std::fabs(e[static_cast<std::size_t>(i)]));

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <=
                    std::numeric_limits<double>::epsilon() * (dd + anorm))
                    break;
            }
            if (m != l) {
                if (iter++ == 60)
                    fail(ErrorCode::ConvergenceFailure, "ql iteration stalled on a tridiagonal block");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

std::vector<double> sorted_descending(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
}

}  // namespace

Spectrum eigenvalues(SymMatrix a, const EigenOptions& opts) {
    const int n = a.size();
    if (n > opts.dim_cap)
        fail(ErrorCode::DimensionCapExceeded,
             "matrix dimension " + std::to_string(n) + " exceeds cap " + std::to_string(opts.dim_cap));
    a.require_symmetric();
    EigenMethod method = opts.method;
    if (method == EigenMethod::automatic)
        method = (n <= opts.jacobi_crossover) ? EigenMethod::jacobi : EigenMethod::tridiagonal;

    Spectrum s;
    if (method == EigenMethod::jacobi) {
        jacobi_inplace(a, nullptr, opts.jacobi_rel_threshold);
        s.values.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) s.values[static_cast<std::size_t>(i)] = a.at(i, i);
    } else {
        std::vector<double> d, e;
        tridiagonalize(a, d, e);
        tql_inplace(d, e);
        s.values = std::move(d);
    }
    s.values = sorted_descending(std::move(s.values));
    return s;
}

Spectrum eigenvalues(const BitMatrix& adj, const EigenOptions& opts) {
    return eigenvalues(SymMatrix::from_bits(adj), opts);
}

EigenDecomposition eigen_decompose(SymMatrix a, const EigenOptions& opts) {
    const int n = a.size();
    if (n > opts.dim_cap)
        fail(ErrorCode::DimensionCapExceeded,
             "matrix dimension " + std::to_string(n) + " exceeds cap " + std::to_string(opts.dim_cap));
    a.require_symmetric();
    SymMatrix v;
    jacobi_inplace(a, &v, opts.jacobi_rel_threshold);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&a](int x, int y) { return a.at(x, x) > a.at(y, y); });

    EigenDecomposition out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors.reserve(static_cast<std::size_t>(n));
    for (int idx : order) {
        out.values.push_back(a.at(idx, idx));
        out.vectors.emplace_back(v.row(idx), v.row(idx) + n);
    }
    return out;
}

double lambda_of(const Spectrum& s, bool bipartite) {
    const int n = s.size();
    if (bipartite) {
        if (n < 3)
            fail(ErrorCode::DegenerateSpectrum, "bipartite lambda needs at least 3 eigenvalues");
        return std::max(s.values[1], std::fabs(s.values[static_cast<std::size_t>(n - 2)]));
    }
    if (n < 2) fail(ErrorCode::DegenerateSpectrum, "lambda needs at least 2 eigenvalues");
    return std::max(s.values[1], std::fabs(s.values[static_cast<std::size_t>(n - 1)]));
}

double lambda_of(const RegularGraph& g) { return lambda_of(eigenvalues(g.adj), false); }

double lambda_of(const BipartiteRegularGraph& g) { return lambda_of(eigenvalues(g.adj), true); }

bool Spectrum::matches(const Spectrum& other) const {
    return multiset_close(values, other.values, std::max(tol, other.tol));
}

double multiset_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    return worst;
}

bool multiset_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    return multiset_distance(a, b) <= tol;
}

}  // namespace tgp

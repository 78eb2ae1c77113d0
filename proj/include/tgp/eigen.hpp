#pragma once

#include <cstddef>
#include <vector>

#include "tgp/bitmatrix.hpp"
#include "tgp/graph.hpp"

namespace tgp {

// Dense symmetric matrix, row-major full storage.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int size() const { return n_; }
    double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_); }
    const double* row(int i) const {
        return a_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
    }
    double at(int i, int j) const { return row(i)[j]; }
    double& at(int i, int j) { return row(i)[j]; }

    double frobenius() const;
    // exact check; adjacency-derived input is exactly symmetric
    void require_symmetric() const;

    static SymMatrix from_bits(const BitMatrix& adj);

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Full real spectrum, sorted descending.
struct Spectrum {
    std::vector<double> values;
    double tol = 1e-8;  // default comparison tolerance

    int size() const { return static_cast<int>(values.size()); }
    bool matches(const Spectrum& other) const;
};

enum class EigenMethod {
    automatic,    // jacobi below the crossover size, tridiagonal above
    jacobi,       // cyclic Jacobi rotations
    tridiagonal,  // Householder reduction + implicit-shift QL, values only
};

struct EigenOptions {
    EigenMethod method = EigenMethod::automatic;
    int dim_cap = 4096;
    // Jacobi's scattered column updates make it memory-bound well before
    // this size; the tridiagonal path takes over for larger matrices.
    int jacobi_crossover = 256;
    double jacobi_rel_threshold = 1e-12;  // off-diagonal norm target, relative to ||A||_F
};

// Consumes the matrix (both algorithms work in place).
Spectrum eigenvalues(SymMatrix a, const EigenOptions& opts = {});
Spectrum eigenvalues(const BitMatrix& adj, const EigenOptions& opts = {});

struct EigenDecomposition {
    std::vector<double> values;                // sorted descending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i], orthonormal
};

// Jacobi with eigenvector accumulation; meant for the moderate sizes where
// vectors are actually consumed.
EigenDecomposition eigen_decompose(SymMatrix a, const EigenOptions& opts = {});

// max{lambda_2, |lambda_n|}, or max{lambda_2, |lambda_{n-1}|} for bipartite
// graphs. Throws DegenerateSpectrum when no nontrivial eigenvalue exists.
double lambda_of(const Spectrum& s, bool bipartite);
double lambda_of(const RegularGraph& g);
double lambda_of(const BipartiteRegularGraph& g);

// Sorted-descending multisets agree entrywise within tol.
bool multiset_close(const std::vector<double>& a, const std::vector<double>& b, double tol);
// Largest entrywise gap between two sorted multisets (infinity on length mismatch).
double multiset_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tgp

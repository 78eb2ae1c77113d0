#pragma once

#include <cstddef>
#include <cstdint>

namespace tgp::kernels {

// The two inner loops everything hot runs through: plane rotations of row
// pairs (the eigensolver) and masked popcounts (edge counting, degree
// audits). Each has a scalar reference implementation and an AVX2 variant;
// the active one is chosen at runtime. Both paths produce bit-identical
// results: the rotation uses separate multiply/add on both sides (no FMA),
// and the popcounts are integer-exact by construction.

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
// Force a backend ("scalar" everywhere, or "avx2" where supported; throws
// InvalidArgument otherwise). Used by tests and the --kernels CLI flag.
void set_backend(Backend b);
void reset_backend();  // back to auto-detection

const char* to_string(Backend b);

// x'[j] = c*x[j] - s*y[j];  y'[j] = s*x[j] + c*y[j]
void rotate_pair(double* x, double* y, std::size_t n, double c, double s);

// number of set bits in w[0..n)
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);

// number of set bits in (a[j] & b[j]) over j in [0, n)
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

namespace scalar {
void rotate_pair(double* x, double* y, std::size_t n, double c, double s);
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
// Defined only in builds targeting x86-64; calling them on a machine without
// AVX2 support is undefined, so go through the dispatching entry points.
void rotate_pair(double* x, double* y, std::size_t n, double c, double s);
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace avx2

}  // namespace tgp::kernels

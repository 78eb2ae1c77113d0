#include "tgp/kernels.hpp"

#include <atomic>

#include "tgp/errors.hpp"

namespace tgp::kernels {

namespace scalar {

void rotate_pair(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = x[j];
        const double yj = y[j];
        x[j] = c * xj - s * yj;
        y[j] = s * xj + c * yj;
    }
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < n; ++j) total += static_cast<std::uint64_t>(__builtin_popcountll(w[j]));
    return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < n; ++j) total += static_cast<std::uint64_t>(__builtin_popcountll(a[j] & b[j]));
    return total;
}

}  // namespace scalar

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

std::atomic<Backend> g_backend{avx2_supported() ? Backend::avx2 : Backend::scalar};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported())
        fail(ErrorCode::InvalidArgument, "avx2 kernels requested but not supported on this CPU");
    g_backend.store(b, std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(avx2_supported() ? Backend::avx2 : Backend::scalar); }

const char* to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void rotate_pair(double* x, double* y, std::size_t n, double c, double s) {
#if defined(__x86_64__) || defined(__i386__)
    if (active_backend() == Backend::avx2) {
        avx2::rotate_pair(x, y, n, c, s);
        return;
    }
#endif
    scalar::rotate_pair(x, y, n, c, s);
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
#if defined(__x86_64__) || defined(__i386__)
    if (active_backend() == Backend::avx2) return avx2::popcount_words(w, n);
#endif
    return scalar::popcount_words(w, n);
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
#if defined(__x86_64__) || defined(__i386__)
    if (active_backend() == Backend::avx2) return avx2::and_popcount(a, b, n);
#endif
    return scalar::and_popcount(a, b, n);
}

}  // namespace tgp::kernels

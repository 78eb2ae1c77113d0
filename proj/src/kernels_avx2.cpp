// AVX2 kernel variants. This translation unit is compiled with -mavx2 and
// must only be entered after a runtime CPU check (see kernels.cpp).

#include "tgp/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace tgp::kernels::avx2 {

void rotate_pair(double* x, double* y, std::size_t n, double c, double s) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d vx = _mm256_loadu_pd(x + j);
        const __m256d vy = _mm256_loadu_pd(y + j);
        // mul/sub kept separate so results match the scalar path bit for bit
        const __m256d nx = _mm256_sub_pd(_mm256_mul_pd(vc, vx), _mm256_mul_pd(vs, vy));
        const __m256d ny = _mm256_add_pd(_mm256_mul_pd(vs, vx), _mm256_mul_pd(vc, vy));
        _mm256_storeu_pd(x + j, nx);
        _mm256_storeu_pd(y + j, ny);
    }
    for (; j < n; ++j) {
        const double xj = x[j];
        const double yj = y[j];
        x[j] = c * xj - s * yj;
        y[j] = s * xj + c * yj;
    }
}

namespace {

// Mula's in-register popcount: per-nibble table lookup, bytewise sum.
inline __m256i popcount_epi64(__m256i v) {
    const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                           0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi64(v, 4), low_mask);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i acc) {
    __m128i lo = _mm256_castsi256_si128(acc);
    __m128i hi = _mm256_extracti128_si256(acc, 1);
    __m128i sum = _mm_add_epi64(lo, hi);
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(sum)) +
           static_cast<std::uint64_t>(_mm_extract_epi64(sum, 1));
}

}  // namespace

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + j));
        acc = _mm256_add_epi64(acc, popcount_epi64(v));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; j < n; ++j) total += static_cast<std::uint64_t>(__builtin_popcountll(w[j]));
    return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + j));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
        acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; j < n; ++j) total += static_cast<std::uint64_t>(__builtin_popcountll(a[j] & b[j]));
    return total;
}

}  // namespace tgp::kernels::avx2

#endif  // x86

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tgp/errors.hpp"
#include "tgp/kernels.hpp"

namespace tgp {

// Dense square bit matrix: one row per vertex, 64 adjacencies per word.
// Bits past column n-1 in the last word of each row stay zero, so row
// popcounts and row intersections need no masking.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

    std::size_t size() const { return n_; }
    std::size_t words_per_row() const { return words_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    void set(std::size_t i, std::size_t j, bool value) {
        std::uint64_t& w = bits_[i * words_ + (j >> 6)];
        const std::uint64_t mask = std::uint64_t{1} << (j & 63);
        if (value)
            w |= mask;
        else
            w &= ~mask;
    }

    void set_edge(std::size_t u, std::size_t v) {
        set(u, v, true);
        set(v, u, true);
    }

    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }

    std::size_t row_popcount(std::size_t i) const {
        return kernels::popcount_words(row(i), words_);
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (get(i, j) != get(j, i)) return false;
        return true;
    }

    bool has_diagonal() const {
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i, i)) return true;
        return false;
    }

    std::vector<int> neighbors(std::size_t i) const {
        std::vector<int> out;
        const std::uint64_t* r = row(i);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                out.push_back(static_cast<int>((w << 6) + static_cast<std::size_t>(__builtin_ctzll(bits))));
                bits &= bits - 1;
            }
        }
        return out;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    static std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace tgp

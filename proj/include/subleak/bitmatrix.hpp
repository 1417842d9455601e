#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subleak/bitkern/kernels.hpp"
#include "subleak/error.hpp"

namespace subleak {

// Dense binary matrix stored column-major in 64-bit word blocks, so a column
// is a contiguous span and column sums / column intersections run through the
// bitkern popcount kernels.
class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpc_((rows + 63) / 64),
          words_(wpc_ * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_col() const { return wpc_; }

    bool get(std::size_t r, std::size_t c) const {
        check(r, c);
        return (words_[c * wpc_ + r / 64] >> (r % 64)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v = true) {
        check(r, c);
        std::uint64_t& w = words_[c * wpc_ + r / 64];
        const std::uint64_t bit = 1ull << (r % 64);
        if (v) w |= bit; else w &= ~bit;
    }

    std::span<const std::uint64_t> col(std::size_t c) const {
        require(c < cols_, "BitMatrix: column out of range");
        return {words_.data() + c * wpc_, wpc_};
    }

    std::span<const std::uint64_t> words() const { return words_; }

    std::size_t col_sum(std::size_t c) const {
        return bitkern::popcount(col(c));
    }

    // popcount(col(c) & mask); mask must span words_per_col words.
    std::size_t masked_col_sum(std::size_t c,
                               std::span<const std::uint64_t> mask) const {
        return bitkern::and_popcount(col(c), mask);
    }

    std::vector<std::uint32_t> col_sums() const {
        std::vector<std::uint32_t> out(cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            out[c] = static_cast<std::uint32_t>(col_sum(c));
        return out;
    }

    std::vector<std::uint32_t> row_sums() const {
        std::vector<std::uint32_t> out(rows_, 0);
        for (std::size_t c = 0; c < cols_; ++c)
            for (std::size_t r = 0; r < rows_; ++r)
                out[r] += get(r, c);
        return out;
    }

    void zero_col(std::size_t c) {
        require(c < cols_, "BitMatrix: column out of range");
        for (std::size_t w = 0; w < wpc_; ++w) words_[c * wpc_ + w] = 0;
    }

    void zero_row(std::size_t r) {
        require(r < rows_, "BitMatrix: row out of range");
        const std::uint64_t clear = ~(1ull << (r % 64));
        for (std::size_t c = 0; c < cols_; ++c)
            words_[c * wpc_ + r / 64] &= clear;
    }

    // All-ones mask over the row range, for masked_col_sum.
    std::vector<std::uint64_t> full_row_mask() const {
        std::vector<std::uint64_t> mask(wpc_, ~0ull);
        if (rows_ % 64 != 0 && wpc_ > 0)
            mask[wpc_ - 1] = (1ull << (rows_ % 64)) - 1;
        return mask;
    }

    bool operator==(const BitMatrix&) const = default;

private:
    void check(std::size_t r, std::size_t c) const {
        require(r < rows_ && c < cols_, "BitMatrix: index out of range");
    }

    std::size_t rows_ = 0, cols_ = 0, wpc_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace subleak

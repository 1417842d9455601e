#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "subleak/bitmatrix.hpp"

namespace subleak {

// Labeled binary incidence matrix: rows are tokens (ciphertext side) or
// character codes (plaintext side), columns are string ids. Padding rows in
// an extended matrix carry negative placeholder labels.
struct IncidenceMatrix {
    std::vector<std::int32_t> row_labels;
    std::vector<std::int32_t> col_labels;
    BitMatrix bits;

    std::size_t rows() const { return row_labels.size(); }
    std::size_t cols() const { return col_labels.size(); }
    void validate() const;
};

// Generic builder: cols = (id, sorted item list) pairs, rows = item universe.
IncidenceMatrix incidence_from_items(
    const std::vector<std::int32_t>& row_universe,
    const std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>>& cols);

// Extends a known-side incidence matrix to m rows with all-zero padding rows
// labeled -1, -2, ... for the characters the attacker has never seen.
IncidenceMatrix build_A_double_prime(const IncidenceMatrix& A_prime,
                                     std::size_t m);

// String-by-string co-occurrence counts. counts(i,j) is the number of shared
// row items (distinct characters / tokens) between columns i and j of the
// source incidence matrix; the diagonal holds column sums. Counts are
// computed on demand from the column bitsets, so an n x n table is never
// materialized.
class CooccurrenceMatrix {
public:
    static CooccurrenceMatrix from_incidence(const IncidenceMatrix& inc);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::int32_t>& labels() const { return labels_; }

    std::uint32_t count(std::size_t i, std::size_t j) const {
        if (i == j) return diag_[i];
        return static_cast<std::uint32_t>(
            bitkern::and_popcount(cols_.col(i), cols_.col(j)));
    }

    std::uint32_t diag(std::size_t i) const { return diag_[i]; }

private:
    BitMatrix cols_;
    std::vector<std::uint32_t> diag_;
    std::vector<std::int32_t> labels_;
};

CooccurrenceMatrix build_cooccurrence(const IncidenceMatrix& inc);

// CSV export/import. Layout: '#' comment stating the orientation, then a
// header row of token ids, then one row per string (string id first).
void write_incidence_csv(const std::filesystem::path& path,
                         const IncidenceMatrix& inc);
IncidenceMatrix read_incidence_csv(const std::filesystem::path& path);

} // namespace subleak

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subleak/matrix.hpp"

namespace subleak {

// Correct correspondences, kept out of the attacker-visible surface and used
// only for scoring.
struct GroundTruth {
    std::map<std::int32_t, std::int32_t> col_es_to_s;
    std::map<std::int32_t, std::int32_t> row_token_to_char;
};

// Recovered (es, s) and (t, a) pairs. Entries are write-once: re-adding an
// identical pair is a no-op, a conflicting add is an invariant violation,
// because every step is supposed to be sound.
class MappingState {
public:
    // Returns true when the pair is new.
    bool add_col(std::int32_t es, std::int32_t s);
    bool add_row(std::int32_t token, std::int32_t ch);

    bool has_col_es(std::int32_t es) const { return col_.count(es) != 0; }
    bool has_col_s(std::int32_t s) const { return col_inv_.count(s) != 0; }
    bool has_row_token(std::int32_t t) const { return row_.count(t) != 0; }
    bool has_row_char(std::int32_t ch) const { return row_inv_.count(ch) != 0; }

    const std::map<std::int32_t, std::int32_t>& col_map() const { return col_; }
    const std::map<std::int32_t, std::int32_t>& row_map() const { return row_; }

    std::optional<GroundTruth> ground_truth;

private:
    std::map<std::int32_t, std::int32_t> col_;     // es id -> s id
    std::map<std::int32_t, std::int32_t> col_inv_; // s id -> es id
    std::map<std::int32_t, std::int32_t> row_;     // token -> char code
    std::map<std::int32_t, std::int32_t> row_inv_; // char code -> token
};

struct AttackConfig {
    int max_rounds = 16;
    // Whether the residual-sum step also zeroes matched token/character rows
    // (without it the step cannot see past what unique column sums already
    // gave). Kept switchable for fidelity experiments.
    bool zero_matched_rows_in_step5 = true;
};

struct AttackTrace {
    struct Event {
        int round;
        const char* step;
        std::size_t added;
        std::size_t cols_total;
        std::size_t rows_total;
    };
    std::vector<Event> events;
};

// The five mapping steps. Each returns the number of new pairs. B is the
// m x n ciphertext incidence matrix, A2 the m x n' extended known matrix;
// M and M2 are their column co-occurrence tables.

// Column sums unique among all B columns, matched to exactly one known
// column with the same sum.
std::size_t step1_column_sum(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                             MappingState& state);

// Repeated sweep: an unmapped known column whose (column sum, co-occurrence
// against every mapped pair) profile fits exactly one unmapped B column.
std::size_t step2_occurrence(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                             const CooccurrenceMatrix& M,
                             const CooccurrenceMatrix& M2, MappingState& state);

// Row bit patterns over the matched columns; unique non-zero patterns map
// tokens to characters.
std::size_t step3_unique_row(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                             MappingState& state);

// Column bit patterns over the matched rows; unique non-zero patterns map
// further strings.
std::size_t step4_unique_column(const IncidenceMatrix& B,
                                const IncidenceMatrix& A2, MappingState& state);

// Zero matched columns (and, per config, matched rows), recompute column
// sums, and match unique residual sums among the unmapped columns until no
// change.
std::size_t step5_iterative(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                            MappingState& state, const AttackConfig& cfg);

// Step 1 once, then rounds of steps 2-5 until a full round adds nothing or
// max_rounds is reached.
MappingState run_attack(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                        const CooccurrenceMatrix& M, const CooccurrenceMatrix& M2,
                        const AttackConfig& cfg = {}, AttackTrace* trace = nullptr);

// CSV with columns kind,ciphertext_id,plaintext_id; characters are written
// as their integer codes.
void write_mappings_csv(const std::filesystem::path& path,
                        const MappingState& state);

} // namespace subleak

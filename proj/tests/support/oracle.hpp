#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "subleak/matrix.hpp"

namespace testsup {

// Pairs present in every attacker-consistent explanation of (B, A2).
struct ForcedPairs {
    std::vector<std::pair<std::int32_t, std::int32_t>> cols; // (es, s)
    std::vector<std::pair<std::int32_t, std::int32_t>> rows; // (token, char)
    std::size_t consistent_assignments = 0;
};

// Brute force over every injective assignment of known columns to B columns.
// With full_pattern, an assignment counts as consistent only when some
// perfect token/character matching reproduces the assigned bit patterns
// exactly (padding rows absorb never-seen tokens); forced rows are the edges
// common to all perfect matchings of all consistent assignments. Without it,
// consistency is only column-sum plus pairwise co-occurrence equality (the
// weaker notion), and no row pairs are derived. Instances must have at most
// 64 rows and few columns; everything is exhaustive.
ForcedPairs enumerate_forced(const subleak::IncidenceMatrix& B,
                             const subleak::IncidenceMatrix& A2,
                             bool full_pattern);

} // namespace testsup

#pragma once

#include <cstdint>
#include <vector>

#include "subleak/matrix.hpp"
#include "subleak/suffix_tree.hpp"

namespace subleak {

// What the server observes when the demo queries (the strings themselves)
// are searched against the tree. prefix_matrix is L1, leaf_matrix is L2;
// reduce_to_incidence is the unified form the attack actually consumes.
struct LeakageProfile {
    IncidenceMatrix prefix_matrix;
    IncidenceMatrix leaf_matrix;
    std::vector<std::int32_t> leaf_permutation;
};

// L1. Columns are the prefix nodes (root children) retrieved by the last
// query, labeled by their first token, ascending; rows are the queries.
// Entry (i,j) = 1 iff query i's substring search walks through that child,
// i.e. the query contains the token.
IncidenceMatrix emit_prefix_leakage(const SuffixTree& tree,
                                    const std::vector<EncryptedString>& queries);

// L2. Columns are all leaves in creation order but labeled with permuted
// 1-based ids; rows are queries. A query retrieves a leaf iff the leaf's
// suffix starts with one of the query's tokens (every single-token substring
// is searched). perm must be a permutation of 1..leaf_count.
IncidenceMatrix emit_leaf_leakage_with(const SuffixTree& tree,
                                       const std::vector<EncryptedString>& queries,
                                       const std::vector<std::int32_t>& perm);

// Same with a seeded random permutation.
IncidenceMatrix emit_leaf_leakage(const SuffixTree& tree,
                                  const std::vector<EncryptedString>& queries,
                                  std::uint64_t seed);

LeakageProfile emit_leakage(const SuffixTree& tree,
                            const std::vector<EncryptedString>& queries,
                            std::uint64_t seed);

} // namespace subleak

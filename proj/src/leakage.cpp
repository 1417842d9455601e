#include "subleak/leakage.hpp"

#include <algorithm>

#include "subleak/error.hpp"
#include "subleak/rng.hpp"

namespace subleak {

namespace {

bool contains_token(const EncryptedString& q, std::int32_t token) {
    return std::binary_search(q.tokenset.begin(), q.tokenset.end(), token);
}

} // namespace

IncidenceMatrix emit_prefix_leakage(const SuffixTree& tree,
                                    const std::vector<EncryptedString>& queries) {
    require_data(!queries.empty(), "leakage: no queries");

    // Prefix nodes touched by the last query, in token order.
    const auto& last = queries.back();
    std::vector<std::int32_t> node_tokens;
    for (std::int32_t tok : last.tokenset)
        if (tree.child_with(SuffixTree::kRoot, tok) >= 0)
            node_tokens.push_back(tok);

    IncidenceMatrix l1;
    l1.col_labels = node_tokens;
    for (const auto& q : queries) l1.row_labels.push_back(q.id);
    l1.bits = BitMatrix(queries.size(), node_tokens.size());
    for (std::size_t i = 0; i < queries.size(); ++i)
        for (std::size_t j = 0; j < node_tokens.size(); ++j)
            if (contains_token(queries[i], node_tokens[j]))
                l1.bits.set(i, j);
    return l1;
}

IncidenceMatrix emit_leaf_leakage_with(const SuffixTree& tree,
                                       const std::vector<EncryptedString>& queries,
                                       const std::vector<std::int32_t>& perm) {
    require_data(!queries.empty(), "leakage: no queries");
    const auto& leaves = tree.leaves();
    require_data(perm.size() == leaves.size(),
                 "leakage: permutation size mismatch");
    {
        std::vector<std::int32_t> check(perm);
        std::sort(check.begin(), check.end());
        for (std::size_t i = 0; i < check.size(); ++i)
            require_data(check[i] == static_cast<std::int32_t>(i) + 1,
                         "leakage: not a permutation of 1..leaf count");
    }

    // First token of each leaf's suffix, resolved through its occurrence.
    std::vector<std::int32_t> first_tokens;
    first_tokens.reserve(leaves.size());
    for (std::int32_t leaf : leaves) {
        const auto& occ = tree.node(leaf).occurrences;
        require(occ.size() == 1, "leakage: leaf without unique occurrence");
        auto path = tree.path_label(leaf);
        require(!path.empty(), "leakage: leaf with empty path");
        first_tokens.push_back(path[0]);
    }

    IncidenceMatrix l2;
    l2.col_labels = perm;
    for (const auto& q : queries) l2.row_labels.push_back(q.id);
    l2.bits = BitMatrix(queries.size(), leaves.size());
    for (std::size_t i = 0; i < queries.size(); ++i)
        for (std::size_t j = 0; j < leaves.size(); ++j)
            if (contains_token(queries[i], first_tokens[j]))
                l2.bits.set(i, j);
    return l2;
}

IncidenceMatrix emit_leaf_leakage(const SuffixTree& tree,
                                  const std::vector<EncryptedString>& queries,
                                  std::uint64_t seed) {
    std::vector<std::int32_t> perm(tree.leaves().size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = static_cast<std::int32_t>(i) + 1;
    Rng rng(seed);
    rng.shuffle(perm);
    return emit_leaf_leakage_with(tree, queries, perm);
}

LeakageProfile emit_leakage(const SuffixTree& tree,
                            const std::vector<EncryptedString>& queries,
                            std::uint64_t seed) {
    LeakageProfile profile;
    profile.prefix_matrix = emit_prefix_leakage(tree, queries);
    std::vector<std::int32_t> perm(tree.leaves().size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = static_cast<std::int32_t>(i) + 1;
    Rng rng(seed);
    rng.shuffle(perm);
    profile.leaf_permutation = perm;
    profile.leaf_matrix = emit_leaf_leakage_with(tree, queries, perm);
    return profile;
}

} // namespace subleak

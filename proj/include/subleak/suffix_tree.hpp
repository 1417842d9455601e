#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "subleak/sse.hpp"

namespace subleak {

// Generalized suffix tree over encrypted strings, built by naive quadratic
// insertion. Every suffix is extended with a per-string terminator token
// (negative, so disjoint from real tokens in [100,999]); that guarantees one
// leaf per string position even when a suffix is a prefix of another one.
// Terminators never appear in leakage or incidence output.
struct SuffixTreeNode {
    std::int32_t parent = -1;
    // Edge label into seqs_[edge_string], empty for the root.
    std::int32_t edge_string = -1;
    std::int32_t edge_start = 0;
    std::int32_t edge_len = 0;
    // (first token, child node id), sorted by token.
    std::vector<std::pair<std::int32_t, std::int32_t>> children;
    // (string id, start position) of every suffix passing through, sorted.
    std::vector<std::pair<std::int32_t, std::int32_t>> occurrences;

    bool is_leaf() const { return children.empty(); }
};

class SuffixTree {
public:
    static constexpr std::int32_t kRoot = 0;

    std::size_t node_count() const { return nodes_.size(); }
    const SuffixTreeNode& node(std::int32_t id) const { return nodes_[id]; }

    // Leaf node ids in creation order.
    const std::vector<std::int32_t>& leaves() const { return leaves_; }

    std::span<const std::int32_t> label(std::int32_t id) const;

    // Concatenated edge labels from the root (terminator included if present).
    std::vector<std::int32_t> path_label(std::int32_t id) const;

    // Child reached by an edge starting with the token, or -1.
    std::int32_t child_with(std::int32_t id, std::int32_t token) const;

    static bool is_terminator(std::int32_t token) { return token < 0; }

    friend SuffixTree build_suffix_tree(const std::vector<EncryptedString>&);

private:
    std::vector<std::vector<std::int32_t>> seqs_; // tokens + terminator
    std::vector<std::int32_t> seq_ids_;           // es id per sequence
    std::vector<SuffixTreeNode> nodes_;
    std::vector<std::int32_t> leaves_;
};

SuffixTree build_suffix_tree(const std::vector<EncryptedString>& strings);

// Tokens along the root path to the leaf's parent plus the first token of the
// leaf edge. A leading terminator on the leaf edge contributes nothing (the
// suffix ends exactly at the parent).
std::vector<std::int32_t> init_path(const SuffixTree& tree, std::int32_t leaf);

// Indented debugging dump, one node per line.
void dump_tree(std::ostream& out, const SuffixTree& tree);

} // namespace subleak

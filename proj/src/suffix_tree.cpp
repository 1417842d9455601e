#include "subleak/suffix_tree.hpp"

#include <algorithm>
#include <ostream>

#include "subleak/error.hpp"

namespace subleak {

namespace {

// Insert (token, child) keeping children sorted by token.
void link_child(SuffixTreeNode& parent, std::int32_t token, std::int32_t child) {
    auto it = std::lower_bound(
        parent.children.begin(), parent.children.end(), token,
        [](const auto& e, std::int32_t t) { return e.first < t; });
    require(it == parent.children.end() || it->first != token,
            "suffix tree: duplicate first token under one node");
    parent.children.insert(it, {token, child});
}

} // namespace

std::span<const std::int32_t> SuffixTree::label(std::int32_t id) const {
    const SuffixTreeNode& n = nodes_[id];
    if (n.edge_string < 0) return {};
    return {seqs_[n.edge_string].data() + n.edge_start,
            static_cast<std::size_t>(n.edge_len)};
}

std::vector<std::int32_t> SuffixTree::path_label(std::int32_t id) const {
    std::vector<std::int32_t> parts;
    for (std::int32_t cur = id; cur != kRoot; cur = nodes_[cur].parent) {
        auto lab = label(cur);
        parts.insert(parts.end(), lab.rbegin(), lab.rend());
    }
    std::reverse(parts.begin(), parts.end());
    return parts;
}

std::int32_t SuffixTree::child_with(std::int32_t id, std::int32_t token) const {
    const auto& kids = nodes_[id].children;
    auto it = std::lower_bound(
        kids.begin(), kids.end(), token,
        [](const auto& e, std::int32_t t) { return e.first < t; });
    if (it == kids.end() || it->first != token) return -1;
    return it->second;
}

SuffixTree build_suffix_tree(const std::vector<EncryptedString>& strings) {
    require_data(!strings.empty(), "suffix tree: no input strings");

    SuffixTree tree;
    tree.nodes_.emplace_back(); // root

    for (std::size_t s = 0; s < strings.size(); ++s) {
        const auto& es = strings[s];
        require_data(!es.tokens.empty(), "suffix tree: empty string");
        std::vector<std::int32_t> seq = es.tokens;
        seq.push_back(-static_cast<std::int32_t>(s) - 1); // unique terminator
        tree.seqs_.push_back(std::move(seq));
        tree.seq_ids_.push_back(es.id);
        const auto& owned = tree.seqs_.back();
        const auto sid = static_cast<std::int32_t>(s);

        // One suffix per real string position; the bare terminator is not
        // inserted on its own.
        for (std::int32_t pos = 0;
             pos < static_cast<std::int32_t>(owned.size()) - 1; ++pos) {
            std::int32_t node = SuffixTree::kRoot;
            std::int32_t at = pos; // next unmatched position in owned
            for (;;) {
                std::int32_t next = tree.child_with(node, owned[at]);
                if (next < 0) {
                    // New leaf takes the whole remaining suffix.
                    auto leaf = static_cast<std::int32_t>(tree.nodes_.size());
                    SuffixTreeNode ln;
                    ln.parent = node;
                    ln.edge_string = sid;
                    ln.edge_start = at;
                    ln.edge_len = static_cast<std::int32_t>(owned.size()) - at;
                    ln.occurrences = {{es.id, pos}};
                    tree.nodes_.push_back(std::move(ln));
                    link_child(tree.nodes_[node], owned[at], leaf);
                    tree.leaves_.push_back(leaf);
                    break;
                }
                // Walk the edge as far as it matches.
                const auto& edge_seq = tree.seqs_[tree.nodes_[next].edge_string];
                const std::int32_t estart = tree.nodes_[next].edge_start;
                const std::int32_t elen = tree.nodes_[next].edge_len;
                std::int32_t matched = 0;
                while (matched < elen &&
                       at + matched < static_cast<std::int32_t>(owned.size()) &&
                       edge_seq[estart + matched] == owned[at + matched])
                    ++matched;
                if (matched == elen) {
                    node = next;
                    at += matched;
                    continue; // descend
                }
                // Split the edge at the mismatch. The terminator makes a full
                // suffix-on-edge match impossible, so matched < suffix rest.
                auto mid = static_cast<std::int32_t>(tree.nodes_.size());
                SuffixTreeNode mn;
                mn.parent = node;
                mn.edge_string = tree.nodes_[next].edge_string;
                mn.edge_start = estart;
                mn.edge_len = matched;
                tree.nodes_.push_back(std::move(mn));

                auto& parent_children = tree.nodes_[node].children;
                for (auto& e : parent_children)
                    if (e.second == next) { e.second = mid; break; }

                tree.nodes_[next].parent = mid;
                tree.nodes_[next].edge_start = estart + matched;
                tree.nodes_[next].edge_len = elen - matched;
                link_child(tree.nodes_[mid], edge_seq[estart + matched], next);

                auto leaf = static_cast<std::int32_t>(tree.nodes_.size());
                SuffixTreeNode ln;
                ln.parent = mid;
                ln.edge_string = sid;
                ln.edge_start = at + matched;
                ln.edge_len = static_cast<std::int32_t>(owned.size()) - at - matched;
                ln.occurrences = {{es.id, pos}};
                tree.nodes_.push_back(std::move(ln));
                link_child(tree.nodes_[mid], owned[at + matched], leaf);
                tree.leaves_.push_back(leaf);
                break;
            }
        }
    }

    // Occurrence lists accumulate bottom-up: every suffix below a node passes
    // through it. Children ids always exceed parents except across edge
    // splits, so do an explicit post-order.
    std::vector<std::int32_t> order;
    order.reserve(tree.nodes_.size());
    std::vector<std::int32_t> stack = {SuffixTree::kRoot};
    while (!stack.empty()) {
        std::int32_t id = stack.back();
        stack.pop_back();
        order.push_back(id);
        for (const auto& [tok, child] : tree.nodes_[id].children)
            stack.push_back(child);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto& n = tree.nodes_[*it];
        for (const auto& [tok, child] : n.children) {
            const auto& occ = tree.nodes_[child].occurrences;
            n.occurrences.insert(n.occurrences.end(), occ.begin(), occ.end());
        }
        std::sort(n.occurrences.begin(), n.occurrences.end());
    }
    return tree;
}

std::vector<std::int32_t> init_path(const SuffixTree& tree, std::int32_t leaf) {
    require_data(leaf >= 0 && leaf < static_cast<std::int32_t>(tree.node_count()),
                 "init_path: bad node id");
    require_data(tree.node(leaf).is_leaf(), "init_path: node is not a leaf");

    std::vector<std::int32_t> path = tree.path_label(tree.node(leaf).parent);
    auto edge = tree.label(leaf);
    require(!edge.empty(), "init_path: leaf with empty edge");
    if (!SuffixTree::is_terminator(edge[0])) path.push_back(edge[0]);
    return path;
}

void dump_tree(std::ostream& out, const SuffixTree& tree) {
    struct Frame { std::int32_t id; int depth; };
    std::vector<Frame> stack = {{SuffixTree::kRoot, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const auto& n = tree.node(id);
        for (int i = 0; i < depth; ++i) out << "  ";
        if (id == SuffixTree::kRoot) {
            out << "(root)";
        } else {
            auto lab = tree.label(id);
            out << '[';
            for (std::size_t i = 0; i < lab.size(); ++i) {
                if (i) out << ' ';
                if (SuffixTree::is_terminator(lab[i])) out << '$';
                else out << lab[i];
            }
            out << ']';
        }
        if (n.is_leaf()) {
            out << " leaf";
            for (const auto& [sid, pos] : n.occurrences)
                out << " (" << sid << ',' << pos << ')';
        }
        out << '\n';
        // Reverse push keeps the dump in child token order.
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
            stack.push_back({it->second, depth + 1});
    }
}

} // namespace subleak

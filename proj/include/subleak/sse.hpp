#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "subleak/corpus.hpp"
#include "subleak/matrix.hpp"

namespace subleak {

// The simulated key: a seeded bijection from alphabet characters to distinct
// three-digit integer tokens in [100, 999].
class TokenAlphabet {
public:
    TokenAlphabet() { forward_.fill(kNoToken); }

    static constexpr std::int32_t kNoToken = -1;

    std::int32_t forward(char c) const {
        std::int32_t t = forward_[static_cast<unsigned char>(c)];
        require_data(t != kNoToken,
                     std::string("key: character outside key domain: ") + c);
        return t;
    }

    char inverse(std::int32_t token) const {
        auto it = inverse_.find(token);
        require_data(it != inverse_.end(), "key: unknown token");
        return it->second;
    }

    bool contains(char c) const {
        return forward_[static_cast<unsigned char>(c)] != kNoToken;
    }

    std::size_t size() const { return inverse_.size(); }

    // Token values ascending.
    std::vector<std::int32_t> tokens() const {
        std::vector<std::int32_t> out;
        out.reserve(inverse_.size());
        for (const auto& [t, c] : inverse_) out.push_back(t);
        return out;
    }

    std::uint64_t seed() const { return seed_; }

    friend TokenAlphabet gen_key(const std::string& alphabet, std::uint64_t seed);

private:
    std::array<std::int32_t, 256> forward_{};
    std::map<std::int32_t, char> inverse_;
    std::uint64_t seed_ = 0;
};

struct EncryptedString {
    std::int32_t id = 0;
    std::vector<std::int32_t> tokens;
    std::vector<std::int32_t> tokenset; // distinct tokens, ascending
};

TokenAlphabet gen_key(const std::string& alphabet, std::uint64_t seed);

EncryptedString encrypt_string(const StringRecord& s, const TokenAlphabet& key);

// Length of the longest common prefix.
std::size_t char_eq(std::string_view a, std::string_view b);

// m x n token-by-string incidence matrix B: bits[i][j] = 1 iff string j
// contains token_universe[i]. Row labels are tokens, column labels es ids.
IncidenceMatrix reduce_to_incidence(const std::vector<EncryptedString>& strings,
                                    const std::vector<std::int32_t>& token_universe);

} // namespace subleak

#include "subleak/sse.hpp"

#include <algorithm>

#include "subleak/error.hpp"
#include "subleak/rng.hpp"

namespace subleak {

TokenAlphabet gen_key(const std::string& alphabet, std::uint64_t seed) {
    require_data(alphabet.size() <= 900,
                 "key: alphabet exceeds the three-digit token space");
    require_data(!alphabet.empty(), "key: empty alphabet");

    Rng rng(seed);
    // Distinct values from [100, 999] by partial shuffle of the token space.
    std::vector<std::size_t> offsets = rng.sample_indices(900, alphabet.size());

    TokenAlphabet key;
    key.seed_ = seed;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const auto token = static_cast<std::int32_t>(100 + offsets[i]);
        const auto uc = static_cast<unsigned char>(alphabet[i]);
        require(key.forward_[uc] == TokenAlphabet::kNoToken,
                "key: duplicate character in alphabet");
        key.forward_[uc] = token;
        key.inverse_[token] = alphabet[i];
    }
    return key;
}

EncryptedString encrypt_string(const StringRecord& s, const TokenAlphabet& key) {
    require_data(!s.text.empty(), "encrypt: empty string");
    EncryptedString es;
    es.id = s.id;
    es.tokens.reserve(s.text.size());
    for (char c : s.text) es.tokens.push_back(key.forward(c));
    es.tokenset = es.tokens;
    std::sort(es.tokenset.begin(), es.tokenset.end());
    es.tokenset.erase(std::unique(es.tokenset.begin(), es.tokenset.end()),
                      es.tokenset.end());
    return es;
}

std::size_t char_eq(std::string_view a, std::string_view b) {
    const std::size_t limit = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < limit && a[i] == b[i]) ++i;
    return i;
}

IncidenceMatrix reduce_to_incidence(const std::vector<EncryptedString>& strings,
                                    const std::vector<std::int32_t>& token_universe) {
    std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>> cols;
    cols.reserve(strings.size());
    for (const auto& es : strings) cols.emplace_back(es.id, es.tokenset);
    return incidence_from_items(token_universe, cols);
}

} // namespace subleak

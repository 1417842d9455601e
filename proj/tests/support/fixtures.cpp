#include "support/fixtures.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "subleak/error.hpp"

namespace testsup {

using namespace subleak;

Corpus corpus_from_texts(const std::vector<std::string>& texts) {
    std::set<std::string> seen;
    Corpus c;
    std::set<char> alpha;
    for (const auto& t : texts) {
        require(seen.insert(t).second, "fixture corpus: duplicate text");
        StringRecord rec;
        rec.id = static_cast<std::int32_t>(c.strings.size());
        rec.text = t;
        rec.charset = charset_of(t);
        alpha.insert(rec.charset.begin(), rec.charset.end());
        c.strings.push_back(std::move(rec));
    }
    c.alphabet.assign(alpha.begin(), alpha.end());
    return c;
}

Corpus random_corpus(Rng& rng, std::size_t n_strings, std::size_t alphabet_size,
                     std::size_t min_len, std::size_t max_len) {
    require(alphabet_size >= 1 && alphabet_size <= 94, "fixture: bad alphabet");
    std::string alpha;
    for (std::size_t i = 0; i < alphabet_size; ++i)
        alpha += static_cast<char>(33 + i);

    std::set<std::string> seen;
    std::vector<std::string> texts;
    std::size_t guard = 0;
    while (texts.size() < n_strings) {
        require(++guard < 1000000, "fixture: cannot draw enough distinct texts");
        auto len = static_cast<std::size_t>(rng.next_in(
            static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
        std::string t;
        for (std::size_t i = 0; i < len; ++i)
            t += alpha[rng.next_below(alpha.size())];
        if (seen.insert(t).second) texts.push_back(std::move(t));
    }
    return corpus_from_texts(texts);
}

std::vector<std::int32_t> random_known_ids(Rng& rng, std::size_t n,
                                           std::size_t k) {
    std::vector<std::size_t> picked = rng.sample_indices(n, k);
    std::sort(picked.begin(), picked.end());
    std::vector<std::int32_t> out;
    out.reserve(k);
    for (std::size_t p : picked) out.push_back(static_cast<std::int32_t>(p));
    return out;
}

std::int32_t Instance::es_of(std::int32_t s) const {
    for (const auto& [es, sid] : truth.col_es_to_s)
        if (sid == s) return es;
    require(false, "fixture: string id missing from ground truth");
    return -1;
}

Instance make_instance(const Corpus& corpus, std::vector<std::int32_t> known_ids,
                       std::uint64_t seed, std::uint64_t shuffle_seed) {
    Instance ins;
    ins.corpus = corpus;
    std::sort(known_ids.begin(), known_ids.end());
    ins.known_ids = std::move(known_ids);
    ins.key = gen_key(corpus.alphabet, seed);

    const std::size_t n = corpus.n();
    std::vector<EncryptedString> enc;
    enc.reserve(n);
    for (const auto& rec : corpus.strings)
        enc.push_back(encrypt_string(rec, ins.key));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng srng(shuffle_seed);
    srng.shuffle(order);

    std::vector<EncryptedString> shuffled;
    shuffled.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        EncryptedString es = enc[order[j]];
        es.id = static_cast<std::int32_t>(j);
        shuffled.push_back(std::move(es));
        ins.truth.col_es_to_s[static_cast<std::int32_t>(j)] =
            static_cast<std::int32_t>(order[j]);
    }
    for (char c : corpus.alphabet)
        ins.truth.row_token_to_char[ins.key.forward(c)] =
            static_cast<std::int32_t>(c);

    ins.B = reduce_to_incidence(shuffled, ins.key.tokens());

    std::set<char> known_alpha;
    for (std::int32_t id : ins.known_ids) {
        const auto& cs = corpus.strings[static_cast<std::size_t>(id)].charset;
        known_alpha.insert(cs.begin(), cs.end());
    }
    std::vector<std::int32_t> known_chars;
    for (char c : known_alpha) known_chars.push_back(static_cast<std::int32_t>(c));

    std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>> cols;
    for (std::int32_t id : ins.known_ids) {
        std::vector<std::int32_t> items;
        for (char c : corpus.strings[static_cast<std::size_t>(id)].charset)
            items.push_back(static_cast<std::int32_t>(c));
        cols.emplace_back(id, std::move(items));
    }
    ins.A2 = build_A_double_prime(incidence_from_items(known_chars, cols),
                                  corpus.m());
    ins.M = build_cooccurrence(ins.B);
    ins.M2 = build_cooccurrence(ins.A2);
    return ins;
}

} // namespace testsup

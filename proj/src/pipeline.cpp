#include "subleak/pipeline.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "subleak/error.hpp"
#include "subleak/rng.hpp"

namespace subleak {

namespace {

// Shared tail of both trial flavors: encrypt the target corpus, build the
// attacker-visible matrices, run the attack, attach ground truth.
TrialResult attack_target(Corpus target, KnowledgeSplit split,
                          std::uint64_t seed, const AttackConfig& cfg) {
    TrialResult out;
    out.key = gen_key(target.alphabet, derive_seed(seed, "key"));

    const std::size_t n = target.n();
    std::vector<EncryptedString> encrypted;
    encrypted.reserve(n);
    for (const auto& rec : target.strings)
        encrypted.push_back(encrypt_string(rec, out.key));

    // Present the ciphertexts in shuffled order under fresh ids.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng shuffle_rng(derive_seed(seed, "shuffle"));
    shuffle_rng.shuffle(order);

    std::vector<EncryptedString> shuffled;
    shuffled.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        EncryptedString es = encrypted[order[j]];
        es.id = static_cast<std::int32_t>(j);
        shuffled.push_back(std::move(es));
    }

    out.B = reduce_to_incidence(shuffled, out.key.tokens());

    // Known-side incidence over the characters the known strings cover.
    std::vector<std::int32_t> known_chars;
    known_chars.reserve(split.known_alphabet.size());
    for (char c : split.known_alphabet)
        known_chars.push_back(static_cast<std::int32_t>(c));

    std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>> known_cols;
    known_cols.reserve(split.known_ids.size());
    for (std::int32_t id : split.known_ids) {
        const auto& rec = target.strings[static_cast<std::size_t>(id)];
        std::vector<std::int32_t> items;
        items.reserve(rec.charset.size());
        for (char c : rec.charset) items.push_back(static_cast<std::int32_t>(c));
        known_cols.emplace_back(id, std::move(items));
    }

    IncidenceMatrix a_prime = incidence_from_items(known_chars, known_cols);
    out.A2 = build_A_double_prime(a_prime, target.m());

    CooccurrenceMatrix M = build_cooccurrence(out.B);
    CooccurrenceMatrix M2 = build_cooccurrence(out.A2);

    out.state = run_attack(out.B, out.A2, M, M2, cfg, &out.trace);

    GroundTruth truth;
    for (std::size_t j = 0; j < n; ++j)
        truth.col_es_to_s[static_cast<std::int32_t>(j)] =
            static_cast<std::int32_t>(order[j]);
    for (char c : target.alphabet)
        truth.row_token_to_char[out.key.forward(c)] =
            static_cast<std::int32_t>(c);
    out.state.ground_truth = std::move(truth);

    out.target = std::move(target);
    out.split = std::move(split);
    return out;
}

} // namespace

TrialResult run_trial(const Corpus& corpus, double ratio, std::uint64_t seed,
                      const AttackConfig& cfg) {
    KnowledgeSplit split =
        split_knowledge(corpus, ratio, derive_seed(seed, "split"));
    return attack_target(corpus, std::move(split), seed, cfg);
}

TrialResult run_scale_trial(const Corpus& corpus, std::size_t scale,
                            std::size_t known_count, std::uint64_t seed,
                            const AttackConfig& cfg) {
    require_data(scale >= 1 && scale <= corpus.n(),
                 "scale trial: scale out of range");
    require_data(known_count <= scale,
                 "scale trial: known count exceeds scale");

    Rng known_rng(derive_seed(seed, "known"));
    std::vector<std::size_t> known_idx =
        known_rng.sample_indices(corpus.n(), known_count);
    std::sort(known_idx.begin(), known_idx.end());

    std::vector<std::size_t> rest;
    rest.reserve(corpus.n() - known_count);
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < corpus.n(); ++i) {
            if (k < known_idx.size() && known_idx[k] == i) {
                ++k;
            } else {
                rest.push_back(i);
            }
        }
    }

    Rng target_rng(derive_seed(seed, "target#" + std::to_string(scale)));
    std::vector<std::size_t> extra =
        target_rng.sample_indices(rest.size(), scale - known_count);

    std::vector<std::size_t> chosen = known_idx;
    for (std::size_t r : extra) chosen.push_back(rest[r]);
    std::sort(chosen.begin(), chosen.end());

    std::set<std::size_t> known_set(known_idx.begin(), known_idx.end());

    Corpus target;
    KnowledgeSplit split;
    split.ratio = static_cast<double>(known_count) / static_cast<double>(scale);
    std::set<char> alpha, known_alpha;
    target.strings.reserve(scale);
    for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
        const auto& src = corpus.strings[chosen[pos]];
        StringRecord rec;
        rec.id = static_cast<std::int32_t>(pos);
        rec.text = src.text;
        rec.charset = src.charset;
        alpha.insert(rec.charset.begin(), rec.charset.end());
        if (known_set.count(chosen[pos]) != 0) {
            split.known_ids.push_back(rec.id);
            known_alpha.insert(rec.charset.begin(), rec.charset.end());
        }
        target.strings.push_back(std::move(rec));
    }
    target.alphabet.assign(alpha.begin(), alpha.end());
    split.known_alphabet.assign(known_alpha.begin(), known_alpha.end());

    return attack_target(std::move(target), std::move(split), seed, cfg);
}

} // namespace subleak

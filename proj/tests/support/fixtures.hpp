#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subleak/attack.hpp"
#include "subleak/corpus.hpp"
#include "subleak/rng.hpp"
#include "subleak/sse.hpp"

namespace testsup {

// Corpus from explicit texts (must be distinct); ids follow the order given.
subleak::Corpus corpus_from_texts(const std::vector<std::string>& texts);

// n distinct random strings over the first alphabet_size printable symbols.
subleak::Corpus random_corpus(subleak::Rng& rng, std::size_t n_strings,
                              std::size_t alphabet_size,
                              std::size_t min_len = 1, std::size_t max_len = 12);

// sorted k-of-n id sample
std::vector<std::int32_t> random_known_ids(subleak::Rng& rng, std::size_t n,
                                           std::size_t k);

// One attacker-visible problem instance built directly from a corpus: keyed
// incidence matrix B with shuffled columns, extended known matrix A'', both
// co-occurrence tables, and the hidden correspondences.
struct Instance {
    subleak::TokenAlphabet key;
    subleak::Corpus corpus;
    std::vector<std::int32_t> known_ids;
    subleak::IncidenceMatrix B;
    subleak::IncidenceMatrix A2;
    subleak::CooccurrenceMatrix M;
    subleak::CooccurrenceMatrix M2;
    subleak::GroundTruth truth;

    // Ciphertext column label of a plaintext string id.
    std::int32_t es_of(std::int32_t s) const;
};

Instance make_instance(const subleak::Corpus& corpus,
                       std::vector<std::int32_t> known_ids, std::uint64_t seed,
                       std::uint64_t shuffle_seed);

inline Instance make_instance(const subleak::Corpus& corpus,
                              std::vector<std::int32_t> known_ids,
                              std::uint64_t seed) {
    return make_instance(corpus, std::move(known_ids), seed, seed + 101);
}

} // namespace testsup

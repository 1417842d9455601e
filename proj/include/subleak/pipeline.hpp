#pragma once

#include <cstdint>

#include "subleak/attack.hpp"
#include "subleak/corpus.hpp"
#include "subleak/sse.hpp"

namespace subleak {

// Everything one simulated attack produced. B's columns sit in a seeded
// shuffled order under fresh es ids 0..n-1, so column position carries no
// information about plaintext ids.
struct TrialResult {
    TokenAlphabet key;
    Corpus target;
    KnowledgeSplit split;
    IncidenceMatrix B;
    IncidenceMatrix A2;
    MappingState state; // ground_truth attached
    AttackTrace trace;
};

// Key generation, encryption, knowledge split, and the full attack at one
// knowledge ratio. Sub-streams are derived from seed by name ("key",
// "split", "shuffle") so each stage is reproducible on its own.
TrialResult run_trial(const Corpus& corpus, double ratio, std::uint64_t seed,
                      const AttackConfig& cfg = {});

// Scale variant: the known set is drawn once per seed, independent of scale,
// then embedded in a sample of `scale` target strings, so growing the target
// set is the only thing that changes across scales.
TrialResult run_scale_trial(const Corpus& corpus, std::size_t scale,
                            std::size_t known_count, std::uint64_t seed,
                            const AttackConfig& cfg = {});

} // namespace subleak

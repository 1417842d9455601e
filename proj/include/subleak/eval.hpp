#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subleak/attack.hpp"
#include "subleak/corpus.hpp"
#include "subleak/sse.hpp"

namespace subleak {

// Correct-recovery rates for one run (or seed-averaged, in which case the
// counts are means).
struct RecoveryReport {
    double knowledge_ratio = 0.0;
    std::size_t scale = 0; // target string count, for scale sweeps

    double alphabet_count = 0.0;
    double string_count = 0.0;
    double initial_path_count = 0.0;
    std::size_t alphabet_total = 0;
    std::size_t string_total = 0;
    std::size_t initial_path_total = 0;

    double alphabet_rate = 0.0;
    double string_rate = 0.0;
    double initial_path_rate = 0.0;
};

// Counts only pairs that match ground truth. Denominators: the alphabet rate
// is over all m characters, the string rate over the known_count strings the
// attack could possibly match, and the initial-path rate over all n strings
// (a string counts iff every distinct token of its encryption is correctly
// recovered in the row map, i.e. it is fully decodable).
RecoveryReport score(const MappingState& state, const Corpus& corpus,
                     const TokenAlphabet& key, std::size_t known_count);

// One averaged report per ratio, over the given seeds.
std::vector<RecoveryReport> sweep_knowledge(const Corpus& corpus,
                                            const std::vector<double>& ratios,
                                            const std::vector<std::uint64_t>& seeds,
                                            const AttackConfig& cfg = {});

// One averaged report per scale; every trial keeps the same known count and
// embeds a per-seed fixed known set into each scaled target sample.
std::vector<RecoveryReport> sweep_scale(const Corpus& corpus,
                                        const std::vector<std::size_t>& scales,
                                        std::size_t known_count,
                                        const std::vector<std::uint64_t>& seeds,
                                        const AttackConfig& cfg = {});

struct LogisticFit {
    double L = 0.0;         // asymptotic upper bound, fraction
    double k = 0.0;         // growth rate
    double x0 = 0.0;        // midpoint knowledge, percent
    double r_squared = 0.0;
};

struct FitResult {
    bool converged = false;
    LogisticFit fit;
    int iterations = 0;
    double rmse = 0.0;
    std::string message;
};

// Least-squares fit of rate = L / (1 + exp(-k (x - x0))) via
// Levenberg-Marquardt. Points are (knowledge percent, rate fraction);
// at least 4 required.
FitResult fit_logistic(const std::vector<std::pair<double, double>>& points);

} // namespace subleak

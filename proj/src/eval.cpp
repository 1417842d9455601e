#include "subleak/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "subleak/error.hpp"
#include "subleak/pipeline.hpp"

namespace subleak {

RecoveryReport score(const MappingState& state, const Corpus& corpus,
                     const TokenAlphabet& key, std::size_t known_count) {
    require(state.ground_truth.has_value(), "score: ground truth missing");
    const GroundTruth& truth = *state.ground_truth;

    RecoveryReport rep;
    rep.scale = corpus.n();
    rep.alphabet_total = key.size();
    rep.string_total = known_count;
    rep.initial_path_total = corpus.n();

    std::array<bool, 256> recovered{};
    for (const auto& [token, ch] : state.row_map()) {
        if (ch < 0 || ch > 255) continue;
        char c = static_cast<char>(ch);
        if (key.contains(c) && key.forward(c) == token) {
            rep.alphabet_count += 1.0;
            recovered[static_cast<unsigned char>(c)] = true;
        }
    }

    for (const auto& [es, s] : state.col_map()) {
        auto it = truth.col_es_to_s.find(es);
        if (it != truth.col_es_to_s.end() && it->second == s)
            rep.string_count += 1.0;
    }

    // A string's initial paths are recovered when every distinct character
    // of the string has its token correctly identified.
    for (const auto& rec : corpus.strings) {
        bool all = true;
        for (char c : rec.charset) {
            if (!recovered[static_cast<unsigned char>(c)]) {
                all = false;
                break;
            }
        }
        if (all && !rec.charset.empty()) rep.initial_path_count += 1.0;
    }

    auto rate = [](double count, std::size_t total) {
        return total == 0 ? 0.0 : count / static_cast<double>(total);
    };
    rep.alphabet_rate = rate(rep.alphabet_count, rep.alphabet_total);
    rep.string_rate = rate(rep.string_count, rep.string_total);
    rep.initial_path_rate = rate(rep.initial_path_count, rep.initial_path_total);
    return rep;
}

namespace {

RecoveryReport average(const std::vector<RecoveryReport>& reps) {
    require(!reps.empty(), "average: no reports");
    RecoveryReport out = reps.back(); // totals and scale from any one run
    out.alphabet_count = out.string_count = out.initial_path_count = 0.0;
    out.alphabet_rate = out.string_rate = out.initial_path_rate = 0.0;
    for (const auto& r : reps) {
        out.alphabet_count += r.alphabet_count;
        out.string_count += r.string_count;
        out.initial_path_count += r.initial_path_count;
        out.alphabet_rate += r.alphabet_rate;
        out.string_rate += r.string_rate;
        out.initial_path_rate += r.initial_path_rate;
    }
    const double s = static_cast<double>(reps.size());
    out.alphabet_count /= s;
    out.string_count /= s;
    out.initial_path_count /= s;
    out.alphabet_rate /= s;
    out.string_rate /= s;
    out.initial_path_rate /= s;
    return out;
}

} // namespace

std::vector<RecoveryReport> sweep_knowledge(const Corpus& corpus,
                                            const std::vector<double>& ratios,
                                            const std::vector<std::uint64_t>& seeds,
                                            const AttackConfig& cfg) {
    require_data(!ratios.empty(), "knowledge sweep: no ratios");
    require_data(!seeds.empty(), "knowledge sweep: no seeds");
    std::vector<RecoveryReport> out;
    out.reserve(ratios.size());
    for (double ratio : ratios) {
        std::vector<RecoveryReport> runs;
        runs.reserve(seeds.size());
        for (std::uint64_t seed : seeds) {
            TrialResult trial = run_trial(corpus, ratio, seed, cfg);
            runs.push_back(score(trial.state, trial.target, trial.key,
                                 trial.split.known_ids.size()));
        }
        RecoveryReport rep = average(runs);
        rep.knowledge_ratio = ratio;
        out.push_back(rep);
    }
    return out;
}

std::vector<RecoveryReport> sweep_scale(const Corpus& corpus,
                                        const std::vector<std::size_t>& scales,
                                        std::size_t known_count,
                                        const std::vector<std::uint64_t>& seeds,
                                        const AttackConfig& cfg) {
    require_data(!scales.empty(), "scale sweep: no scales");
    require_data(!seeds.empty(), "scale sweep: no seeds");
    std::vector<RecoveryReport> out;
    out.reserve(scales.size());
    for (std::size_t scale : scales) {
        std::vector<RecoveryReport> runs;
        runs.reserve(seeds.size());
        for (std::uint64_t seed : seeds) {
            TrialResult trial =
                run_scale_trial(corpus, scale, known_count, seed, cfg);
            runs.push_back(score(trial.state, trial.target, trial.key,
                                 known_count));
        }
        RecoveryReport rep = average(runs);
        rep.scale = scale;
        rep.knowledge_ratio =
            static_cast<double>(known_count) / static_cast<double>(scale);
        out.push_back(rep);
    }
    return out;
}

namespace {

double logistic(double x, double L, double k, double x0) {
    return L / (1.0 + std::exp(-k * (x - x0)));
}

bool in_bounds(double L, double k, double x0) {
    return L > 0.0 && L <= 1.05 && k > 0.0 && x0 > 0.0 && x0 < 100.0;
}

// Solve a 3x3 system in place by Gaussian elimination with partial pivoting.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& x) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 3; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return true;
}

double cost_at(const std::vector<std::pair<double, double>>& pts, double L,
               double k, double x0) {
    double c = 0.0;
    for (const auto& [x, y] : pts) {
        double r = y - logistic(x, L, k, x0);
        c += r * r;
    }
    return c;
}

} // namespace

FitResult fit_logistic(const std::vector<std::pair<double, double>>& points) {
    require_data(points.size() >= 4, "logistic fit: need at least 4 points");

    std::vector<std::pair<double, double>> pts = points;
    std::sort(pts.begin(), pts.end());

    FitResult res;

    double L = 0.0;
    for (const auto& [x, y] : pts) L = std::max(L, y);
    L = std::clamp(L, 1e-3, 1.05);
    double k = 0.1;

    // Midpoint guess: first crossing of L/2, linearly interpolated.
    double x0 = pts.front().first;
    const double half = L / 2.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].second >= half) {
            if (i == 0) {
                x0 = pts[0].first;
            } else {
                auto [xa, ya] = pts[i - 1];
                auto [xwb, yb] = pts[i];
                double t = (yb - ya) > 1e-12 ? (half - ya) / (yb - ya) : 0.5;
                x0 = xa + t * (xwb - xa);
            }
            break;
        }
        x0 = pts[i].first;
    }
    x0 = std::clamp(x0, 1e-3, 99.0);

    double lambda = 1e-3;
    double cost = cost_at(pts, L, k, x0);
    const int max_iter = 500;
    int iter = 0;
    bool converged = false;

    for (; iter < max_iter; ++iter) {
        // Normal equations from the Jacobian of L / (1 + exp(-k (x - x0))).
        std::array<std::array<double, 3>, 3> N{};
        std::array<double, 3> g{};
        for (const auto& [x, y] : pts) {
            double s = 1.0 / (1.0 + std::exp(-k * (x - x0)));
            double r = y - L * s;
            std::array<double, 3> j = {s, L * s * (1.0 - s) * (x - x0),
                                       -L * s * (1.0 - s) * k};
            for (int a = 0; a < 3; ++a) {
                g[a] += j[a] * r;
                for (int b = 0; b < 3; ++b) N[a][b] += j[a] * j[b];
            }
        }

        bool stepped = false;
        while (lambda < 1e12) {
            std::array<std::array<double, 3>, 3> A = N;
            for (int d = 0; d < 3; ++d)
                A[d][d] += lambda * std::max(N[d][d], 1e-12);
            std::array<double, 3> delta{};
            if (!solve3(A, g, delta)) {
                lambda *= 10.0;
                continue;
            }
            double Ln = L + delta[0];
            double kn = k + delta[1];
            double x0n = x0 + delta[2];
            if (!in_bounds(Ln, kn, x0n)) {
                lambda *= 10.0;
                continue;
            }
            double cn = cost_at(pts, Ln, kn, x0n);
            if (cn <= cost) {
                double step = std::abs(delta[0]) + std::abs(delta[1]) +
                              std::abs(delta[2]);
                double drop = cost - cn;
                L = Ln;
                k = kn;
                x0 = x0n;
                cost = cn;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (drop < 1e-14 * std::max(1.0, cost) || step < 1e-11)
                    converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (converged) break;
        if (!stepped) {
            // Damping exhausted: the current point is as good as it gets.
            converged = true;
            break;
        }
    }

    double mean = 0.0;
    for (const auto& [x, y] : pts) mean += y;
    mean /= static_cast<double>(pts.size());
    double sstot = 0.0;
    for (const auto& [x, y] : pts) sstot += (y - mean) * (y - mean);

    res.converged = converged;
    res.fit.L = L;
    res.fit.k = k;
    res.fit.x0 = x0;
    res.fit.r_squared =
        sstot < 1e-15 ? (cost < 1e-12 ? 1.0 : 0.0) : 1.0 - cost / sstot;
    res.iterations = iter;
    res.rmse = std::sqrt(cost / static_cast<double>(pts.size()));
    res.message = converged ? "converged" : "iteration limit reached";
    return res;
}

} // namespace subleak

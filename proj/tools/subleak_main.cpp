#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subleak/corpus.hpp"
#include "subleak/error.hpp"
#include "subleak/eval.hpp"
#include "subleak/io.hpp"
#include "subleak/pipeline.hpp"
#include "subleak/rng.hpp"
#include "subleak/sse.hpp"
#include "subleak/suffix_tree.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace subleak;

namespace {

struct CommonOpts {
    std::string corpus;
    std::string stopwords;
    std::size_t sample = 0;
    std::uint64_t seed = 1;
    std::string out = "out";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--corpus", o.corpus, "corpus file or directory");
    cmd->add_option("--stopwords", o.stopwords, "stop-word list, one per line");
    cmd->add_option("--sample", o.sample,
                    "sample this many strings after dedup (0 = keep all)");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output directory");
}

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

Corpus load_from_flags(const CommonOpts& o) {
    std::set<std::string> stop;
    if (!o.stopwords.empty()) stop = load_stopwords(o.stopwords);
    Corpus c = load_corpus_path(o.corpus, stop);
    if (o.sample > 0) {
        require_data(o.sample <= c.n(),
                     "sample: requested " + std::to_string(o.sample) +
                         " strings but the corpus has " + std::to_string(c.n()));
        if (o.sample < c.n()) c = sample(c, o.sample, derive_seed(o.seed, "sample"));
    }
    return c;
}

// --corpus wins when given; otherwise fall back to a prepared artifact
// under --out.
Corpus obtain_corpus(const CommonOpts& o) {
    if (!o.corpus.empty()) return load_from_flags(o);
    fs::path prepared = fs::path(o.out) / "prepared" / "strings.txt";
    require_data(fs::exists(prepared),
                 "no corpus: pass --corpus or run prepare into --out first");
    return load_corpus_path(prepared, {});
}

int cmd_prepare(const CommonOpts& o) {
    require_data(!o.corpus.empty(), "prepare: --corpus is required");
    Corpus c = load_from_flags(o);

    std::string lines;
    for (const auto& rec : c.strings) {
        lines += rec.text;
        lines += '\n';
    }
    fs::path dir = fs::path(o.out) / "prepared";
    write_text_atomic(dir / "strings.txt", lines);

    ordered_json manifest;
    manifest["source"] = o.corpus;
    manifest["stopwords"] = o.stopwords;
    manifest["sample"] = o.sample;
    manifest["seed"] = o.seed;
    manifest["strings"] = c.n();
    manifest["alphabet_size"] = c.m();
    manifest["alphabet"] = c.alphabet;
    write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "prepared " << c.n() << " strings, alphabet size " << c.m()
              << " -> " << (dir / "strings.txt").string() << "\n";
    return 0;
}

int cmd_simulate(const CommonOpts& o, const std::string& export_b,
                 const std::string& export_tree) {
    Corpus c = obtain_corpus(o);
    TokenAlphabet key = gen_key(c.alphabet, derive_seed(o.seed, "key"));
    std::vector<EncryptedString> enc;
    enc.reserve(c.n());
    for (const auto& rec : c.strings) enc.push_back(encrypt_string(rec, key));

    if (!export_b.empty()) {
        IncidenceMatrix B = reduce_to_incidence(enc, key.tokens());
        write_incidence_csv(export_b, B);
    }

    SuffixTree tree = build_suffix_tree(enc);
    if (!export_tree.empty()) {
        std::ostringstream os;
        dump_tree(os, tree);
        write_text_atomic(export_tree, os.str());
    }

    std::cout << "strings " << c.n() << ", alphabet size " << c.m()
              << ", tree nodes " << tree.node_count() << ", leaves "
              << tree.leaves().size() << "\n";
    return 0;
}

int cmd_attack(const CommonOpts& o, double knowledge, const AttackConfig& cfg) {
    require_data(knowledge >= 0.0 && knowledge <= 1.0,
                 "attack: --knowledge must be in [0,1]");
    Corpus c = obtain_corpus(o);
    TrialResult trial = run_trial(c, knowledge, o.seed, cfg);
    RecoveryReport rep = score(trial.state, trial.target, trial.key,
                               trial.split.known_ids.size());

    fs::path dir = fs::path(o.out) / "runs" / std::to_string(o.seed);
    write_mappings_csv(dir / "mappings.csv", trial.state);

    ordered_json r;
    r["seed"] = o.seed;
    r["knowledge"] = knowledge;
    r["strings"] = rep.string_total;
    r["known_strings"] = trial.split.known_ids.size();
    r["alphabet_size"] = rep.alphabet_total;
    r["max_rounds"] = cfg.max_rounds;
    r["row_zeroing"] = cfg.zero_matched_rows_in_step5;
    auto metric = [](double count, std::size_t total, double rate) {
        return ordered_json{
            {"count", count}, {"total", total}, {"rate_pct", 100.0 * rate}};
    };
    r["alphabet"] = metric(rep.alphabet_count, rep.alphabet_total, rep.alphabet_rate);
    r["string"] = metric(rep.string_count, rep.string_total, rep.string_rate);
    r["initial_path"] =
        metric(rep.initial_path_count, rep.initial_path_total, rep.initial_path_rate);
    ordered_json steps = ordered_json::array();
    for (const auto& ev : trial.trace.events)
        steps.push_back({{"round", ev.round},
                         {"step", ev.step},
                         {"added", ev.added},
                         {"cols_total", ev.cols_total},
                         {"rows_total", ev.rows_total}});
    r["trace"] = steps;
    write_text_atomic(dir / "report.json", r.dump(2) + "\n");

    std::cout << "alphabet " << fmt(100.0 * rep.alphabet_rate, 2) << "%, string "
              << fmt(100.0 * rep.string_rate, 2) << "%, initial path "
              << fmt(100.0 * rep.initial_path_rate, 2) << "% -> "
              << dir.string() << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& mode,
              const std::vector<double>& ratios,
              const std::vector<std::size_t>& scales,
              const std::vector<std::uint64_t>& seeds, std::size_t known_count,
              const AttackConfig& cfg) {
    Corpus c = obtain_corpus(o);
    fs::path dir = fs::path(o.out) / "sweeps" / mode;

    if (mode == "knowledge") {
        std::vector<RecoveryReport> reports = sweep_knowledge(c, ratios, seeds, cfg);

        std::string csv =
            "knowledge_pct,alphabet_count,alphabet_rate_pct,string_count,"
            "string_rate_pct,initial_path_count,initial_path_rate_pct\n";
        for (const auto& r : reports) {
            csv += fmt(100.0 * r.knowledge_ratio, 2);
            csv += "," + fmt(r.alphabet_count) + "," + fmt(100.0 * r.alphabet_rate);
            csv += "," + fmt(r.string_count) + "," + fmt(100.0 * r.string_rate);
            csv += "," + fmt(r.initial_path_count) + "," +
                   fmt(100.0 * r.initial_path_rate) + "\n";
        }
        write_text_atomic(dir / "knowledge.csv", csv);

        ordered_json fits;
        auto fit_one = [&](const char* name, auto rate_of) {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(reports.size());
            for (const auto& r : reports)
                pts.emplace_back(100.0 * r.knowledge_ratio, rate_of(r));
            if (pts.size() < 4) {
                fits[name] = "skipped: fewer than 4 sweep points";
                return;
            }
            FitResult f = fit_logistic(pts);
            fits[name] = ordered_json{{"L", f.fit.L},
                                      {"k", f.fit.k},
                                      {"x0", f.fit.x0},
                                      {"r_squared", f.fit.r_squared},
                                      {"converged", f.converged},
                                      {"iterations", f.iterations},
                                      {"rmse", f.rmse},
                                      {"message", f.message}};
        };
        fit_one("alphabet", [](const RecoveryReport& r) { return r.alphabet_rate; });
        fit_one("string", [](const RecoveryReport& r) { return r.string_rate; });
        fit_one("initial_path",
                [](const RecoveryReport& r) { return r.initial_path_rate; });
        write_text_atomic(dir / "fits.json", fits.dump(2) + "\n");

        std::cout << "wrote " << (dir / "knowledge.csv").string() << " and "
                  << (dir / "fits.json").string() << "\n";
        return 0;
    }

    // scale mode
    std::vector<RecoveryReport> reports =
        sweep_scale(c, scales, known_count, seeds, cfg);

    // Rate rows against scale columns, the shape scale studies are read in.
    std::string csv = "metric";
    for (const auto& r : reports) csv += "," + std::to_string(r.scale);
    csv += "\n";
    auto rate_row = [&](const char* name, auto rate_of) {
        csv += name;
        for (const auto& r : reports) csv += "," + fmt(100.0 * rate_of(r));
        csv += "\n";
    };
    rate_row("alphabet_rate_pct",
             [](const RecoveryReport& r) { return r.alphabet_rate; });
    rate_row("string_rate_pct",
             [](const RecoveryReport& r) { return r.string_rate; });
    rate_row("initial_path_rate_pct",
             [](const RecoveryReport& r) { return r.initial_path_rate; });
    write_text_atomic(dir / "scale.csv", csv);

    // Long form, one row per scale with counts and rates.
    std::string runs =
        "scale,known_count,alphabet_count,alphabet_rate_pct,string_count,"
        "string_rate_pct,initial_path_count,initial_path_rate_pct\n";
    for (const auto& r : reports) {
        runs += std::to_string(r.scale) + "," + std::to_string(known_count);
        runs += "," + fmt(r.alphabet_count) + "," + fmt(100.0 * r.alphabet_rate);
        runs += "," + fmt(r.string_count) + "," + fmt(100.0 * r.string_rate);
        runs += "," + fmt(r.initial_path_count) + "," +
                fmt(100.0 * r.initial_path_rate) + "\n";
    }
    write_text_atomic(dir / "runs.csv", runs);

    std::cout << "wrote " << (dir / "scale.csv").string() << " and "
              << (dir / "runs.csv").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"substring-SSE leakage simulation and matrix attack workbench"};
    app.require_subcommand(1);

    CommonOpts prep_o, sim_o, atk_o, swp_o;

    CLI::App* prep = app.add_subcommand(
        "prepare", "load, stop-word filter, dedup and optionally sample a corpus");
    add_common(prep, prep_o);

    CLI::App* sim = app.add_subcommand(
        "simulate", "encrypt the corpus and export index artifacts");
    add_common(sim, sim_o);
    std::string export_b, export_tree;
    sim->add_option("--export-b", export_b,
                    "write the token/string incidence matrix CSV here");
    sim->add_option("--export-tree", export_tree,
                    "write an indented suffix tree dump here");

    CLI::App* atk = app.add_subcommand(
        "attack", "run the five-step matrix attack at one knowledge ratio");
    atk->alias("run");
    add_common(atk, atk_o);
    double knowledge = 0.1;
    atk->add_option("--knowledge", knowledge,
                    "fraction of strings the adversary knows")
        ->required();
    int atk_rounds = 16;
    bool atk_nrz = false;
    atk->add_option("--max-rounds", atk_rounds, "round cap for steps 2-5");
    atk->add_flag("--no-row-zeroing", atk_nrz,
                  "disable matched-row zeroing in the residual step");

    CLI::App* swp = app.add_subcommand(
        "sweep", "averaged knowledge or scale sweep with curve fits");
    add_common(swp, swp_o);
    std::string mode;
    swp->add_option("--mode", mode, "knowledge or scale")
        ->required()
        ->check(CLI::IsMember({"knowledge", "scale"}));
    std::vector<double> ratios = {0.01, 0.05, 0.10, 0.20, 0.30,
                                  0.40, 0.50, 0.60, 1.00};
    std::vector<std::size_t> scales = {1000,  5000,  10000, 15000,
                                       20000, 25000, 30000};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::size_t known_count = 500;
    int swp_rounds = 16;
    bool swp_nrz = false;
    swp->add_option("--ratios", ratios, "knowledge ratios to sweep");
    swp->add_option("--scales", scales, "target string counts to sweep");
    swp->add_option("--seeds", seeds, "seeds to average over");
    swp->add_option("--known-count", known_count, "known strings per scale trial");
    swp->add_option("--max-rounds", swp_rounds, "round cap for steps 2-5");
    swp->add_flag("--no-row-zeroing", swp_nrz,
                  "disable matched-row zeroing in the residual step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (prep->parsed()) return cmd_prepare(prep_o);
        if (sim->parsed()) return cmd_simulate(sim_o, export_b, export_tree);
        if (atk->parsed()) {
            AttackConfig cfg;
            cfg.max_rounds = atk_rounds;
            cfg.zero_matched_rows_in_step5 = !atk_nrz;
            return cmd_attack(atk_o, knowledge, cfg);
        }
        AttackConfig cfg;
        cfg.max_rounds = swp_rounds;
        cfg.zero_matched_rows_in_step5 = !swp_nrz;
        return cmd_sweep(swp_o, mode, ratios, scales, seeds, known_count, cfg);
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

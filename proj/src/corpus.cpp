#include "subleak/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "subleak/error.hpp"
#include "subleak/rng.hpp"

namespace subleak {

std::string charset_of(const std::string& text) {
    std::string cs(text);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

Corpus load_corpus(std::istream& source, const std::set<std::string>& stopwords) {
    Corpus corpus;
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(source, line)) {
        std::istringstream words(line);
        std::string w;
        while (words >> w) {
            if (stopwords.count(w) || seen.count(w)) continue;
            seen.insert(w);
            StringRecord rec;
            rec.id = static_cast<std::int32_t>(corpus.strings.size());
            rec.text = w;
            rec.charset = charset_of(w);
            corpus.strings.push_back(std::move(rec));
        }
    }
    require_data(!corpus.strings.empty(),
                 "corpus: no strings survive stop-word filtering");

    std::string all;
    for (const auto& rec : corpus.strings) all += rec.charset;
    corpus.alphabet = charset_of(all);
    return corpus;
}

Corpus load_corpus_path(const std::filesystem::path& path,
                        const std::set<std::string>& stopwords) {
    namespace fs = std::filesystem;
    require_data(fs::exists(path), "corpus: path does not exist: " + path.string());

    std::ostringstream merged;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        require_data(!files.empty(),
                     "corpus: directory holds no files: " + path.string());
        for (const auto& f : files) {
            std::ifstream in(f);
            require_data(in.good(), "corpus: cannot open " + f.string());
            merged << in.rdbuf();
            merged << '\n';
        }
    } else {
        std::ifstream in(path);
        require_data(in.good(), "corpus: cannot open " + path.string());
        merged << in.rdbuf();
    }
    std::istringstream source(merged.str());
    return load_corpus(source, stopwords);
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    require_data(in.good(), "stopwords: cannot open " + path.string());
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

Corpus sample(const Corpus& corpus, std::size_t count, std::uint64_t seed) {
    require_data(count <= corpus.n(), "sample: count exceeds corpus size");
    require_data(count > 0, "sample: count must be positive");

    Rng rng(seed);
    std::vector<std::size_t> picked = rng.sample_indices(corpus.n(), count);

    Corpus out;
    out.strings.reserve(count);
    for (std::size_t i = 0; i < picked.size(); ++i) {
        StringRecord rec = corpus.strings[picked[i]];
        rec.id = static_cast<std::int32_t>(i);
        out.strings.push_back(std::move(rec));
    }
    std::string all;
    for (const auto& rec : out.strings) all += rec.charset;
    out.alphabet = charset_of(all);
    return out;
}

KnowledgeSplit split_knowledge(const Corpus& corpus, double ratio,
                               std::uint64_t seed) {
    require_data(ratio > 0.0 && ratio <= 1.0, "split: ratio must be in (0,1]");
    const auto n = corpus.n();
    const auto k = static_cast<std::size_t>(
        std::llround(ratio * static_cast<double>(n)));
    require_data(k <= n, "split: known count exceeds corpus size");

    Rng rng(seed);
    std::vector<std::size_t> picked = rng.sample_indices(n, k);
    std::sort(picked.begin(), picked.end());

    KnowledgeSplit split;
    split.ratio = ratio;
    split.known_ids.reserve(k);
    std::string all;
    for (std::size_t idx : picked) {
        split.known_ids.push_back(corpus.strings[idx].id);
        all += corpus.strings[idx].charset;
    }
    split.known_alphabet = charset_of(all);
    return split;
}

} // namespace subleak

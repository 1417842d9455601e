#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace subleak {

// One plaintext string. charset holds the distinct characters of text,
// sorted ascending.
struct StringRecord {
    std::int32_t id = 0;
    std::string text;
    std::string charset;
};

// Deduplicated string set S plus its character alphabet A (sorted ascending).
struct Corpus {
    std::vector<StringRecord> strings;
    std::string alphabet;

    std::size_t n() const { return strings.size(); }
    std::size_t m() const { return alphabet.size(); }
};

// The attacker's partial knowledge: which string ids are known and the
// characters those strings cover.
struct KnowledgeSplit {
    std::vector<std::int32_t> known_ids; // sorted ascending
    std::string known_alphabet;          // sorted ascending
    double ratio = 0.0;
};

std::string charset_of(const std::string& text);

// Whitespace-splits each line, drops stop words, dedups by exact text
// (first occurrence wins), computes the alphabet. Throws DataError if
// nothing survives.
Corpus load_corpus(std::istream& source, const std::set<std::string>& stopwords);

// path may be a file or a directory of files (read in sorted name order).
Corpus load_corpus_path(const std::filesystem::path& path,
                        const std::set<std::string>& stopwords);

// One stop word per line; blanks ignored.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

// Uniform sample without replacement; records re-indexed 0..count-1 and the
// alphabet recomputed for the sub-corpus.
Corpus sample(const Corpus& corpus, std::size_t count, std::uint64_t seed);

// round(ratio * n) known ids, uniform without replacement.
KnowledgeSplit split_knowledge(const Corpus& corpus, double ratio,
                               std::uint64_t seed);

} // namespace subleak

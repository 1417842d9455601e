#include "subleak/attack.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "subleak/error.hpp"
#include "subleak/io.hpp"

namespace subleak {

bool MappingState::add_col(std::int32_t es, std::int32_t s) {
    auto it = col_.find(es);
    if (it != col_.end()) {
        require(it->second == s, "mapping: conflicting (es,s) pair");
        return false;
    }
    require(col_inv_.count(s) == 0, "mapping: plaintext string already claimed");
    col_[es] = s;
    col_inv_[s] = es;
    return true;
}

bool MappingState::add_row(std::int32_t token, std::int32_t ch) {
    auto it = row_.find(token);
    if (it != row_.end()) {
        require(it->second == ch, "mapping: conflicting (t,a) pair");
        return false;
    }
    require(row_inv_.count(ch) == 0, "mapping: character already claimed");
    row_[token] = ch;
    row_inv_[ch] = token;
    return true;
}

namespace {

// Per-call view translating label-keyed mappings into matrix positions.
struct Ctx {
    const IncidenceMatrix& B;
    const IncidenceMatrix& A2;
    std::vector<char> bcol_mapped, acol_mapped, brow_mapped, arow_mapped;
    // Matched column pairs as (B pos, A2 pos), ordered by es label.
    std::vector<std::pair<std::size_t, std::size_t>> col_pairs;
    // Matched row pairs as (B pos, A2 pos), ordered by token.
    std::vector<std::pair<std::size_t, std::size_t>> row_pairs;

    Ctx(const IncidenceMatrix& b, const IncidenceMatrix& a2,
        const MappingState& state)
        : B(b), A2(a2),
          bcol_mapped(b.cols(), 0), acol_mapped(a2.cols(), 0),
          brow_mapped(b.rows(), 0), arow_mapped(a2.rows(), 0) {
        std::unordered_map<std::int32_t, std::size_t> bcol_of, acol_of,
            brow_of, arow_of;
        index(b.col_labels, bcol_of);
        index(a2.col_labels, acol_of);
        index(b.row_labels, brow_of);
        index(a2.row_labels, arow_of);
        for (const auto& [es, s] : state.col_map()) {
            auto bi = bcol_of.find(es);
            auto ai = acol_of.find(s);
            require(bi != bcol_of.end() && ai != acol_of.end(),
                    "attack: mapped column label missing from matrices");
            bcol_mapped[bi->second] = 1;
            acol_mapped[ai->second] = 1;
            col_pairs.emplace_back(bi->second, ai->second);
        }
        for (const auto& [t, a] : state.row_map()) {
            auto bi = brow_of.find(t);
            require(bi != brow_of.end(), "attack: mapped token missing from B");
            brow_mapped[bi->second] = 1;
            // The character row exists only if it was known; padding rows
            // can never be mapped, so a miss is an invariant violation.
            auto ai = arow_of.find(a);
            require(ai != arow_of.end(),
                    "attack: mapped character missing from known rows");
            arow_mapped[ai->second] = 1;
            row_pairs.emplace_back(bi->second, ai->second);
        }
    }

    static void index(const std::vector<std::int32_t>& labels,
                      std::unordered_map<std::int32_t, std::size_t>& out) {
        out.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto [it, fresh] = out.emplace(labels[i], i);
            require(fresh, "attack: duplicate matrix label");
        }
    }
};

using Pattern = std::vector<std::uint64_t>;

bool is_zero(const Pattern& p) {
    for (auto w : p) if (w) return false;
    return true;
}

// Bit patterns of every row over the given columns, bit index = column pair
// order. cols holds matrix column positions.
std::vector<Pattern> row_patterns(const BitMatrix& bits,
                                  const std::vector<std::size_t>& cols) {
    const std::size_t words = (cols.size() + 63) / 64;
    std::vector<Pattern> pats(bits.rows(), Pattern(words, 0));
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
        auto col = bits.col(cols[idx]);
        for (std::size_t w = 0; w < col.size(); ++w) {
            std::uint64_t bitsw = col[w];
            while (bitsw) {
                const auto r = w * 64 + static_cast<std::size_t>(
                                            std::countr_zero(bitsw));
                if (r >= bits.rows()) break;
                pats[r][idx / 64] |= 1ull << (idx % 64);
                bitsw &= bitsw - 1;
            }
        }
    }
    return pats;
}

// Bit patterns of every column over the given rows, bit index = row pair
// order.
std::vector<Pattern> col_patterns(const BitMatrix& bits,
                                  const std::vector<std::size_t>& rows) {
    const std::size_t words = (rows.size() + 63) / 64;
    std::vector<Pattern> pats(bits.cols(), Pattern(words, 0));
    for (std::size_t j = 0; j < bits.cols(); ++j)
        for (std::size_t idx = 0; idx < rows.size(); ++idx)
            if (bits.get(rows[idx], j))
                pats[j][idx / 64] |= 1ull << (idx % 64);
    return pats;
}

// index of each pattern in a sorted multiset view, for uniqueness counting.
std::vector<std::size_t> sorted_order(const std::vector<Pattern>& pats) {
    std::vector<std::size_t> order(pats.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pats[a] < pats[b];
    });
    return order;
}

// For each element, how many elements share its pattern.
std::vector<std::size_t> multiplicity(const std::vector<Pattern>& pats) {
    auto order = sorted_order(pats);
    std::vector<std::size_t> mult(pats.size(), 0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && pats[order[j]] == pats[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) mult[order[k]] = j - i;
        i = j;
    }
    return mult;
}

} // namespace

std::size_t step1_column_sum(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                             MappingState& state) {
    B.validate();
    A2.validate();
    Ctx ctx(B, A2, state);

    const auto bsums = B.bits.col_sums();
    const auto asums = A2.bits.col_sums();

    std::unordered_map<std::uint32_t, std::size_t> bcount;
    for (auto s : bsums) ++bcount[s];
    std::unordered_map<std::uint32_t, std::vector<std::size_t>> acols;
    for (std::size_t j = 0; j < asums.size(); ++j) acols[asums[j]].push_back(j);

    std::size_t added = 0;
    for (std::size_t k = 0; k < bsums.size(); ++k) {
        if (ctx.bcol_mapped[k] || bcount[bsums[k]] != 1) continue;
        auto it = acols.find(bsums[k]);
        if (it == acols.end() || it->second.size() != 1) continue;
        const std::size_t kp = it->second[0];
        if (ctx.acol_mapped[kp]) continue;
        if (state.add_col(B.col_labels[k], A2.col_labels[kp])) ++added;
    }
    return added;
}

std::size_t step2_occurrence(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                             const CooccurrenceMatrix& M,
                             const CooccurrenceMatrix& M2, MappingState& state) {
    B.validate();
    A2.validate();
    require(M.labels() == B.col_labels && M2.labels() == A2.col_labels,
            "attack: co-occurrence labels out of sync with matrices");

    const auto bsums = B.bits.col_sums();
    const auto asums = A2.bits.col_sums();
    std::unordered_map<std::uint32_t, std::vector<std::size_t>> bbucket;
    for (std::size_t j = 0; j < bsums.size(); ++j) bbucket[bsums[j]].push_back(j);

    std::size_t added = 0;
    for (;;) {
        Ctx ctx(B, A2, state);
        std::vector<std::pair<std::size_t, std::size_t>> fresh;
        for (std::size_t jp = 0; jp < A2.cols(); ++jp) {
            if (ctx.acol_mapped[jp]) continue;
            auto bit = bbucket.find(asums[jp]);
            if (bit == bbucket.end()) continue;

            std::size_t survivor = 0, survivors = 0;
            for (std::size_t j : bit->second) {
                if (ctx.bcol_mapped[j]) continue;
                bool ok = true;
                for (const auto& [k, kp] : ctx.col_pairs) {
                    if (M.count(j, k) != M2.count(jp, kp)) { ok = false; break; }
                }
                if (!ok) continue;
                survivor = j;
                if (++survivors > 1) break;
            }
            if (survivors == 1) fresh.emplace_back(survivor, jp);
        }
        if (fresh.empty()) break;
        for (const auto& [j, jp] : fresh)
            if (state.add_col(B.col_labels[j], A2.col_labels[jp])) ++added;
    }
    return added;
}

std::size_t step3_unique_row(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                             MappingState& state) {
    B.validate();
    A2.validate();
    Ctx ctx(B, A2, state);
    if (ctx.col_pairs.empty()) return 0;

    std::vector<std::size_t> bcols, acols;
    for (const auto& [b, a] : ctx.col_pairs) {
        bcols.push_back(b);
        acols.push_back(a);
    }
    const auto bpats = row_patterns(B.bits, bcols);
    const auto apats = row_patterns(A2.bits, acols);
    const auto bmult = multiplicity(bpats);

    // pattern -> known rows carrying it
    std::map<Pattern, std::vector<std::size_t>> arows;
    for (std::size_t i = 0; i < apats.size(); ++i)
        arows[apats[i]].push_back(i);

    std::size_t added = 0;
    for (std::size_t i = 0; i < bpats.size(); ++i) {
        if (ctx.brow_mapped[i] || bmult[i] != 1 || is_zero(bpats[i])) continue;
        auto it = arows.find(bpats[i]);
        if (it == arows.end() || it->second.size() != 1) continue;
        const std::size_t ip = it->second[0];
        if (ctx.arow_mapped[ip]) continue;
        if (state.add_row(B.row_labels[i], A2.row_labels[ip])) ++added;
    }
    return added;
}

std::size_t step4_unique_column(const IncidenceMatrix& B,
                                const IncidenceMatrix& A2, MappingState& state) {
    B.validate();
    A2.validate();
    Ctx ctx(B, A2, state);
    if (ctx.row_pairs.empty()) return 0;

    std::vector<std::size_t> brows, arows;
    for (const auto& [b, a] : ctx.row_pairs) {
        brows.push_back(b);
        arows.push_back(a);
    }
    const auto bpats = col_patterns(B.bits, brows);
    const auto apats = col_patterns(A2.bits, arows);
    const auto bmult = multiplicity(bpats);

    std::map<Pattern, std::vector<std::size_t>> acols;
    for (std::size_t j = 0; j < apats.size(); ++j)
        if (!ctx.acol_mapped[j]) acols[apats[j]].push_back(j);

    std::size_t added = 0;
    for (std::size_t j = 0; j < bpats.size(); ++j) {
        if (ctx.bcol_mapped[j] || bmult[j] != 1 || is_zero(bpats[j])) continue;
        auto it = acols.find(bpats[j]);
        if (it == acols.end() || it->second.size() != 1) continue;
        if (state.add_col(B.col_labels[j], A2.col_labels[it->second[0]])) ++added;
    }
    return added;
}

std::size_t step5_iterative(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                            MappingState& state, const AttackConfig& cfg) {
    B.validate();
    A2.validate();

    std::size_t added = 0;
    for (;;) {
        Ctx ctx(B, A2, state);

        // Zeroing matched rows is expressed as a mask over the row words, so
        // the input matrices stay untouched.
        auto bmask = B.bits.full_row_mask();
        auto amask = A2.bits.full_row_mask();
        if (cfg.zero_matched_rows_in_step5) {
            for (std::size_t r = 0; r < ctx.brow_mapped.size(); ++r)
                if (ctx.brow_mapped[r]) bmask[r / 64] &= ~(1ull << (r % 64));
            for (std::size_t r = 0; r < ctx.arow_mapped.size(); ++r)
                if (ctx.arow_mapped[r]) amask[r / 64] &= ~(1ull << (r % 64));
        }

        std::vector<std::uint64_t> bsum(B.cols(), 0);
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> bres, ares;
        for (std::size_t j = 0; j < B.cols(); ++j)
            if (!ctx.bcol_mapped[j]) {
                bsum[j] = B.bits.masked_col_sum(j, bmask);
                bres[bsum[j]].push_back(j);
            }
        for (std::size_t jp = 0; jp < A2.cols(); ++jp)
            if (!ctx.acol_mapped[jp])
                ares[A2.bits.masked_col_sum(jp, amask)].push_back(jp);

        std::size_t fresh = 0;
        for (std::size_t j = 0; j < B.cols(); ++j) {
            if (ctx.bcol_mapped[j] || bres[bsum[j]].size() != 1) continue;
            auto it = ares.find(bsum[j]);
            if (it == ares.end() || it->second.size() != 1) continue;
            if (state.add_col(B.col_labels[j], A2.col_labels[it->second[0]]))
                ++fresh;
        }
        if (fresh == 0) break;
        added += fresh;
    }
    return added;
}

MappingState run_attack(const IncidenceMatrix& B, const IncidenceMatrix& A2,
                        const CooccurrenceMatrix& M, const CooccurrenceMatrix& M2,
                        const AttackConfig& cfg, AttackTrace* trace) {
    B.validate();
    A2.validate();
    require_data(B.rows() == A2.rows(),
                 "attack: B and the extended known matrix need equal row counts");
    require_data(cfg.max_rounds >= 1, "attack: max_rounds must be at least 1");

    MappingState state;
    auto record = [&](int round, const char* step, std::size_t n) {
        if (trace)
            trace->events.push_back({round, step, n, state.col_map().size(),
                                     state.row_map().size()});
    };

    record(0, "step1", step1_column_sum(B, A2, state));
    for (int round = 1; round <= cfg.max_rounds; ++round) {
        std::size_t total = 0;
        std::size_t n;
        n = step2_occurrence(B, A2, M, M2, state);
        record(round, "step2", n);
        total += n;
        n = step3_unique_row(B, A2, state);
        record(round, "step3", n);
        total += n;
        n = step4_unique_column(B, A2, state);
        record(round, "step4", n);
        total += n;
        n = step5_iterative(B, A2, state, cfg);
        record(round, "step5", n);
        total += n;
        if (total == 0) break;
    }
    return state;
}

void write_mappings_csv(const std::filesystem::path& path,
                        const MappingState& state) {
    std::string out;
    out += "# recovered mappings; plaintext-id is a string id for kind=string "
           "and a character code for kind=token\n";
    out += "kind,ciphertext_id,plaintext_id\n";
    for (const auto& [es, s] : state.col_map())
        out += "string," + std::to_string(es) + "," + std::to_string(s) + "\n";
    for (const auto& [t, a] : state.row_map())
        out += "token," + std::to_string(t) + "," + std::to_string(a) + "\n";
    write_text_atomic(path, out);
}

} // namespace subleak

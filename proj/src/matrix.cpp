#include "subleak/matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "subleak/error.hpp"
#include "subleak/io.hpp"

namespace subleak {

void IncidenceMatrix::validate() const {
    require(bits.rows() == row_labels.size() && bits.cols() == col_labels.size(),
            "IncidenceMatrix: label/bit dimension mismatch");
}

IncidenceMatrix incidence_from_items(
    const std::vector<std::int32_t>& row_universe,
    const std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>>& cols) {
    std::unordered_map<std::int32_t, std::size_t> row_of;
    row_of.reserve(row_universe.size());
    for (std::size_t i = 0; i < row_universe.size(); ++i)
        row_of[row_universe[i]] = i;

    IncidenceMatrix inc;
    inc.row_labels = row_universe;
    inc.bits = BitMatrix(row_universe.size(), cols.size());
    inc.col_labels.reserve(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        inc.col_labels.push_back(cols[j].first);
        for (std::int32_t item : cols[j].second) {
            auto it = row_of.find(item);
            require_data(it != row_of.end(),
                         "incidence: item outside row universe");
            inc.bits.set(it->second, j);
        }
    }
    return inc;
}

IncidenceMatrix build_A_double_prime(const IncidenceMatrix& A_prime,
                                     std::size_t m) {
    A_prime.validate();
    require_data(m >= A_prime.rows(),
                 "extend: target row count below known row count");
    if (m == A_prime.rows()) return A_prime;

    IncidenceMatrix out;
    out.row_labels = A_prime.row_labels;
    for (std::size_t k = A_prime.rows(); k < m; ++k)
        out.row_labels.push_back(-static_cast<std::int32_t>(k - A_prime.rows()) - 1);
    out.col_labels = A_prime.col_labels;
    out.bits = BitMatrix(m, A_prime.cols());
    for (std::size_t c = 0; c < A_prime.cols(); ++c)
        for (std::size_t r = 0; r < A_prime.rows(); ++r)
            if (A_prime.bits.get(r, c)) out.bits.set(r, c);
    return out;
}

CooccurrenceMatrix CooccurrenceMatrix::from_incidence(const IncidenceMatrix& inc) {
    inc.validate();
    CooccurrenceMatrix m;
    m.cols_ = inc.bits;
    m.labels_ = inc.col_labels;
    m.diag_ = inc.bits.col_sums();
    return m;
}

CooccurrenceMatrix build_cooccurrence(const IncidenceMatrix& inc) {
    return CooccurrenceMatrix::from_incidence(inc);
}

void write_incidence_csv(const std::filesystem::path& path,
                         const IncidenceMatrix& inc) {
    inc.validate();
    std::string out;
    out += "# incidence matrix: header row lists token ids; each following "
           "row is one string (id in first column), entry 1 iff the string "
           "contains the token\n";
    out += "es";
    for (std::int32_t t : inc.row_labels) out += "," + std::to_string(t);
    out += "\n";
    for (std::size_t j = 0; j < inc.cols(); ++j) {
        out += std::to_string(inc.col_labels[j]);
        for (std::size_t i = 0; i < inc.rows(); ++i)
            out += inc.bits.get(i, j) ? ",1" : ",0";
        out += "\n";
    }
    write_text_atomic(path, out);
}

IncidenceMatrix read_incidence_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    require_data(in.good(), "incidence csv: cannot open " + path.string());

    std::string line;
    std::vector<std::int32_t> row_labels;
    std::vector<std::pair<std::int32_t, std::vector<bool>>> string_rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream cells(line);
        std::string cell;
        std::vector<std::string> fields;
        while (std::getline(cells, cell, ',')) fields.push_back(cell);
        if (!header_seen) {
            require_data(!fields.empty() && fields[0] == "es",
                         "incidence csv: bad header");
            for (std::size_t i = 1; i < fields.size(); ++i)
                row_labels.push_back(std::stoi(fields[i]));
            header_seen = true;
            continue;
        }
        require_data(fields.size() == row_labels.size() + 1,
                     "incidence csv: row width mismatch");
        std::vector<bool> bits(row_labels.size());
        for (std::size_t i = 1; i < fields.size(); ++i) {
            require_data(fields[i] == "0" || fields[i] == "1",
                         "incidence csv: entry not binary");
            bits[i - 1] = fields[i] == "1";
        }
        string_rows.emplace_back(std::stoi(fields[0]), std::move(bits));
    }
    require_data(header_seen, "incidence csv: missing header");

    IncidenceMatrix inc;
    inc.row_labels = row_labels;
    inc.bits = BitMatrix(row_labels.size(), string_rows.size());
    for (std::size_t j = 0; j < string_rows.size(); ++j) {
        inc.col_labels.push_back(string_rows[j].first);
        for (std::size_t i = 0; i < row_labels.size(); ++i)
            if (string_rows[j].second[i]) inc.bits.set(i, j);
    }
    return inc;
}

} // namespace subleak

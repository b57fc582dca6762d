#ifndef GRAMLAB_CSV_HPP
#define GRAMLAB_CSV_HPP

#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "gramlab/errors.hpp"
#include "gramlab/family.hpp"
#include "gramlab/matrix.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

template <class S>
bool try_parse(const std::string& text, S& out) {
    try {
        out = scalar_from_string<S>(text);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

}  // namespace detail

/// Parses a CSV table: comma-separated numeric cells, '#' comment lines,
/// blank lines ignored, an optional non-numeric header row skipped.
/// Ragged rows and bad cells raise ParseError with 1-based coordinates.
template <class S>
std::vector<std::vector<S>> parse_table(std::istream& in) {
    std::vector<std::vector<S>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t data_row = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> cells = detail::split_csv_line(t);
        std::vector<S> row(cells.size());
        bool all_ok = true;
        std::size_t bad_col = 0;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (!detail::try_parse(cells[j], row[j])) {
                all_ok = false;
                bad_col = j + 1;
                break;
            }
        }
        if (!all_ok) {
            if (header_allowed) {
                header_allowed = false;  // treat the first bad row as a header
                continue;
            }
            throw ParseError("non-numeric cell '" + cells[bad_col - 1] + "'", line_no,
                             bad_col);
        }
        header_allowed = false;
        ++data_row;
        if (!rows.empty() && row.size() != rows[0].size()) {
            throw ParseError("ragged table: expected " +
                                 std::to_string(rows[0].size()) + " cells, found " +
                                 std::to_string(row.size()),
                             line_no);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty table");
    return rows;
}

/// Reads a CSV file as a finite vector family: row r is f_r, horizon =
/// column count.
template <class S>
VectorFamily<S> ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return VectorFamily<S>::table(parse_table<S>(in), path.filename().string());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

/// Reads a family file: optional "key = value" directives (currently
/// `pad`, one of zero|monomial|cycle) followed by the CSV table. The pad
/// rule continues the table past its width, removing the horizon.
template <class S>
VectorFamily<S> ingest_family_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    PadRule pad = PadRule::zero;
    std::stringstream table_part;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        auto eq = t.find('=');
        if (!t.empty() && t[0] != '#' && eq != std::string::npos &&
            t.find(',') == std::string::npos) {
            std::string key = detail::trim(t.substr(0, eq));
            std::string value = detail::trim(t.substr(eq + 1));
            if (key == "pad") {
                auto rule = pad_rule_from_string(value);
                if (!rule) {
                    throw ParseError(path.string() + ": unknown pad rule '" + value + "'",
                                     line_no);
                }
                pad = *rule;
            } else {
                throw ParseError(path.string() + ": unknown directive '" + key + "'",
                                 line_no);
            }
            continue;
        }
        table_part << line << '\n';
    }
    try {
        return VectorFamily<S>::padded_table(parse_table<S>(table_part), pad,
                                             path.filename().string());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

template <class S>
RectMatrix<S> read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return RectMatrix<S>::from_rows(parse_table<S>(in));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

template <class S>
std::string matrix_to_csv(const RectMatrix<S>& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += scalar_to_string(m(i, j));
        }
        out += "\n";
    }
    return out;
}

}  // namespace gramlab

#endif

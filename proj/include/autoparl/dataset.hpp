#pragma once

// CSV dataset loading. Two layouts are supported:
//   - scored datasets: header `question,answer,<stance...>` with one expected
//     score in [0,1] per stance column (benchmark fixtures);
//   - completion tables: header `question,<stance...>` whose cells are aligned
//     answer texts per stance (scripted-generator fixtures).
// Parsing follows RFC 4180: quoted fields, doubled-quote escapes, CR/LF line
// endings, and embedded commas or newlines inside quotes.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autoparl/errors.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct ScoredRow {
    std::string question;
    std::string answer;
    std::vector<double> scores;  // one per stance column, dataset order
};

struct Dataset {
    std::vector<std::string> stances;
    std::vector<ScoredRow> rows;

    // rows x stances score grid for benchmark arithmetic.
    Grid grid() const {
        Grid g(static_cast<int>(rows.size()), static_cast<int>(stances.size()));
        for (int r = 0; r < g.rows; ++r)
            for (int c = 0; c < g.cols; ++c)
                g.at(r, c) = rows[static_cast<std::size_t>(r)].scores[static_cast<std::size_t>(c)];
        return g;
    }
};

struct CompletionRow {
    std::string question;
    std::vector<std::string> answers;  // one per stance column
};

struct CompletionTable {
    std::vector<std::string> stances;
    std::vector<CompletionRow> rows;
};

namespace csv {

// Parses CSV text into raw records. Throws a parse error on an unterminated
// quoted field or stray quote.
inline std::vector<std::vector<std::string>> parse(const std::string& text,
                                                   const std::string& source) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(record);
        record.clear();
    };
    while (i < text.size()) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"' && !field_started && field.empty()) {
            in_quotes = true;
            field_started = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_record();
            i += 2;
        } else if (c == '\n') {
            end_record();
            ++i;
        } else {
            field += c;
            field_started = true;
            ++i;
        }
    }
    if (in_quotes)
        throw Error(ErrorKind::parse, source + ": unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

inline std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace csv

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::configuration, "cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline double parse_cell_score(const std::string& cell, const std::string& source, int row,
                               const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error(ErrorKind::parse, source + ": row " + std::to_string(row) + ", column '" +
                                          column + "': '" + cell + "' is not a number");
    return value;
}

}  // namespace detail

inline Dataset parse_dataset_csv(const std::string& text, const std::string& source) {
    const auto records = csv::parse(text, source);
    if (records.empty())
        throw Error(ErrorKind::validation, source + ": empty file");
    const auto& header = records[0];
    if (header.size() < 3 || detail::lower(header[0]) != "question" ||
        detail::lower(header[1]) != "answer")
        throw Error(ErrorKind::schema,
                    source + ": header must be question,answer,<stance...> with at least one "
                             "stance column");
    Dataset ds;
    for (std::size_t c = 2; c < header.size(); ++c) {
        if (header[c].empty())
            throw Error(ErrorKind::schema, source + ": empty stance column name in header");
        ds.stances.push_back(header[c]);
    }
    if (records.size() < 2)
        throw Error(ErrorKind::validation, source + ": no data rows");
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const int row_no = static_cast<int>(r);  // 1-based data row number
        if (rec.size() != header.size())
            throw Error(ErrorKind::validation,
                        source + ": row " + std::to_string(row_no) + " has " +
                            std::to_string(rec.size()) + " fields, expected " +
                            std::to_string(header.size()));
        ScoredRow row;
        row.question = rec[0];
        row.answer = rec[1];
        for (std::size_t c = 2; c < rec.size(); ++c) {
            const std::string& column = header[c];
            const double v = detail::parse_cell_score(rec[c], source, row_no, column);
            if (!(v >= 0.0 && v <= 1.0))
                throw Error(ErrorKind::validation,
                            source + ": row " + std::to_string(row_no) + ", column '" + column +
                                "': score " + rec[c] + " outside [0,1]");
            row.scores.push_back(v);
        }
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

inline Dataset load_dataset(const std::string& path) {
    return parse_dataset_csv(detail::read_file(path), path);
}

inline CompletionTable parse_completion_csv(const std::string& text, const std::string& source) {
    const auto records = csv::parse(text, source);
    if (records.empty())
        throw Error(ErrorKind::validation, source + ": empty file");
    const auto& header = records[0];
    if (header.size() < 2 || detail::lower(header[0]) != "question")
        throw Error(ErrorKind::schema,
                    source + ": header must be question,<stance...> with at least one stance "
                             "column");
    CompletionTable table;
    for (std::size_t c = 1; c < header.size(); ++c) table.stances.push_back(header[c]);
    if (records.size() < 2)
        throw Error(ErrorKind::validation, source + ": no data rows");
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != header.size())
            throw Error(ErrorKind::validation,
                        source + ": row " + std::to_string(r) + " has " +
                            std::to_string(rec.size()) + " fields, expected " +
                            std::to_string(header.size()));
        CompletionRow row;
        row.question = rec[0];
        row.answers.assign(rec.begin() + 1, rec.end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline CompletionTable load_completion_table(const std::string& path) {
    return parse_completion_csv(detail::read_file(path), path);
}

// Case-insensitive stance column lookup; -1 if absent.
inline int stance_column(const std::vector<std::string>& stances, const std::string& name) {
    const std::string want = detail::lower(name);
    for (std::size_t c = 0; c < stances.size(); ++c)
        if (detail::lower(stances[c]) == want) return static_cast<int>(c);
    return -1;
}

}  // namespace autoparl

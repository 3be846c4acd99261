#include "f1opt/csv.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace f1opt {

parse_error::parse_error(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + std::move(message)),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_field(std::string_view field, double& out) {
    if (field.empty()) {
        return false;
    }
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// Data rows plus the file line each came from, so shape and value errors
// can point back at the source.
struct PositionedRows {
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> lines;
};

PositionedRows read_positioned(std::istream& in) {
    PositionedRows out;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto fields = split_fields(stripped);
        std::vector<double> row;
        row.reserve(fields.size());
        bool ok = true;
        std::size_t bad_column = 0;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            double v = 0.0;
            if (!parse_field(fields[j], v)) {
                ok = false;
                bad_column = j + 1;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (first_data_line) {
                // Non-numeric first row is the optional header.
                first_data_line = false;
                continue;
            }
            throw parse_error("field is not a number", line_no, bad_column);
        }
        first_data_line = false;
        out.rows.push_back(std::move(row));
        out.lines.push_back(line_no);
    }
    return out;
}

void check_rectangular(const PositionedRows& data) {
    if (data.rows.empty()) {
        throw parse_error("no data rows", 1, 1);
    }
    const std::size_t cols = data.rows.front().size();
    for (std::size_t i = 1; i < data.rows.size(); ++i) {
        if (data.rows[i].size() != cols) {
            throw parse_error("row has " + std::to_string(data.rows[i].size()) +
                                  " fields, expected " + std::to_string(cols),
                              data.lines[i], data.rows[i].size() + 1);
        }
    }
}

}  // namespace

std::vector<std::vector<double>> read_numeric_rows(std::istream& in) {
    return read_positioned(in).rows;
}

std::vector<std::vector<double>> read_numeric_rows_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_numeric_rows(in);
}

LabelMatrix read_label_matrix(std::istream& in) {
    const PositionedRows data = read_positioned(in);
    check_rectangular(data);
    const std::size_t rows = data.rows.size();
    const std::size_t cols = data.rows.front().size();
    std::vector<std::uint8_t> cells;
    cells.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = data.rows[i][j];
            if (v != 0.0 && v != 1.0) {
                throw parse_error("label value must be 0 or 1", data.lines[i], j + 1);
            }
            cells.push_back(v == 1.0 ? 1 : 0);
        }
    }
    return LabelMatrix::from_cells(rows, cols, std::move(cells));
}

LabelMatrix read_label_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_label_matrix(in);
}

ScoreMatrix read_score_matrix(std::istream& in, bool calibrated) {
    const PositionedRows data = read_positioned(in);
    check_rectangular(data);
    const std::size_t rows = data.rows.size();
    const std::size_t cols = data.rows.front().size();
    std::vector<double> cells;
    cells.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = data.rows[i][j];
            if (!std::isfinite(v)) {
                throw parse_error("score value must be finite", data.lines[i], j + 1);
            }
            if (calibrated && !(v >= 0.0 && v <= 1.0)) {
                throw parse_error("calibrated score must lie in [0, 1]",
                                  data.lines[i], j + 1);
            }
            cells.push_back(v);
        }
    }
    return ScoreMatrix::from_cells(rows, cols, std::move(cells), calibrated);
}

ScoreMatrix read_score_matrix_file(const std::string& path, bool calibrated) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_score_matrix(in, calibrated);
}

std::string format_double(double value) {
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    assert(n > 0 && static_cast<std::size_t>(n) < sizeof buf);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_label_matrix(std::ostream& out, const LabelMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) {
                out << ',';
            }
            out << static_cast<int>(m(i, j));
        }
        out << '\n';
    }
}

void write_score_matrix(std::ostream& out, const ScoreMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) {
                out << ',';
            }
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

}  // namespace f1opt

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "f1opt/matrix.hpp"

namespace f1opt {

// Raised on malformed CSV input. `line` is the 1-based line in the file
// (comments and the optional header count), `column` the 1-based field.
class parse_error : public std::runtime_error {
  public:
    parse_error(std::string message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

// One parsed CSV row per input line; lines starting with '#' and blank
// lines are skipped. A first row whose fields are not all numeric is
// treated as a header and dropped. Rows may have unequal lengths.
std::vector<std::vector<double>> read_numeric_rows(std::istream& in);
std::vector<std::vector<double>> read_numeric_rows_file(const std::string& path);

// Rectangular readers on top of read_numeric_rows. Label entries must be
// exactly 0 or 1; score entries must be finite, and in [0,1] when
// `calibrated` is set.
LabelMatrix read_label_matrix(std::istream& in);
LabelMatrix read_label_matrix_file(const std::string& path);
ScoreMatrix read_score_matrix(std::istream& in, bool calibrated = false);
ScoreMatrix read_score_matrix_file(const std::string& path, bool calibrated = false);

// 17 significant digits, enough for doubles to round-trip exactly.
std::string format_double(double value);

void write_label_matrix(std::ostream& out, const LabelMatrix& m);
void write_score_matrix(std::ostream& out, const ScoreMatrix& m);

}  // namespace f1opt

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace f1opt {

// n x m binary matrix: one row per instance, one column per label.
class LabelMatrix {
  public:
    LabelMatrix(std::size_t rows, std::size_t cols);
    LabelMatrix(std::initializer_list<std::initializer_list<int>> rows);

    static LabelMatrix from_cells(std::size_t rows, std::size_t cols,
                                  std::vector<std::uint8_t> cells);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t operator()(std::size_t i, std::size_t j) const {
        return cells_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, bool value) {
        cells_[i * cols_ + j] = value ? 1 : 0;
    }

    const std::vector<std::uint8_t>& cells() const { return cells_; }

    bool operator==(const LabelMatrix&) const = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> cells_;
};

// n x m real-valued classifier outputs. When `calibrated` is set the
// entries are probabilities and must lie in [0, 1].
class ScoreMatrix {
  public:
    ScoreMatrix(std::size_t rows, std::size_t cols, bool calibrated = false);
    ScoreMatrix(std::initializer_list<std::initializer_list<double>> rows,
                bool calibrated = false);

    static ScoreMatrix from_cells(std::size_t rows, std::size_t cols,
                                  std::vector<double> cells,
                                  bool calibrated = false);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool calibrated() const { return calibrated_; }

    double operator()(std::size_t i, std::size_t j) const {
        return cells_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, double value);

    std::vector<double> row(std::size_t i) const;
    std::vector<double> column(std::size_t j) const;

    const std::vector<double>& cells() const { return cells_; }

    bool operator==(const ScoreMatrix&) const = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    bool calibrated_;
    std::vector<double> cells_;
};

}  // namespace f1opt

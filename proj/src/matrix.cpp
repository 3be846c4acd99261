#include "f1opt/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace f1opt {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix must have at least one row and one column");
    }
}

}  // namespace

LabelMatrix::LabelMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols, 0) {
    check_shape(rows, cols);
}

LabelMatrix::LabelMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_shape(rows_, cols_);
    cells_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("label matrix rows have unequal lengths");
        }
        for (int v : row) {
            if (v != 0 && v != 1) {
                throw std::invalid_argument("label matrix entries must be 0 or 1");
            }
            cells_.push_back(static_cast<std::uint8_t>(v));
        }
    }
}

LabelMatrix LabelMatrix::from_cells(std::size_t rows, std::size_t cols,
                                    std::vector<std::uint8_t> cells) {
    check_shape(rows, cols);
    if (cells.size() != rows * cols) {
        throw std::invalid_argument("label matrix cell count does not match shape");
    }
    for (std::uint8_t v : cells) {
        if (v > 1) {
            throw std::invalid_argument("label matrix entries must be 0 or 1");
        }
    }
    LabelMatrix m(rows, cols);
    m.cells_ = std::move(cells);
    return m;
}

ScoreMatrix::ScoreMatrix(std::size_t rows, std::size_t cols, bool calibrated)
    : rows_(rows), cols_(cols), calibrated_(calibrated), cells_(rows * cols, 0.0) {
    check_shape(rows, cols);
}

ScoreMatrix::ScoreMatrix(std::initializer_list<std::initializer_list<double>> rows,
                         bool calibrated)
    : rows_(rows.size()),
      cols_(rows.size() ? rows.begin()->size() : 0),
      calibrated_(calibrated) {
    check_shape(rows_, cols_);
    cells_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("score matrix rows have unequal lengths");
        }
        for (double v : row) {
            if (calibrated_ && !(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("calibrated scores must lie in [0, 1]");
            }
            cells_.push_back(v);
        }
    }
}

ScoreMatrix ScoreMatrix::from_cells(std::size_t rows, std::size_t cols,
                                    std::vector<double> cells, bool calibrated) {
    check_shape(rows, cols);
    if (cells.size() != rows * cols) {
        throw std::invalid_argument("score matrix cell count does not match shape");
    }
    if (calibrated) {
        for (double v : cells) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("calibrated scores must lie in [0, 1]");
            }
        }
    }
    ScoreMatrix m(rows, cols, calibrated);
    m.cells_ = std::move(cells);
    return m;
}

void ScoreMatrix::set(std::size_t i, std::size_t j, double value) {
    if (calibrated_ && !(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("calibrated scores must lie in [0, 1]");
    }
    cells_[i * cols_ + j] = value;
}

std::vector<double> ScoreMatrix::row(std::size_t i) const {
    return std::vector<double>(cells_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                               cells_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<double> ScoreMatrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        out[i] = cells_[i * cols_ + j];
    }
    return out;
}

}  // namespace f1opt

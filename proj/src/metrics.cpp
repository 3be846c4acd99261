#include "f1opt/metrics.hpp"

#include <stdexcept>

namespace f1opt {

namespace {

void check_same_shape(const LabelMatrix& pred, const LabelMatrix& gold) {
    if (pred.rows() != gold.rows() || pred.cols() != gold.cols()) {
        throw std::invalid_argument("prediction and gold matrices differ in shape");
    }
}

void tally(ConfusionCounts& c, std::uint8_t p, std::uint8_t g) {
    if (p && g) {
        ++c.tp;
    } else if (p && !g) {
        ++c.fp;
    } else if (!p && g) {
        ++c.fn;
    } else {
        ++c.tn;
    }
}

}  // namespace

ConfusionCounts confusion(const LabelMatrix& pred, const LabelMatrix& gold) {
    check_same_shape(pred, gold);
    ConfusionCounts c;
    const auto& p = pred.cells();
    const auto& g = gold.cells();
    for (std::size_t k = 0; k < p.size(); ++k) {
        tally(c, p[k], g[k]);
    }
    return c;
}

ConfusionCounts column_confusion(const LabelMatrix& pred, const LabelMatrix& gold,
                                 std::size_t j) {
    check_same_shape(pred, gold);
    if (j >= pred.cols()) {
        throw std::invalid_argument("label column index out of range");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.rows(); ++i) {
        tally(c, pred(i, j), gold(i, j));
    }
    return c;
}

ConfusionCounts row_confusion(const LabelMatrix& pred, const LabelMatrix& gold,
                              std::size_t i) {
    check_same_shape(pred, gold);
    if (i >= pred.rows()) {
        throw std::invalid_argument("instance row index out of range");
    }
    ConfusionCounts c;
    for (std::size_t j = 0; j < pred.cols(); ++j) {
        tally(c, pred(i, j), gold(i, j));
    }
    return c;
}

double micro_f1(const LabelMatrix& pred, const LabelMatrix& gold,
                double empty_value) {
    return f1_from_counts(confusion(pred, gold), empty_value);
}

double macro_f1(const LabelMatrix& pred, const LabelMatrix& gold,
                double empty_value) {
    check_same_shape(pred, gold);
    double sum = 0.0;
    for (std::size_t j = 0; j < pred.cols(); ++j) {
        sum += f1_from_counts(column_confusion(pred, gold, j), empty_value);
    }
    return sum / static_cast<double>(pred.cols());
}

double instance_f1(const LabelMatrix& pred, const LabelMatrix& gold,
                   double empty_value) {
    check_same_shape(pred, gold);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.rows(); ++i) {
        sum += f1_from_counts(row_confusion(pred, gold, i), empty_value);
    }
    return sum / static_cast<double>(pred.rows());
}

double multilabel_accuracy(const LabelMatrix& pred, const LabelMatrix& gold) {
    check_same_shape(pred, gold);
    const auto& p = pred.cells();
    const auto& g = gold.cells();
    std::size_t agree = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        agree += (p[k] == g[k]);
    }
    return static_cast<double>(agree) / static_cast<double>(p.size());
}

}  // namespace f1opt

#include "f1opt/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "f1opt/gfm.hpp"
#include "f1opt/metrics.hpp"

namespace f1opt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scores(const std::vector<double>& scores,
                  const std::vector<std::uint8_t>& labels) {
    if (scores.empty()) {
        throw std::invalid_argument("no scores to threshold");
    }
    if (labels.size() != scores.size()) {
        throw std::invalid_argument("scores and labels differ in length");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) {
            throw std::invalid_argument("scores must be finite");
        }
    }
    for (std::uint8_t y : labels) {
        if (y > 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
    }
}

}  // namespace

ThresholdSearchResult best_threshold(const std::vector<double>& scores,
                                     const std::vector<std::uint8_t>& labels,
                                     double empty_value) {
    check_scores(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return scores[i] > scores[j];
    });

    std::uint64_t total_pos = 0;
    for (std::uint8_t y : labels) {
        total_pos += y;
    }

    ThresholdSearchResult result;
    result.threshold = kInf;
    // With c instances predicted positive and tp of them correct,
    // F1 = 2tp / (total_pos + c); the sweep lowers the threshold through
    // the distinct scores, growing c by one tie group at a time.
    result.f1 = total_pos == 0 ? empty_value : 0.0;
    result.sweep.emplace_back(kInf, result.f1);

    std::uint64_t tp = 0;
    std::uint64_t c = 0;
    std::size_t k = 0;
    while (k < n) {
        const double candidate = scores[order[k]];
        while (k < n && scores[order[k]] == candidate) {
            tp += labels[order[k]];
            ++c;
            ++k;
        }
        const double den = static_cast<double>(total_pos + c);
        const double f1 = den == 0.0 ? empty_value
                                     : 2.0 * static_cast<double>(tp) / den;
        result.sweep.emplace_back(candidate, f1);
        if (f1 > result.f1) {
            result.f1 = f1;
            result.threshold = candidate;
        }
    }
    return result;
}

namespace {

std::vector<std::uint8_t> label_column(const LabelMatrix& m, std::size_t j) {
    std::vector<std::uint8_t> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out[i] = m(i, j);
    }
    return out;
}

void check_tune_shapes(const ScoreMatrix& scores, const LabelMatrix& gold) {
    if (scores.rows() != gold.rows() || scores.cols() != gold.cols()) {
        throw std::invalid_argument("score and gold matrices differ in shape");
    }
}

}  // namespace

MultilabelThresholds tune_macro(const ScoreMatrix& scores, const LabelMatrix& gold,
                                double empty_value) {
    check_tune_shapes(scores, gold);
    MultilabelThresholds out;
    out.objective = TuneObjective::macro;
    double sum = 0.0;
    for (std::size_t j = 0; j < scores.cols(); ++j) {
        const auto best = best_threshold(scores.column(j), label_column(gold, j),
                                         empty_value);
        out.per_label.push_back(best.threshold);
        sum += best.f1;
    }
    out.achieved = sum / static_cast<double>(scores.cols());
    return out;
}

MultilabelThresholds tune_micro(const ScoreMatrix& scores, const LabelMatrix& gold,
                                double empty_value) {
    check_tune_shapes(scores, gold);
    const std::size_t n = scores.rows();
    const std::size_t m = scores.cols();

    MultilabelThresholds out = tune_macro(scores, gold, empty_value);
    out.objective = TuneObjective::micro;
    out.trace.clear();

    std::uint64_t total_pos = 0;
    for (std::uint8_t g : gold.cells()) {
        total_pos += g;
    }

    // Pooled predicted-positive and true-positive counts per label under
    // the current thresholds. Micro F1 = 2*TP / (total_pos + C) with the
    // gold total fixed, so only TP and C need tracking.
    std::vector<std::uint64_t> tp_by_label(m, 0);
    std::vector<std::uint64_t> c_by_label(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (scores(i, j) >= out.per_label[j]) {
                ++c_by_label[j];
                tp_by_label[j] += gold(i, j);
            }
        }
    }
    auto pooled_f1 = [&](std::uint64_t tp, std::uint64_t c) {
        const double den = static_cast<double>(total_pos + c);
        return den == 0.0 ? empty_value : 2.0 * static_cast<double>(tp) / den;
    };

    std::uint64_t tp_all = std::accumulate(tp_by_label.begin(), tp_by_label.end(),
                                           std::uint64_t{0});
    std::uint64_t c_all = std::accumulate(c_by_label.begin(), c_by_label.end(),
                                          std::uint64_t{0});
    out.achieved = pooled_f1(tp_all, c_all);
    out.trace.push_back(out.achieved);

    constexpr int kMaxPasses = 20;
    out.converged = false;
    for (int pass = 0; pass < kMaxPasses && !out.converged; ++pass) {
        bool changed = false;
        for (std::size_t j = 0; j < m; ++j) {
            const std::uint64_t tp_rest = tp_all - tp_by_label[j];
            const std::uint64_t c_rest = c_all - c_by_label[j];

            const auto col = scores.column(j);
            const auto lab = label_column(gold, j);
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return col[a] > col[b];
            });

            double best_thr = kInf;
            double best_f1 = pooled_f1(tp_rest, c_rest);
            std::uint64_t best_tp = 0;
            std::uint64_t best_c = 0;
            std::uint64_t tp_j = 0;
            std::uint64_t c_j = 0;
            std::size_t k = 0;
            while (k < n) {
                const double candidate = col[order[k]];
                while (k < n && col[order[k]] == candidate) {
                    tp_j += lab[order[k]];
                    ++c_j;
                    ++k;
                }
                const double f1 = pooled_f1(tp_rest + tp_j, c_rest + c_j);
                if (f1 > best_f1) {
                    best_f1 = f1;
                    best_thr = candidate;
                    best_tp = tp_j;
                    best_c = c_j;
                }
            }

            if (best_thr != out.per_label[j]) {
                out.per_label[j] = best_thr;
                tp_all = tp_rest + best_tp;
                c_all = c_rest + best_c;
                tp_by_label[j] = best_tp;
                c_by_label[j] = best_c;
                out.achieved = best_f1;
                out.trace.push_back(out.achieved);
                changed = true;
            }
        }
        out.converged = !changed;
    }
    return out;
}

InstanceTuneResult tune_instance(const ScoreMatrix& probs, double empty_value) {
    if (!probs.calibrated()) {
        throw std::invalid_argument("instance tuning needs calibrated probabilities");
    }
    InstanceTuneResult out{LabelMatrix(probs.rows(), probs.cols()), {}, 0.0};
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.rows(); ++i) {
        const ExpectedF1Result row = maximize_expected_f1(probs.row(i), empty_value);
        for (std::size_t j = 0; j < probs.cols(); ++j) {
            out.predictions.set(i, j, row.h[j] != 0);
        }
        out.per_row_expected.push_back(row.expected_f1);
        sum += row.expected_f1;
    }
    out.mean_expected = sum / static_cast<double>(probs.rows());
    return out;
}

LabelMatrix apply_thresholds(const ScoreMatrix& scores,
                             const std::vector<double>& per_label) {
    if (per_label.size() != scores.cols()) {
        throw std::invalid_argument("one threshold per label required");
    }
    LabelMatrix out(scores.rows(), scores.cols());
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        for (std::size_t j = 0; j < scores.cols(); ++j) {
            out.set(i, j, scores(i, j) >= per_label[j]);
        }
    }
    return out;
}

}  // namespace f1opt

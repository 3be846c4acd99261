#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "f1opt/confusion.hpp"
#include "f1opt/matrix.hpp"

namespace f1opt {

struct ThresholdSearchResult {
    double threshold = 0.0;  // +infinity means predict nothing
    double f1 = 0.0;
    // Every candidate with its F1, in evaluation order (descending).
    std::vector<std::pair<double, double>> sweep;
};

// Best F1 over rules of the form "predict positive iff score >= t".
// Candidates are the distinct scores plus +infinity; only those can change
// the prediction set. Ties break toward the larger threshold.
ThresholdSearchResult best_threshold(const std::vector<double>& scores,
                                     const std::vector<std::uint8_t>& labels,
                                     double empty_value = kEmptyMatchScore);

enum class TuneObjective { macro, micro, instance };

struct MultilabelThresholds {
    std::vector<double> per_label;
    TuneObjective objective = TuneObjective::macro;
    double achieved = 0.0;
    bool converged = true;
    // Objective value after each accepted update (micro tuning only);
    // non-decreasing by construction.
    std::vector<double> trace;
};

// Independent per-label sweeps; achieved is the mean per-label F1.
MultilabelThresholds tune_macro(const ScoreMatrix& scores, const LabelMatrix& gold,
                                double empty_value = kEmptyMatchScore);

// Coordinate ascent on the pooled F1: starting from the macro thresholds,
// re-sweep one label at a time with the others held fixed, in ascending
// label order, until a full pass changes nothing or 20 passes elapse
// (converged=false on the cap).
MultilabelThresholds tune_micro(const ScoreMatrix& scores, const LabelMatrix& gold,
                                double empty_value = kEmptyMatchScore);

struct InstanceTuneResult {
    LabelMatrix predictions;
    std::vector<double> per_row_expected;  // expected F1 of each row's prediction
    double mean_expected = 0.0;
};

// Maximizes expected per-instance F1 row by row; labels within a row are
// treated as independent with the given marginals. Requires calibrated
// probabilities.
InstanceTuneResult tune_instance(const ScoreMatrix& probs,
                                 double empty_value = kEmptyMatchScore);

// Applies per-label thresholds with the score >= threshold rule.
LabelMatrix apply_thresholds(const ScoreMatrix& scores,
                             const std::vector<double>& per_label);

}  // namespace f1opt

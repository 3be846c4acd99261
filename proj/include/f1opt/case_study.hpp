#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "f1opt/matrix.hpp"
#include "f1opt/thresholding.hpp"

namespace f1opt {

struct CaseStudyLabelSpec {
    double base_rate = 0.5;  // P(label positive), in (0, 1)
    double theta = 0.0;      // probability the score reveals the label, in [0, 1]
};

struct CaseStudyConfig {
    std::size_t instances = 0;
    std::uint64_t seed = 0;
    std::vector<CaseStudyLabelSpec> labels;

    void validate() const;
};

struct CaseStudyData {
    LabelMatrix gold;
    ScoreMatrix scores;  // calibrated
};

// Draws gold labels Bernoulli(base_rate) and emits a score per cell: the
// true label itself with probability theta, the base rate otherwise. The
// scores are exactly calibrated by construction, with theta=0 giving a
// constant uninformative column and theta=1 a perfect one.
CaseStudyData generate_case_study(const CaseStudyConfig& config);

struct CaseStudyRow {
    std::size_t label = 0;
    double base_rate = 0.0;
    double theta = 0.0;
    std::uint64_t gold_positives = 0;
    double macro_threshold = 0.0;
    std::uint64_t macro_predicted = 0;
    double macro_f1 = 0.0;  // this label's own best F1
    double micro_threshold = 0.0;
    std::uint64_t micro_predicted = 0;
    // Macro tuning predicted every instance positive at a threshold at or
    // below the base rate while micro tuning predicted none.
    bool pathological = false;
};

struct CaseStudyReport {
    std::vector<CaseStudyRow> rows;
    double macro_achieved = 0.0;
    double micro_achieved = 0.0;
    bool micro_converged = true;
};

CaseStudyReport run_case_study(const CaseStudyConfig& config);

}  // namespace f1opt

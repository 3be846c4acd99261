#include "f1opt/case_study.hpp"

#include <stdexcept>

#include "f1opt/confusion.hpp"
#include "f1opt/rng.hpp"

namespace f1opt {

void CaseStudyConfig::validate() const {
    if (instances == 0) {
        throw std::invalid_argument("need at least one instance");
    }
    if (labels.empty()) {
        throw std::invalid_argument("need at least one label");
    }
    for (const auto& spec : labels) {
        if (!(spec.base_rate > 0.0 && spec.base_rate < 1.0)) {
            throw std::invalid_argument("base rate must lie strictly between 0 and 1");
        }
        if (!(spec.theta >= 0.0 && spec.theta <= 1.0)) {
            throw std::invalid_argument("theta must lie in [0, 1]");
        }
    }
}

CaseStudyData generate_case_study(const CaseStudyConfig& config) {
    config.validate();
    const std::size_t n = config.instances;
    const std::size_t m = config.labels.size();
    CaseStudyData data{LabelMatrix(n, m), ScoreMatrix(n, m, true)};
    auto engine = seeded_engine(config.seed);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const auto& spec = config.labels[j];
            const bool t = bernoulli(engine, spec.base_rate);
            const bool reveal = bernoulli(engine, spec.theta);
            data.gold.set(i, j, t);
            data.scores.set(i, j, reveal ? (t ? 1.0 : 0.0) : spec.base_rate);
        }
    }
    return data;
}

CaseStudyReport run_case_study(const CaseStudyConfig& config) {
    const CaseStudyData data = generate_case_study(config);
    const std::size_t n = config.instances;
    const std::size_t m = config.labels.size();

    const MultilabelThresholds macro = tune_macro(data.scores, data.gold);
    const MultilabelThresholds micro = tune_micro(data.scores, data.gold);

    CaseStudyReport report;
    report.macro_achieved = macro.achieved;
    report.micro_achieved = micro.achieved;
    report.micro_converged = micro.converged;
    for (std::size_t j = 0; j < m; ++j) {
        CaseStudyRow row;
        row.label = j;
        row.base_rate = config.labels[j].base_rate;
        row.theta = config.labels[j].theta;
        row.macro_threshold = macro.per_label[j];
        row.micro_threshold = micro.per_label[j];
        std::uint64_t gold_pos = 0;
        std::uint64_t macro_pred = 0;
        std::uint64_t micro_pred = 0;
        std::uint64_t macro_tp = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = data.scores(i, j);
            const bool g = data.gold(i, j);
            gold_pos += g;
            if (s >= row.macro_threshold) {
                ++macro_pred;
                macro_tp += g;
            }
            micro_pred += s >= row.micro_threshold;
        }
        row.gold_positives = gold_pos;
        row.macro_predicted = macro_pred;
        row.micro_predicted = micro_pred;
        row.macro_f1 = f1_score(static_cast<double>(macro_tp),
                                static_cast<double>(macro_pred - macro_tp),
                                static_cast<double>(gold_pos - macro_tp));
        row.pathological = macro_pred == n &&
                           row.macro_threshold <= row.base_rate + 1e-12 &&
                           micro_pred == 0;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace f1opt

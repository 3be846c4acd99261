#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace f1opt {

// Class-conditional score distributions as masses on a shared discrete
// grid. Integrals over score regions become sums of masses.
struct ScoreDistributionPair {
    std::vector<double> grid;  // ascending score values
    std::vector<double> p1;    // masses of p(score | positive)
    std::vector<double> p0;    // masses of p(score | negative)
    double base_rate = 0.0;    // prior probability of the positive class

    // Throws std::invalid_argument unless the grid is strictly increasing,
    // both mass vectors are non-negative and sum to 1 within 1e-9, and
    // base_rate lies in (0, 1).
    void validate() const;
};

// Uniformly spaced grid on [0, 1] with the given number of points.
std::vector<double> unit_grid(std::size_t points = 1001);

// Pair whose scores are exactly calibrated: p(positive | s) = s. Built
// from a marginal score distribution by splitting each mass w(s) into
// w(s)*s positive and w(s)*(1-s) negative; base_rate comes out as the
// marginal mean. Grid values must lie in [0, 1].
ScoreDistributionPair calibrated_pair_from_marginal(std::vector<double> grid,
                                                    const std::vector<double>& marginal);

// Probability masses of the four confusion cells; they sum to 1.
struct ConfusionFractions {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    double tn = 0.0;
};

ConfusionFractions confusion_fractions(const ScoreDistributionPair& dist,
                                       const std::vector<std::uint8_t>& decision);

struct OptimalRuleResult {
    std::vector<std::uint8_t> decision;  // 1 = predict positive at this grid point
    double f1 = 0.0;
    double jaccard = 0.0;
    ConfusionFractions rates;
};

// Best achievable F1 over all decision rules on the grid. The optimum is
// a superlevel set of the likelihood ratio b*p1/((1-b)*p0), so a sweep
// over prefixes in descending-ratio order finds it. Points where the
// ratio ties the optimum's Jaccard index are declared positive; points
// with zero mass in both classes are left negative.
OptimalRuleResult solve_optimal_rule(const ScoreDistributionPair& dist);

// Decision threshold for calibrated scores achieving max_f1: half of it,
// so never above 0.5. Throws on max_f1 outside [0, 1].
double calibrated_threshold(double max_f1);

// Expected F1 when scores carry no information and c of n instances are
// predicted positive: 2*c*b / (b*n + c). Increasing in c, so the best
// uninformative strategy predicts everything positive.
double uninformative_expected_f1(double base_rate, double n, double c);

// Max expected F1 of an uninformative classifier, 2b/(1+b), per rate.
std::vector<double> uninformative_curve(const std::vector<double>& base_rates);

// Pooled-F1 change from a rare label with base_rate*instances positives:
// predicted perfectly versus predicted all-negative.
struct RareLabelImpact {
    double with_rare_perfect = 0.0;
    double with_rare_ignored = 0.0;
    double ratio = 0.0;
};

RareLabelImpact rare_label_impact(double tp, double fp, double fn,
                                  double base_rate, double instances);

}  // namespace f1opt

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "f1opt/confusion.hpp"

namespace f1opt {

// pmf[a] = P(exactly a of the independent Bernoulli labels are positive).
std::vector<double> poisson_binomial_pmf(const std::vector<double>& probs);

// joint[i][a] = P(label i is positive AND the total positive count is a).
// Row i marginalizes back to probs[i].
std::vector<std::vector<double>> item_count_joint(const std::vector<double>& probs);

struct ExpectedF1Result {
    std::vector<std::uint8_t> h;   // chosen prediction per label
    double expected_f1 = 0.0;
    std::vector<double> per_count; // best expected F1 at each support size 0..n
};

// Prediction maximizing expected F1 over independent labels with the given
// marginals. For each support size c the best choice keeps the c labels
// with the largest sum_a joint[i][a]/(a+c); the empty prediction scores
// empty_value * P(no positives). Ties in the per-label weights break toward
// the lower index, and ties across support sizes toward the smaller size.
// With empty_value 0 (score conditional on at least one positive existing)
// the all-positive prediction wins for any constant probability vector.
ExpectedF1Result maximize_expected_f1(const std::vector<double>& probs,
                                      double empty_value = kEmptyMatchScore);

// Exact expectation of F1(h, t) over all 2^n outcomes t. Refuses n > 20.
double brute_force_expected_f1(const std::vector<double>& probs,
                               const std::vector<std::uint8_t>& h,
                               double empty_value = kEmptyMatchScore);

// Checks the selected support against {i : p_i > expected_f1 / 2}.
struct StoppingThresholdReport {
    bool matches = false;
    double threshold = 0.0;     // expected_f1 / 2
    double boundary_gap = 0.0;  // min selected p_i minus threshold; NaN if none selected
    std::vector<std::size_t> mismatches;  // items off by more than the tolerance
};

StoppingThresholdReport verify_stopping_threshold(const std::vector<double>& probs,
                                                  const ExpectedF1Result& result,
                                                  double tolerance = 1e-9);

}  // namespace f1opt

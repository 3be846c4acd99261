#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace f1opt {

// Scores are base_rate + Normal(0, sigma^2), drawn independently of the
// labels, so every threshold rule has the same information: none.
struct CurseConfig {
    double base_rate = 0.5;
    std::size_t samples = 100000;  // batch size per trial
    double sigma = 1.0;
    std::size_t trials = 500;
    std::uint64_t seed = 0;

    void validate() const;
};

struct CurseTrial {
    double threshold = 0.0;    // +infinity when the batch had no positives
    double fraction = 0.0;     // share of the batch predicted positive
    double train_f1 = 0.0;     // F1 on the batch the threshold was fit to
    double expected_f1 = 0.0;  // true expected F1 of that prediction rate
    double regret = 0.0;       // all-positive expectation minus expected_f1
};

struct CurseResult {
    std::vector<CurseTrial> trials;
    // 50 uniform bins; fractions over [0,1], thresholds over
    // base_rate +- 5 sigma with out-of-range values (including the
    // +infinity sentinel) clamped into the edge bins.
    std::vector<std::uint64_t> fraction_histogram;
    std::vector<std::uint64_t> threshold_histogram;
    double threshold_bin_low = 0.0;
    double threshold_bin_high = 0.0;
};

inline constexpr std::size_t kCurseHistogramBins = 50;

// Counts values into uniformly spaced bins on [low, high]; out-of-range
// values land in the nearest edge bin so the counts always sum to the
// input size.
std::vector<std::uint64_t> clamped_histogram(const std::vector<double>& values,
                                             double low, double high,
                                             std::size_t bins);

// Per trial t, scores come from sub-stream 2t and labels from 2t+1 of the
// config seed; the trial order never affects the draws.
CurseResult run_curse_simulation(const CurseConfig& config);

// F1 obtained by thresholding at the single largest score when that item
// happens to be positive: 2/(2 + b*n).
double smax_f1(double base_rate, double n);

// Base rate at which the top-one rule stops beating all-positive for
// batches of size n: (sqrt(1 + 8/n) - 1)/2.
double phase_boundary(double n);

// True when n < (1-b)/b^2, the regime where overfitting the threshold
// beats the all-positive rule with constant probability.
bool curse_region(double base_rate, double n);

// Expected F1 of predicting everything positive: 2b/(1+b).
double all_positive_expected_f1(double base_rate);

}  // namespace f1opt

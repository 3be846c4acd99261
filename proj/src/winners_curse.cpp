#include "f1opt/winners_curse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "f1opt/analytic.hpp"
#include "f1opt/rng.hpp"
#include "f1opt/thresholding.hpp"

namespace f1opt {

void CurseConfig::validate() const {
    if (!(base_rate > 0.0 && base_rate < 1.0)) {
        throw std::invalid_argument("base rate must lie strictly between 0 and 1");
    }
    if (samples < 2) {
        throw std::invalid_argument("need at least two samples per trial");
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("sigma must be positive");
    }
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
}

std::vector<std::uint64_t> clamped_histogram(const std::vector<double>& values,
                                             double low, double high,
                                             std::size_t bins) {
    if (bins == 0 || !(high > low)) {
        throw std::invalid_argument("histogram needs bins and a non-empty range");
    }
    std::vector<std::uint64_t> counts(bins, 0);
    const double width = (high - low) / static_cast<double>(bins);
    for (double v : values) {
        const double pos = (v - low) / width;
        // The range check must happen while still a double: casting an
        // out-of-range value (the +infinity sentinel in particular) to an
        // integer is undefined. NaN and anything at or below the range
        // floor stay in bin 0.
        std::size_t bin = 0;
        if (pos >= static_cast<double>(bins)) {
            bin = bins - 1;
        } else if (pos > 0.0) {
            bin = static_cast<std::size_t>(pos);
        }
        ++counts[bin];
    }
    return counts;
}

CurseResult run_curse_simulation(const CurseConfig& config) {
    config.validate();
    const std::size_t n = config.samples;
    const double b = config.base_rate;
    const double reference = all_positive_expected_f1(b);

    CurseResult result;
    result.trials.reserve(config.trials);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t t = 0; t < config.trials; ++t) {
        auto score_engine = seeded_engine(config.seed, 2 * t);
        auto label_engine = seeded_engine(config.seed, 2 * t + 1);
        NormalSampler normal;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = b + config.sigma * normal(score_engine);
        }
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = bernoulli(label_engine, b);
        }

        const ThresholdSearchResult search = best_threshold(scores, labels);
        std::size_t predicted = 0;
        for (double s : scores) {
            predicted += s >= search.threshold;
        }

        CurseTrial trial;
        trial.threshold = search.threshold;
        trial.fraction = static_cast<double>(predicted) / static_cast<double>(n);
        trial.train_f1 = search.f1;
        trial.expected_f1 = uninformative_expected_f1(
            b, static_cast<double>(n), static_cast<double>(predicted));
        trial.regret = reference - trial.expected_f1;
        result.trials.push_back(trial);
    }

    std::vector<double> fractions(config.trials);
    std::vector<double> thresholds(config.trials);
    for (std::size_t t = 0; t < config.trials; ++t) {
        fractions[t] = result.trials[t].fraction;
        thresholds[t] = result.trials[t].threshold;
    }
    result.fraction_histogram =
        clamped_histogram(fractions, 0.0, 1.0, kCurseHistogramBins);
    result.threshold_bin_low = b - 5.0 * config.sigma;
    result.threshold_bin_high = b + 5.0 * config.sigma;
    result.threshold_histogram =
        clamped_histogram(thresholds, result.threshold_bin_low,
                          result.threshold_bin_high, kCurseHistogramBins);
    return result;
}

double smax_f1(double base_rate, double n) {
    if (!(base_rate > 0.0 && base_rate < 1.0) || n < 1.0) {
        throw std::invalid_argument("need base rate in (0,1) and n >= 1");
    }
    return 2.0 / (2.0 + base_rate * n);
}

double phase_boundary(double n) {
    if (n < 1.0) {
        throw std::invalid_argument("need n >= 1");
    }
    return (std::sqrt(1.0 + 8.0 / n) - 1.0) / 2.0;
}

bool curse_region(double base_rate, double n) {
    if (!(base_rate > 0.0 && base_rate < 1.0) || n < 1.0) {
        throw std::invalid_argument("need base rate in (0,1) and n >= 1");
    }
    return n < (1.0 - base_rate) / (base_rate * base_rate);
}

double all_positive_expected_f1(double base_rate) {
    if (!(base_rate > 0.0 && base_rate < 1.0)) {
        throw std::invalid_argument("base rate must lie strictly between 0 and 1");
    }
    return 2.0 * base_rate / (1.0 + base_rate);
}

}  // namespace f1opt

#include "f1opt/gfm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace f1opt {

namespace {

void check_probs(const std::vector<double>& probs) {
    if (probs.empty()) {
        throw std::invalid_argument("probability vector is empty");
    }
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("probabilities must lie in [0, 1]");
        }
    }
}

// Folds each label into the count pmf in place, descending so pmf[a-1] is
// still the previous iteration's value.
void fold_in(std::vector<double>& pmf, std::size_t count, double p) {
    for (std::size_t a = count; a > 0; --a) {
        pmf[a] = pmf[a] * (1.0 - p) + pmf[a - 1] * p;
    }
    pmf[0] *= 1.0 - p;
}

}  // namespace

std::vector<double> poisson_binomial_pmf(const std::vector<double>& probs) {
    check_probs(probs);
    std::vector<double> pmf(probs.size() + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t count = 0;
    for (double p : probs) {
        fold_in(pmf, ++count, p);
    }
    return pmf;
}

std::vector<std::vector<double>> item_count_joint(const std::vector<double>& probs) {
    check_probs(probs);
    const std::size_t n = probs.size();
    std::vector<std::vector<double>> joint(n, std::vector<double>(n + 1, 0.0));
    // Each leave-one-out pmf is rebuilt from scratch. Dividing label i back
    // out of the full pmf would be cheaper but loses precision when some
    // p_j is at or near 1.
    std::vector<double> loo(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(loo.begin(), loo.end(), 0.0);
        loo[0] = 1.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                fold_in(loo, ++count, probs[j]);
            }
        }
        for (std::size_t a = 1; a <= n; ++a) {
            joint[i][a] = probs[i] * loo[a - 1];
        }
    }
    return joint;
}

ExpectedF1Result maximize_expected_f1(const std::vector<double>& probs,
                                      double empty_value) {
    check_probs(probs);
    const std::size_t n = probs.size();
    const auto joint = item_count_joint(probs);

    ExpectedF1Result result;
    result.per_count.assign(n + 1, 0.0);
    result.per_count[0] = empty_value * poisson_binomial_pmf(probs)[0];
    result.h.assign(n, 0);
    result.expected_f1 = result.per_count[0];

    std::vector<double> v(n);
    std::vector<std::size_t> order(n);
    for (std::size_t c = 1; c <= n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t a = 1; a <= n; ++a) {
                sum += joint[i][a] / static_cast<double>(a + c);
            }
            v[i] = sum;
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return v[i] != v[j] ? v[i] > v[j] : i < j;
        });
        double top = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            top += v[order[k]];
        }
        result.per_count[c] = 2.0 * top;
        if (result.per_count[c] > result.expected_f1) {
            result.expected_f1 = result.per_count[c];
            std::fill(result.h.begin(), result.h.end(), 0);
            for (std::size_t k = 0; k < c; ++k) {
                result.h[order[k]] = 1;
            }
        }
    }
    return result;
}

double brute_force_expected_f1(const std::vector<double>& probs,
                               const std::vector<std::uint8_t>& h,
                               double empty_value) {
    check_probs(probs);
    const std::size_t n = probs.size();
    if (n > 20) {
        throw std::invalid_argument("exhaustive expectation limited to 20 labels");
    }
    if (h.size() != n) {
        throw std::invalid_argument("prediction length must match the probabilities");
    }
    std::uint32_t h_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (h[i]) {
            h_mask |= std::uint32_t{1} << i;
        }
    }
    const int h_count = std::popcount(h_mask);
    double expectation = 0.0;
    for (std::uint32_t t = 0; t < (std::uint32_t{1} << n); ++t) {
        double p = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            p *= (t >> i) & 1 ? probs[i] : 1.0 - probs[i];
        }
        if (p == 0.0) {
            continue;
        }
        const int tp = std::popcount(t & h_mask);
        const int fp = h_count - tp;
        const int fn = std::popcount(t) - tp;
        expectation += p * f1_score(tp, fp, fn, empty_value);
    }
    return expectation;
}

StoppingThresholdReport verify_stopping_threshold(const std::vector<double>& probs,
                                                  const ExpectedF1Result& result,
                                                  double tolerance) {
    if (result.h.size() != probs.size()) {
        throw std::invalid_argument("result does not match the probability vector");
    }
    StoppingThresholdReport report;
    report.threshold = result.expected_f1 / 2.0;
    double min_selected = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (result.h[i]) {
            if (!(min_selected <= probs[i])) {
                min_selected = probs[i];
            }
            if (probs[i] < report.threshold - tolerance) {
                report.mismatches.push_back(i);
            }
        } else if (probs[i] > report.threshold + tolerance) {
            report.mismatches.push_back(i);
        }
    }
    report.boundary_gap = min_selected - report.threshold;
    report.matches = report.mismatches.empty();
    return report;
}

}  // namespace f1opt

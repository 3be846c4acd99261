#include "f1opt/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "f1opt/confusion.hpp"

namespace f1opt {

void ScoreDistributionPair::validate() const {
    if (grid.empty()) {
        throw std::invalid_argument("score grid is empty");
    }
    if (p1.size() != grid.size() || p0.size() != grid.size()) {
        throw std::invalid_argument("mass vectors must match the grid length");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("score grid must be strictly increasing");
        }
    }
    double sum1 = 0.0;
    double sum0 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (p1[i] < 0.0 || p0[i] < 0.0) {
            throw std::invalid_argument("distribution masses must be non-negative");
        }
        sum1 += p1[i];
        sum0 += p0[i];
    }
    if (std::abs(sum1 - 1.0) > 1e-9 || std::abs(sum0 - 1.0) > 1e-9) {
        throw std::invalid_argument("distribution masses must sum to 1");
    }
    if (!(base_rate > 0.0 && base_rate < 1.0)) {
        throw std::invalid_argument("base rate must lie strictly between 0 and 1");
    }
}

std::vector<double> unit_grid(std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

ScoreDistributionPair calibrated_pair_from_marginal(std::vector<double> grid,
                                                    const std::vector<double>& marginal) {
    if (marginal.size() != grid.size()) {
        throw std::invalid_argument("marginal must match the grid length");
    }
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
            throw std::invalid_argument("calibrated scores must lie in [0, 1]");
        }
        if (marginal[i] < 0.0) {
            throw std::invalid_argument("marginal masses must be non-negative");
        }
        total += marginal[i];
        mean += marginal[i] * grid[i];
    }
    if (total <= 0.0) {
        throw std::invalid_argument("marginal must carry positive mass");
    }
    const double b = mean / total;
    if (!(b > 0.0 && b < 1.0)) {
        throw std::invalid_argument("marginal mean must lie strictly between 0 and 1");
    }
    ScoreDistributionPair dist;
    dist.base_rate = b;
    dist.p1.resize(grid.size());
    dist.p0.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = marginal[i] / total;
        dist.p1[i] = w * grid[i] / b;
        dist.p0[i] = w * (1.0 - grid[i]) / (1.0 - b);
    }
    dist.grid = std::move(grid);
    return dist;
}

ConfusionFractions confusion_fractions(const ScoreDistributionPair& dist,
                                       const std::vector<std::uint8_t>& decision) {
    if (decision.size() != dist.grid.size()) {
        throw std::invalid_argument("decision vector must match the grid length");
    }
    ConfusionFractions f;
    const double b = dist.base_rate;
    for (std::size_t i = 0; i < decision.size(); ++i) {
        if (decision[i]) {
            f.tp += b * dist.p1[i];
            f.fp += (1.0 - b) * dist.p0[i];
        } else {
            f.fn += b * dist.p1[i];
            f.tn += (1.0 - b) * dist.p0[i];
        }
    }
    return f;
}

OptimalRuleResult solve_optimal_rule(const ScoreDistributionPair& dist) {
    dist.validate();
    const std::size_t n = dist.grid.size();
    const double b = dist.base_rate;

    // Positive-class and negative-class mass at each point; the likelihood
    // ratio is pos/neg, compared via cross products so neg = 0 needs no
    // special infinity handling.
    std::vector<double> pos(n);
    std::vector<double> neg(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = b * dist.p1[i];
        neg[i] = (1.0 - b) * dist.p0[i];
        if (dist.p1[i] > 0.0 || dist.p0[i] > 0.0) {
            order.push_back(i);
        }
    }
    if (order.empty()) {
        throw std::invalid_argument("both distributions are zero everywhere");
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return pos[i] * neg[j] > pos[j] * neg[i];
    });

    // F1 of the k-point prefix is 2tp/(tp + b + fp); scan all prefixes.
    double best_f1 = 0.0;  // k = 0 predicts nothing: tp = 0
    std::size_t best_k = 0;
    double tp = 0.0;
    double fp = 0.0;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        tp += pos[order[k - 1]];
        fp += neg[order[k - 1]];
        const double f1 = f1_score(tp, fp, b - tp);
        if (f1 > best_f1 * (1.0 + 1e-12)) {
            best_f1 = f1;
            best_k = k;
        } else if (f1 >= best_f1 * (1.0 - 1e-12)) {
            // Equal up to rounding: extending the prefix means the extra
            // points tie the optimal ratio, and ties go positive.
            best_k = k;
        }
    }

    OptimalRuleResult result;
    result.decision.assign(n, 0);
    for (std::size_t k = 0; k < best_k; ++k) {
        result.decision[order[k]] = 1;
    }
    result.rates = confusion_fractions(dist, result.decision);
    result.f1 = f1_score(result.rates.tp, result.rates.fp, result.rates.fn);
    result.jaccard = result.f1 / (2.0 - result.f1);
    return result;
}

double calibrated_threshold(double max_f1) {
    if (!(max_f1 >= 0.0 && max_f1 <= 1.0)) {
        throw std::invalid_argument("maximum F1 must lie in [0, 1]");
    }
    return max_f1 / 2.0;
}

double uninformative_expected_f1(double base_rate, double n, double c) {
    if (!(base_rate > 0.0 && base_rate < 1.0)) {
        throw std::invalid_argument("base rate must lie strictly between 0 and 1");
    }
    if (n <= 0.0 || c < 0.0 || c > n) {
        throw std::invalid_argument("predicted-positive count must lie in [0, n]");
    }
    if (c == 0.0) {
        return 0.0;
    }
    return 2.0 * c * base_rate / (base_rate * n + c);
}

std::vector<double> uninformative_curve(const std::vector<double>& base_rates) {
    std::vector<double> out;
    out.reserve(base_rates.size());
    for (double b : base_rates) {
        if (!(b > 0.0 && b < 1.0)) {
            throw std::invalid_argument("base rate must lie strictly between 0 and 1");
        }
        out.push_back(2.0 * b / (1.0 + b));
    }
    return out;
}

RareLabelImpact rare_label_impact(double tp, double fp, double fn,
                                  double base_rate, double instances) {
    if (tp < 0.0 || fp < 0.0 || fn < 0.0) {
        throw std::invalid_argument("counts must be non-negative");
    }
    const double rare = base_rate * instances;
    if (rare < 0.0) {
        throw std::invalid_argument("rare-label positive count must be non-negative");
    }
    RareLabelImpact impact;
    impact.with_rare_perfect = f1_score(tp + rare, fp, fn);
    impact.with_rare_ignored = f1_score(tp, fp, fn + rare);
    impact.ratio = impact.with_rare_perfect / impact.with_rare_ignored;
    return impact;
}

}  // namespace f1opt

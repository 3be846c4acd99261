#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "f1opt/metrics.hpp"
#include "f1opt/rng.hpp"
#include "f1opt/thresholding.hpp"

using namespace f1opt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double f1_at(const std::vector<double>& scores,
             const std::vector<std::uint8_t>& labels, double threshold,
             double empty_value = kEmptyMatchScore) {
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool pred = scores[i] >= threshold;
        tp += pred && labels[i];
        fp += pred && !labels[i];
        fn += !pred && labels[i];
    }
    return f1_score(tp, fp, fn, empty_value);
}

}  // namespace

TEST_CASE("best threshold on small worked examples") {
    const ThresholdSearchResult r =
        best_threshold({0.9, 0.8, 0.3}, {1, 0, 1});
    CHECK(r.threshold == 0.3);
    CHECK(r.f1 == doctest::Approx(0.8).epsilon(1e-15));
    REQUIRE(r.sweep.size() == 4);  // +inf plus three distinct scores
    CHECK(std::isinf(r.sweep[0].first));
    CHECK(r.sweep[0].second == 0.0);
    CHECK(r.sweep[1] == std::pair(0.9, 2.0 / 3.0));
    CHECK(r.sweep[2] == std::pair(0.8, 0.5));
    CHECK(r.sweep[3] == std::pair(0.3, 0.8));
}

TEST_CASE("separable scores reach f1 one at the smallest positive score") {
    const ThresholdSearchResult r =
        best_threshold({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0});
    CHECK(r.f1 == 1.0);
    CHECK(r.threshold == 0.8);
}

TEST_CASE("no gold positives means predict nothing") {
    const ThresholdSearchResult keep =
        best_threshold({0.4, 0.6}, {0, 0});
    CHECK(std::isinf(keep.threshold));
    CHECK(keep.f1 == 1.0);

    const ThresholdSearchResult strict =
        best_threshold({0.4, 0.6}, {0, 0}, 0.0);
    CHECK(std::isinf(strict.threshold));
    CHECK(strict.f1 == 0.0);
}

TEST_CASE("f1 ties break toward the larger threshold") {
    // Thresholds 0.9 and 0.6 both score 2/3; the sweep keeps the first.
    const ThresholdSearchResult r =
        best_threshold({0.9, 0.8, 0.7, 0.6}, {1, 0, 0, 1});
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.threshold == 0.9);
}

TEST_CASE("duplicate scores enter the sweep as one candidate") {
    const ThresholdSearchResult r =
        best_threshold({0.5, 0.5, 0.2}, {1, 0, 1});
    CHECK(r.sweep.size() == 3);
    CHECK(r.threshold == 0.2);
    CHECK(r.f1 == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("sweep entries match a direct recount at each candidate") {
    auto g = seeded_engine(90210);
    std::vector<double> scores(40);
    std::vector<std::uint8_t> labels(40);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        // A coarse alphabet forces plenty of duplicate scores.
        scores[i] = std::floor(uniform01(g) * 8.0) / 8.0;
        labels[i] = bernoulli(g, 0.4) ? 1 : 0;
    }
    const ThresholdSearchResult r = best_threshold(scores, labels);
    for (const auto& [thr, f1] : r.sweep) {
        CHECK(f1 == doctest::Approx(f1_at(scores, labels, thr)).epsilon(1e-12));
    }
    // Evaluation order is strictly descending.
    for (std::size_t k = 1; k < r.sweep.size(); ++k) {
        CHECK(r.sweep[k].first < r.sweep[k - 1].first);
    }
}

TEST_CASE("sweep is exhaustive over achievable prediction sets") {
    auto g = seeded_engine(8086);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(uniform01(g) * 100);
        std::vector<double> scores(n);
        std::vector<std::uint8_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = std::floor(uniform01(g) * 16.0) / 16.0;
            labels[i] = bernoulli(g, 0.3) ? 1 : 0;
        }
        const ThresholdSearchResult r = best_threshold(scores, labels, 0.0);

        // Any rule of the "score >= t" form predicts positive on a prefix of
        // the score-sorted order, so trying every cut is exhaustive.
        std::vector<double> sorted = scores;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double best = f1_at(scores, labels, kInf, 0.0);
        for (double cut : sorted) {
            best = std::max(best, f1_at(scores, labels, cut, 0.0));
        }
        CHECK(r.f1 == doctest::Approx(best).epsilon(1e-12));
        CHECK(f1_at(scores, labels, r.threshold, 0.0) ==
              doctest::Approx(r.f1).epsilon(1e-12));

        // No candidate above the returned threshold does as well.
        for (const auto& [thr, f1] : r.sweep) {
            if (thr > r.threshold) {
                CHECK(f1 < r.f1);
            }
        }
    }
}

TEST_CASE("calibrated scores put the best threshold near half the best f1") {
    auto g = seeded_engine(123457);
    const std::size_t n = 100000;
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        scores[i] = uniform01(g);
        labels[i] = bernoulli(g, scores[i]) ? 1 : 0;
    }
    const ThresholdSearchResult r = best_threshold(scores, labels);
    CHECK(std::abs(r.threshold - r.f1 / 2.0) <= 0.02);
    CHECK(r.threshold < 0.5);
}

TEST_CASE("threshold search input validation") {
    CHECK_THROWS_AS(best_threshold({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(best_threshold({0.5}, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(best_threshold({kInf}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(best_threshold({0.5}, {2}), std::invalid_argument);
}

namespace {

// 1000 instances, two labels: the common one has 500 positives behind a
// constant score 0.5, the rare one 100 positives behind a constant 0.1.
// Constant scores leave each per-label sweep only all-or-nothing choices.
struct TwoLabelFixture {
    ScoreMatrix scores{1000, 2};
    LabelMatrix gold{1000, 2};

    TwoLabelFixture() {
        for (std::size_t i = 0; i < 1000; ++i) {
            scores.set(i, 0, 0.5);
            scores.set(i, 1, 0.1);
            gold.set(i, 0, i < 500);
            gold.set(i, 1, i < 100);
        }
    }
};

}  // namespace

TEST_CASE("macro tuning keeps every label in play") {
    const TwoLabelFixture fx;
    const MultilabelThresholds t = tune_macro(fx.scores, fx.gold);
    CHECK(t.objective == TuneObjective::macro);
    CHECK(t.per_label == std::vector<double>{0.5, 0.1});
    // Per-label F1: 1000/1500 and 200/1100, averaged.
    CHECK(t.achieved == doctest::Approx(0.5 * (2.0 / 3.0 + 2.0 / 11.0))
                            .epsilon(1e-12));
    CHECK(t.converged);

    const LabelMatrix pred = apply_thresholds(fx.scores, t.per_label);
    CHECK(macro_f1(pred, fx.gold) == doctest::Approx(t.achieved).epsilon(1e-12));
}

TEST_CASE("micro tuning silences the rare label the macro sweep kept") {
    const TwoLabelFixture fx;
    const MultilabelThresholds t = tune_micro(fx.scores, fx.gold);
    CHECK(t.objective == TuneObjective::micro);
    CHECK(t.per_label[0] == 0.5);
    CHECK(std::isinf(t.per_label[1]));
    CHECK(t.achieved == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(t.converged);

    // Trace starts at the pooled value of the macro thresholds and records
    // the single accepted update.
    REQUIRE(t.trace.size() == 2);
    CHECK(t.trace[0] == doctest::Approx(6.0 / 13.0).epsilon(1e-12));
    CHECK(t.trace[1] == doctest::Approx(0.625).epsilon(1e-12));

    const LabelMatrix pred = apply_thresholds(fx.scores, t.per_label);
    CHECK(micro_f1(pred, fx.gold) == doctest::Approx(t.achieved).epsilon(1e-12));
}

TEST_CASE("single-label micro tuning reduces to the plain sweep") {
    auto g = seeded_engine(424242);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(uniform01(g) * 30);
        ScoreMatrix scores(n, 1);
        LabelMatrix gold(n, 1);
        std::vector<double> col(n);
        std::vector<std::uint8_t> lab(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = std::floor(uniform01(g) * 10.0) / 10.0;
            lab[i] = bernoulli(g, 0.5) ? 1 : 0;
            scores.set(i, 0, col[i]);
            gold.set(i, 0, lab[i] != 0);
        }
        const ThresholdSearchResult plain = best_threshold(col, lab);
        const MultilabelThresholds t = tune_micro(scores, gold);
        CHECK(t.per_label[0] == plain.threshold);
        CHECK(t.achieved == doctest::Approx(plain.f1).epsilon(1e-12));
    }
}

TEST_CASE("micro tuning trace never decreases and beats or matches macro") {
    auto g = seeded_engine(777);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 30;
        const std::size_t m = 4;
        ScoreMatrix scores(n, m);
        LabelMatrix gold(n, m);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                scores.set(i, j, std::floor(uniform01(g) * 6.0) / 6.0);
                gold.set(i, j, bernoulli(g, 0.25));
            }
        }
        const MultilabelThresholds macro = tune_macro(scores, gold);
        const MultilabelThresholds micro = tune_micro(scores, gold);
        for (std::size_t k = 1; k < micro.trace.size(); ++k) {
            CHECK(micro.trace[k] >= micro.trace[k - 1]);
        }
        CHECK(micro.converged);
        const double macro_pooled =
            micro_f1(apply_thresholds(scores, macro.per_label), gold);
        CHECK(micro.achieved >= macro_pooled - 1e-12);
        CHECK(micro.achieved ==
              doctest::Approx(micro_f1(apply_thresholds(scores, micro.per_label),
                                       gold))
                  .epsilon(1e-12));
    }
}

TEST_CASE("instance tuning per row") {
    const ScoreMatrix probs({{0.9, 0.05}, {0.5, 0.5}, {0.0, 0.0}}, true);
    const InstanceTuneResult r = tune_instance(probs);
    CHECK(r.predictions ==
          LabelMatrix{{1, 0}, {1, 1}, {0, 0}});
    CHECK(r.per_row_expected[0] == doctest::Approx(0.885).epsilon(1e-12));
    CHECK(r.per_row_expected[1] == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
    CHECK(r.per_row_expected[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.mean_expected ==
          doctest::Approx((0.885 + 7.0 / 12.0 + 1.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("instance tuning refuses uncalibrated scores") {
    const ScoreMatrix raw({{0.9, 0.1}});
    CHECK_THROWS_AS(tune_instance(raw), std::invalid_argument);
}

TEST_CASE("threshold application uses score >= threshold") {
    const ScoreMatrix scores({{0.5, 0.2}, {0.4, 0.8}});
    const LabelMatrix pred = apply_thresholds(scores, {0.5, kInf});
    CHECK(pred == LabelMatrix{{1, 0}, {0, 0}});
    CHECK_THROWS_AS(apply_thresholds(scores, {0.5}), std::invalid_argument);
}

TEST_CASE("tuning rejects mismatched shapes") {
    const ScoreMatrix scores({{0.5, 0.2}});
    const LabelMatrix gold{{1, 0}, {0, 1}};
    CHECK_THROWS_AS(tune_macro(scores, gold), std::invalid_argument);
    CHECK_THROWS_AS(tune_micro(scores, gold), std::invalid_argument);
}

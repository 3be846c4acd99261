#pragma once

#include <cstdint>

namespace f1opt {

// Score returned when a metric's denominator is zero, i.e. an all-negative
// prediction exactly matches an all-negative gold standard. The default
// treats that as a perfect score; pass 0.0 to switch conventions.
inline constexpr double kEmptyMatchScore = 1.0;

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }

    ConfusionCounts& operator+=(const ConfusionCounts& other) {
        tp += other.tp;
        fp += other.fp;
        fn += other.fn;
        tn += other.tn;
        return *this;
    }

    bool operator==(const ConfusionCounts&) const = default;
};

// F1 on raw cell values. Works for integer counts and for the fractional
// rates used when the confusion cells are probability masses.
double f1_score(double tp, double fp, double fn,
                double empty_value = kEmptyMatchScore);

double f1_from_counts(const ConfusionCounts& c,
                      double empty_value = kEmptyMatchScore);
double precision(const ConfusionCounts& c,
                 double empty_value = kEmptyMatchScore);
double recall(const ConfusionCounts& c,
              double empty_value = kEmptyMatchScore);

// (tp + tn) / total. Throws std::invalid_argument when total() == 0.
double accuracy(const ConfusionCounts& c);

// tp / (tp + fn + fp); a monotone function of F1 via J = F / (2 - F).
double jaccard(const ConfusionCounts& c,
               double empty_value = kEmptyMatchScore);

}  // namespace f1opt

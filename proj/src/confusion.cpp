#include "f1opt/confusion.hpp"

#include <stdexcept>

namespace f1opt {

double f1_score(double tp, double fp, double fn, double empty_value) {
    const double den = 2.0 * tp + fp + fn;
    if (den == 0.0) {
        return empty_value;
    }
    return 2.0 * tp / den;
}

double f1_from_counts(const ConfusionCounts& c, double empty_value) {
    return f1_score(static_cast<double>(c.tp), static_cast<double>(c.fp),
                    static_cast<double>(c.fn), empty_value);
}

double precision(const ConfusionCounts& c, double empty_value) {
    const std::uint64_t den = c.tp + c.fp;
    if (den == 0) {
        return empty_value;
    }
    return static_cast<double>(c.tp) / static_cast<double>(den);
}

double recall(const ConfusionCounts& c, double empty_value) {
    const std::uint64_t den = c.tp + c.fn;
    if (den == 0) {
        return empty_value;
    }
    return static_cast<double>(c.tp) / static_cast<double>(den);
}

double accuracy(const ConfusionCounts& c) {
    const std::uint64_t den = c.total();
    if (den == 0) {
        throw std::invalid_argument("accuracy: empty confusion counts");
    }
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(den);
}

double jaccard(const ConfusionCounts& c, double empty_value) {
    const std::uint64_t den = c.tp + c.fn + c.fp;
    if (den == 0) {
        return empty_value;
    }
    return static_cast<double>(c.tp) / static_cast<double>(den);
}

}  // namespace f1opt

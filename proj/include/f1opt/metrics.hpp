#pragma once

#include <cstddef>

#include "f1opt/confusion.hpp"
#include "f1opt/matrix.hpp"

namespace f1opt {

// Pools all n*m cells into one table. Throws std::invalid_argument on a
// shape mismatch, as do all the pred/gold metrics below.
ConfusionCounts confusion(const LabelMatrix& pred, const LabelMatrix& gold);

// Counts restricted to one label column / one instance row.
ConfusionCounts column_confusion(const LabelMatrix& pred, const LabelMatrix& gold,
                                 std::size_t j);
ConfusionCounts row_confusion(const LabelMatrix& pred, const LabelMatrix& gold,
                              std::size_t i);

// F1 over the pooled confusion table.
double micro_f1(const LabelMatrix& pred, const LabelMatrix& gold,
                double empty_value = kEmptyMatchScore);

// Mean of the m per-label F1 scores.
double macro_f1(const LabelMatrix& pred, const LabelMatrix& gold,
                double empty_value = kEmptyMatchScore);

// Mean of the n per-instance F1 scores.
double instance_f1(const LabelMatrix& pred, const LabelMatrix& gold,
                   double empty_value = kEmptyMatchScore);

// Fraction of cells where pred and gold agree.
double multilabel_accuracy(const LabelMatrix& pred, const LabelMatrix& gold);

}  // namespace f1opt

#pragma once

#include <cstddef>
#include <span>

#include "gaussrisk/dataset.hpp"
#include "gaussrisk/model.hpp"

namespace gaussrisk {

/// How a positive/negative pair with equal scores is credited.
enum class AucTies {
    Strict,   // 0: only s+ > s- counts
    Midrank,  // 1/2, the rank-sum convention
};

struct EvalResult {
    double accuracy = 0.0;
    double auc = 0.0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

/// Fraction of samples with sign(w'x + b) == y, where sign(0) = +1.
double empirical_accuracy(const LinearModel& model, const Dataset& dataset);

/// Wilcoxon-Mann-Whitney AUC, O(n log n). Throws InvalidArgument for a single-class dataset.
double empirical_auc(const LinearModel& model, const Dataset& dataset, AucTies ties = AucTies::Strict);

/// AUC of precomputed scores; labels are +1/-1.
double auc_from_scores(std::span<const double> scores, std::span<const int> labels, AucTies ties = AucTies::Strict);

/// Accuracy and, when both classes are present, AUC (otherwise auc is NaN).
EvalResult evaluate_model(const LinearModel& model, const Dataset& dataset);

}  // namespace gaussrisk

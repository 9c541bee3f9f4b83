#pragma once

#include "gaussrisk/dataset.hpp"
#include "gaussrisk/model.hpp"
#include "gaussrisk/moments.hpp"
#include "gaussrisk/objectives.hpp"

namespace gaussrisk {

/// Regularized logistic loss (1/n) sum log(1 + exp(-y w'x)) + lambda ||w||^2 and its gradient.
ObjectiveEval logistic_eval(const Vector& w, const Dataset& dataset, double lambda);

/// Which side of a positive/negative pair the hinge margin favors.
enum class HingeOrientation {
    /// max{0, 1 - (f(x+) - f(x-))}: positives should out-score negatives by 1.
    PositiveAbove,
    /// max{0, 1 - (f(x-) - f(x+))}: the reversed sign, kept for auditing.
    NegativeAbove,
};

/// Mean pairwise hinge loss over all positive/negative pairs and its
/// gradient, in O(n log n) by sorting scores (pairs are never materialized).
/// Throws InvalidArgument for a single-class dataset.
ObjectiveEval pairwise_hinge_eval(const Vector& w, const Dataset& dataset,
                                  HingeOrientation orientation = HingeOrientation::PositiveAbove);

/// Fisher/LDA rule from class moments:
///   w = S_pooled^{-1} (mu+ - mu-),  b = -w'(mu+ + mu-)/2 + ln(P+/P-),
/// with S_pooled = P+ S+ + P- S-. A ridge of 1e-8 * trace/d is added if
/// S_pooled is not positive definite; throws SingularModel if that fails and
/// DegenerateModel when the means coincide.
LinearModel lda_fit(const ClassMoments& moments);

class LogisticObjective final : public Objective {
public:
    /// lambda < 0 selects the default 1/n.
    LogisticObjective(const Dataset& dataset, double lambda = -1.0);

    std::size_t dim() const override { return dataset_->dim(); }
    double value(const Vector& w) const override;
    ObjectiveEval evaluate(const Vector& w) const override;

    double lambda() const noexcept { return lambda_; }

private:
    const Dataset* dataset_;
    double lambda_;
};

class PairwiseHingeObjective final : public Objective {
public:
    explicit PairwiseHingeObjective(const Dataset& dataset,
                                    HingeOrientation orientation = HingeOrientation::PositiveAbove);

    std::size_t dim() const override { return dataset_->dim(); }
    double value(const Vector& w) const override { return evaluate(w).value; }
    ObjectiveEval evaluate(const Vector& w) const override {
        return pairwise_hinge_eval(w, *dataset_, orientation_);
    }

private:
    const Dataset* dataset_;
    HingeOrientation orientation_;
};

}  // namespace gaussrisk

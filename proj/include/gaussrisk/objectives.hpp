#pragma once

#include <cstddef>

#include "gaussrisk/linalg.hpp"
#include "gaussrisk/moments.hpp"

namespace gaussrisk {

struct ObjectiveEval {
    double value = 0.0;
    Vector gradient;
};

/// A differentiable objective over linear-classifier weights.
///
/// value() is called for line-search trial points; evaluate() additionally
/// produces the gradient. Implementations are immutable and thread-safe.
class Objective {
public:
    virtual ~Objective() = default;
    virtual std::size_t dim() const = 0;
    virtual double value(const Vector& w) const = 0;
    virtual ObjectiveEval evaluate(const Vector& w) const = 0;
};

/// |w'mu / sqrt(w'Sw)| is clamped to this before phi and its density.
inline constexpr double kRatioClamp = 40.0;

// Expected 0-1 error of sign(w'x) when each class is Gaussian:
//   P(+) * phi(-mu+_w / s+_w) + P(-) * phi(mu-_w / s-_w)
// with mu_w = w'mu, s_w = sqrt(w'Sw). Invariant under positive scaling of w.
double f_error(const Vector& w, const ClassMoments& m);
Vector grad_f_error(const Vector& w, const ClassMoments& m);
ObjectiveEval eval_error(const Vector& w, const ClassMoments& m);

// Expected ranking loss 1 - AUC = P(w'X+ <= w'X-) = phi(w'mu_hat / sqrt(w'S_hat w)).
double f_auc(const Vector& w, const AucMoments& a);
Vector grad_f_auc(const Vector& w, const AucMoments& a);
ObjectiveEval eval_auc(const Vector& w, const AucMoments& a);

/// Expected prediction error under a class-moment model. Holds moments only,
/// so one evaluation costs O(d^2) regardless of how many samples built them.
class ExpectedErrorObjective final : public Objective {
public:
    explicit ExpectedErrorObjective(ClassMoments moments);

    std::size_t dim() const override { return moments_.dim(); }
    double value(const Vector& w) const override { return f_error(w, moments_); }
    ObjectiveEval evaluate(const Vector& w) const override { return eval_error(w, moments_); }

    const ClassMoments& moments() const noexcept { return moments_; }

private:
    ClassMoments moments_;
};

/// Expected ranking loss (1 - AUC) under a difference-moment model.
class RankingLossObjective final : public Objective {
public:
    explicit RankingLossObjective(AucMoments moments);

    std::size_t dim() const override { return static_cast<std::size_t>(moments_.mu_hat.size()); }
    double value(const Vector& w) const override { return f_auc(w, moments_); }
    ObjectiveEval evaluate(const Vector& w) const override { return eval_auc(w, moments_); }

    const AucMoments& moments() const noexcept { return moments_; }

private:
    AucMoments moments_;
};

}  // namespace gaussrisk

#pragma once

#include <optional>

#include "gaussrisk/dataset.hpp"
#include "gaussrisk/linalg.hpp"

namespace gaussrisk {

/// Per-class Gaussian model: means, covariances and class priors.
struct ClassMoments {
    Vector mu_pos;
    Vector mu_neg;
    Matrix sigma_pos;
    Matrix sigma_neg;
    double prior_pos = 0.5;
    double prior_neg = 0.5;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(mu_pos.size()); }

    /// Throws InvalidArgument / InvalidModel when the invariants do not hold:
    /// matching dimensions, symmetric PSD covariances, priors in (0,1) summing to 1.
    void validate() const;
};

/// Moments of the pairwise difference X- - X+ that drive the ranking loss.
struct AucMoments {
    Vector mu_hat;     // mu- - mu+
    Matrix sigma_hat;  // S-- + S++ - S-+ - S+-
};

struct ProjectedStats {
    double mean = 0.0;    // w' mu
    double stddev = 0.0;  // sqrt(w' S w)
};

/// Projections with stddev below this are treated as degenerate.
inline constexpr double kDegenerateSigma = 1e-12;

/// Sample means, (n-1)-denominator covariances and class frequencies.
/// Throws InsufficientData if either class has fewer than two samples.
ClassMoments estimate_class_moments(const Dataset& dataset);

/// Difference-variable moments. `cross_cov` is the block Cov(X+, X-); when
/// absent the classes are taken as independent. Throws InvalidModel when the
/// supplied cross term makes sigma_hat indefinite.
AucMoments auc_moments(const ClassMoments& moments, const std::optional<Matrix>& cross_cov = std::nullopt);

/// (w' mu, sqrt(w' S w)). Throws DegenerateProjection when the stddev is below kDegenerateSigma.
ProjectedStats projected_stats(const Vector& w, const Vector& mu, const Matrix& sigma);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& symmetric);

}  // namespace gaussrisk

#include "gaussrisk/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaussrisk/error.hpp"
#include "gaussrisk/kernels.hpp"

namespace gaussrisk {

namespace {

constexpr double kPsdTolerance = 1e-10;

// Absolute for unit-scale matrices, relative for large ones.
double psd_tolerance(const Matrix& m) {
    return kPsdTolerance * std::max(1.0, m.cwiseAbs().maxCoeff());
}

void check_covariance(const Matrix& sigma, Eigen::Index d, const char* name) {
    if (sigma.rows() != d || sigma.cols() != d) {
        throw InvalidArgument(std::string(name) + " has the wrong shape");
    }
    if (!sigma.allFinite()) throw InvalidModel(std::string(name) + " has non-finite entries");
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidModel(std::string(name) + " is not symmetric");
    }
    if (min_eigenvalue(sigma) < -psd_tolerance(sigma)) {
        throw InvalidModel(std::string(name) + " is not positive semidefinite");
    }
}

}  // namespace

double min_eigenvalue(const Matrix& symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void ClassMoments::validate() const {
    const Eigen::Index d = mu_pos.size();
    if (d < 1) throw InvalidArgument("class moments must have dimension >= 1");
    if (mu_neg.size() != d) throw InvalidArgument("mu_pos and mu_neg differ in dimension");
    if (!mu_pos.allFinite() || !mu_neg.allFinite()) throw InvalidModel("non-finite class mean");
    check_covariance(sigma_pos, d, "sigma_pos");
    check_covariance(sigma_neg, d, "sigma_neg");
    if (!(prior_pos > 0.0 && prior_pos < 1.0 && prior_neg > 0.0 && prior_neg < 1.0)) {
        throw InvalidModel("class priors must lie in (0, 1)");
    }
    if (std::abs(prior_pos + prior_neg - 1.0) > 1e-12) {
        throw InvalidModel("class priors must sum to 1");
    }
}

ClassMoments estimate_class_moments(const Dataset& dataset) {
    const std::size_t n_pos = dataset.count_positive();
    const std::size_t n_neg = dataset.count_negative();
    if (n_pos < 2 || n_neg < 2) {
        throw InsufficientData("need at least two samples per class, have " + std::to_string(n_pos) +
                               " positive and " + std::to_string(n_neg) + " negative");
    }
    auto pos = kernels::mean_covariance(dataset.class_rows(1));
    auto neg = kernels::mean_covariance(dataset.class_rows(-1));
    ClassMoments m;
    m.mu_pos = std::move(pos.mean);
    m.sigma_pos = std::move(pos.covariance);
    m.mu_neg = std::move(neg.mean);
    m.sigma_neg = std::move(neg.covariance);
    m.prior_pos = static_cast<double>(n_pos) / static_cast<double>(dataset.size());
    m.prior_neg = static_cast<double>(n_neg) / static_cast<double>(dataset.size());
    return m;
}

AucMoments auc_moments(const ClassMoments& moments, const std::optional<Matrix>& cross_cov) {
    const Eigen::Index d = moments.mu_pos.size();
    if (moments.mu_neg.size() != d || moments.sigma_pos.rows() != d || moments.sigma_pos.cols() != d ||
        moments.sigma_neg.rows() != d || moments.sigma_neg.cols() != d) {
        throw InvalidArgument("auc_moments: dimension mismatch");
    }
    AucMoments out;
    out.mu_hat = moments.mu_neg - moments.mu_pos;
    out.sigma_hat = moments.sigma_neg + moments.sigma_pos;
    if (cross_cov) {
        const Matrix& c = *cross_cov;
        if (c.rows() != d || c.cols() != d) throw InvalidArgument("auc_moments: cross covariance shape");
        out.sigma_hat -= c + c.transpose();
        if (min_eigenvalue(out.sigma_hat) < -psd_tolerance(out.sigma_hat)) {
            throw InvalidModel("cross covariance makes the difference covariance indefinite");
        }
    }
    return out;
}

ProjectedStats projected_stats(const Vector& w, const Vector& mu, const Matrix& sigma) {
    if (w.size() != mu.size() || sigma.rows() != w.size() || sigma.cols() != w.size()) {
        throw InvalidArgument("projected_stats: dimension mismatch");
    }
    const double variance = w.dot(sigma * w);
    if (!(variance >= kDegenerateSigma * kDegenerateSigma)) {
        throw DegenerateProjection("projected standard deviation below threshold");
    }
    return {w.dot(mu), std::sqrt(variance)};
}

}  // namespace gaussrisk

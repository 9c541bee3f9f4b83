#pragma once

// Reference implementations used only by tests. They are deliberately
// naive: direct quadrature, two-pass moments, explicit pair enumeration.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <vector>

#include "gaussrisk/dataset.hpp"
#include "gaussrisk/linalg.hpp"
#include "gaussrisk/moments.hpp"
#include "gaussrisk/random.hpp"

namespace oracle {

// P(Z <= x) by adaptive Gauss-Kronrod in long double. The integral runs over
// [x, 40] or [-40, x], whichever is the smaller tail, so the result keeps
// relative accuracy far into either tail.
inline long double normal_cdf(long double x) {
    using boost::math::quadrature::gauss_kronrod;
    auto pdf = [](long double t) { return std::exp(-0.5L * t * t) / std::sqrt(2.0L * 3.14159265358979323846264338327950288L); };
    if (x <= 0) {
        return gauss_kronrod<long double, 61>::integrate(pdf, -40.0L, x, 20, 1e-17L);
    }
    return 1.0L - gauss_kronrod<long double, 61>::integrate(pdf, x, 40.0L, 20, 1e-17L);
}

struct TwoPass {
    gaussrisk::Vector mean;
    gaussrisk::Matrix cov;
};

inline TwoPass two_pass(const gaussrisk::RowMatrix& x) {
    const auto n = x.rows();
    const auto d = x.cols();
    TwoPass out{gaussrisk::Vector::Zero(d), gaussrisk::Matrix::Zero(d, d)};
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) out.mean(j) += x(i, j);
    out.mean /= static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b) out.cov(a, b) += (x(i, a) - out.mean(a)) * (x(i, b) - out.mean(b));
    if (n > 1) out.cov /= static_cast<double>(n - 1);
    return out;
}

// Mean pairwise hinge loss and gradient by enumerating every pair.
struct HingeResult {
    double value;
    gaussrisk::Vector gradient;
};

inline HingeResult brute_hinge(const gaussrisk::Vector& w, const gaussrisk::Dataset& ds, bool positive_above = true) {
    const auto& x = ds.features();
    const auto& y = ds.labels();
    HingeResult r{0.0, gaussrisk::Vector::Zero(w.size())};
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (y[i] != 1) continue;
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (y[j] != -1) continue;
            ++pairs;
            gaussrisk::Vector diff = x.row(static_cast<Eigen::Index>(i)).transpose() - x.row(static_cast<Eigen::Index>(j)).transpose();
            if (!positive_above) diff = -diff;
            const double margin = 1.0 - w.dot(diff);
            if (margin > 0) {
                r.value += margin;
                r.gradient -= diff;
            }
        }
    }
    r.value /= static_cast<double>(pairs);
    r.gradient /= static_cast<double>(pairs);
    return r;
}

// Doubled WMW count: 2 per correctly ordered pair, `tie_credit` per tie.
inline double brute_auc(const std::vector<double>& s, const std::vector<int>& y, bool midrank) {
    long long num = 0;
    long long pairs = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (y[i] != 1) continue;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (y[j] != -1) continue;
            ++pairs;
            if (s[i] > s[j]) num += 2;
            else if (s[i] == s[j] && midrank) num += 1;
        }
    }
    return static_cast<double>(num) / static_cast<double>(2 * pairs);
}

// Random symmetric positive definite matrix B B'/d + jitter * I.
inline gaussrisk::Matrix random_spd(std::size_t d, gaussrisk::Rng& rng, double jitter = 0.1) {
    gaussrisk::Matrix b(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) b(i, j) = rng.normal();
    gaussrisk::Matrix s = b * b.transpose() / static_cast<double>(d);
    s += jitter * gaussrisk::Matrix::Identity(d, d);
    return 0.5 * (s + s.transpose());
}

inline gaussrisk::Vector random_vector(std::size_t d, gaussrisk::Rng& rng, double scale = 1.0) {
    gaussrisk::Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v(i) = scale * rng.normal();
    return v;
}

inline gaussrisk::ClassMoments random_moments(std::size_t d, gaussrisk::Rng& rng, double prior_pos = 0.5) {
    gaussrisk::ClassMoments m;
    m.mu_pos = random_vector(d, rng);
    m.mu_neg = random_vector(d, rng);
    m.sigma_pos = random_spd(d, rng);
    m.sigma_neg = random_spd(d, rng);
    m.prior_pos = prior_pos;
    m.prior_neg = 1.0 - prior_pos;
    return m;
}

// Central difference of f along every coordinate.
template <typename F>
gaussrisk::Vector central_difference(F&& f, const gaussrisk::Vector& w, double h) {
    gaussrisk::Vector g(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        gaussrisk::Vector a = w;
        gaussrisk::Vector b = w;
        a(i) += h;
        b(i) -= h;
        g(i) = (f(a) - f(b)) / (2 * h);
    }
    return g;
}

}  // namespace oracle

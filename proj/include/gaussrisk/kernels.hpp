#pragma once

// Data-parallel inner loops over the sample dimension.
//
// Every kernel has an OpenMP implementation (gaussrisk::kernels) and a plain
// serial reference (gaussrisk::kernels::serial) with the same signature. The
// references are written as direct loops and exist for testing and for the
// benchmark target; the library itself always calls the parallel versions.
//
// Reductions over samples are split into fixed chunks of kChunkRows rows and
// the per-chunk partials are combined in chunk order, so results are bitwise
// identical for any thread count.

#include <cstddef>
#include <cmath>
#include <span>

#include "gaussrisk/linalg.hpp"

namespace gaussrisk::kernels {

inline constexpr std::ptrdiff_t kChunkRows = 1024;

/// Sets the OpenMP thread count used by the kernels; n <= 0 leaves the runtime default.
void set_thread_count(int n);
int thread_count();

struct LogisticSums {
    double loss = 0.0;  // sum_i log(1 + exp(-y_i w'x_i))
    Vector gradient;    // sum_i of the per-sample gradient
};

struct MeanCovariance {
    Vector mean;
    Matrix covariance;  // denominator n - 1; zero matrix when n == 1
};

/// out = X w + intercept.
Vector scores(const RowMatrix& x, const Vector& w, double intercept = 0.0);

/// scores() into caller-owned storage, resized as needed.
void scores_into(const RowMatrix& x, const Vector& w, double intercept, Vector& out);

/// X' c.
Vector transpose_times(const RowMatrix& x, const Vector& coeffs);

LogisticSums logistic_sums(const RowMatrix& x, std::span<const int> labels, const Vector& w);

/// The loss part of logistic_sums alone.
double logistic_loss(const RowMatrix& x, std::span<const int> labels, const Vector& w);

MeanCovariance mean_covariance(const RowMatrix& x);

namespace serial {

Vector scores(const RowMatrix& x, const Vector& w, double intercept = 0.0);
Vector transpose_times(const RowMatrix& x, const Vector& coeffs);
LogisticSums logistic_sums(const RowMatrix& x, std::span<const int> labels, const Vector& w);
double logistic_loss(const RowMatrix& x, std::span<const int> labels, const Vector& w);
MeanCovariance mean_covariance(const RowMatrix& x);

}  // namespace serial

/// Numerically stable log(1 + exp(-m)).
inline double log1p_exp_neg(double m) {
    return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

/// 1 / (1 + exp(m)), stable for either sign of m.
inline double sigmoid_neg(double m) {
    if (m >= 0.0) {
        const double e = std::exp(-m);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(m));
}

}  // namespace gaussrisk::kernels

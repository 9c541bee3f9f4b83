#include "gaussrisk/error.hpp"
#include "gaussrisk/kernels.hpp"

namespace gaussrisk::kernels::serial {

using Index = Eigen::Index;

Vector scores(const RowMatrix& x, const Vector& w, double intercept) {
    if (x.cols() != w.size()) throw InvalidArgument("scores: dimension mismatch");
    Vector out(x.rows());
    for (Index i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (Index j = 0; j < x.cols(); ++j) s += x(i, j) * w[j];
        out[i] = s + intercept;
    }
    return out;
}

Vector transpose_times(const RowMatrix& x, const Vector& coeffs) {
    if (x.rows() != coeffs.size()) throw InvalidArgument("transpose_times: dimension mismatch");
    Vector out = Vector::Zero(x.cols());
    for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) out[j] += coeffs[i] * x(i, j);
    }
    return out;
}

LogisticSums logistic_sums(const RowMatrix& x, std::span<const int> labels, const Vector& w) {
    if (static_cast<std::size_t>(x.rows()) != labels.size() || x.cols() != w.size()) {
        throw InvalidArgument("logistic_sums: dimension mismatch");
    }
    LogisticSums out;
    out.gradient = Vector::Zero(x.cols());
    for (Index i = 0; i < x.rows(); ++i) {
        const double y = labels[static_cast<std::size_t>(i)];
        double s = 0.0;
        for (Index j = 0; j < x.cols(); ++j) s += x(i, j) * w[j];
        const double margin = y * s;
        out.loss += log1p_exp_neg(margin);
        const double c = -y * sigmoid_neg(margin);
        for (Index j = 0; j < x.cols(); ++j) out.gradient[j] += c * x(i, j);
    }
    return out;
}

double logistic_loss(const RowMatrix& x, std::span<const int> labels, const Vector& w) {
    return logistic_sums(x, labels, w).loss;
}

MeanCovariance mean_covariance(const RowMatrix& x) {
    const Index n = x.rows();
    const Index d = x.cols();
    if (n < 1) throw InvalidArgument("mean_covariance: no rows");
    MeanCovariance out;
    out.mean = Vector::Zero(d);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) out.mean[j] += x(i, j);
    }
    out.mean /= static_cast<double>(n);
    out.covariance = Matrix::Zero(d, d);
    if (n == 1) return out;
    for (Index j = 0; j < d; ++j) {
        for (Index k = j; k < d; ++k) {
            double s = 0.0;
            for (Index i = 0; i < n; ++i) s += (x(i, j) - out.mean[j]) * (x(i, k) - out.mean[k]);
            out.covariance(j, k) = s / static_cast<double>(n - 1);
            out.covariance(k, j) = out.covariance(j, k);
        }
    }
    return out;
}

}  // namespace gaussrisk::kernels::serial

#include "gaussrisk/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <vector>

#include "gaussrisk/error.hpp"

namespace gaussrisk::kernels {

namespace {

using Index = Eigen::Index;

Index chunk_count(Index n) { return (n + kChunkRows - 1) / kChunkRows; }

// Sums the columns of partials left to right.
Vector ordered_column_sum(const Matrix& partials) {
    Vector total = Vector::Zero(partials.rows());
    for (Index c = 0; c < partials.cols(); ++c) total += partials.col(c);
    return total;
}

}  // namespace

void set_thread_count(int n) {
    if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

Vector scores(const RowMatrix& x, const Vector& w, double intercept) {
    Vector out;
    scores_into(x, w, intercept, out);
    return out;
}

void scores_into(const RowMatrix& x, const Vector& w, double intercept, Vector& out) {
    if (x.cols() != w.size()) throw InvalidArgument("scores: dimension mismatch");
    const Index n = x.rows();
    out.resize(n);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[i] = x.row(i).dot(w) + intercept;
    }
}

Vector transpose_times(const RowMatrix& x, const Vector& coeffs) {
    if (x.rows() != coeffs.size()) throw InvalidArgument("transpose_times: dimension mismatch");
    const Index n = x.rows();
    const Index chunks = chunk_count(n);
    Matrix partials = Matrix::Zero(x.cols(), chunks);
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < chunks; ++c) {
        const Index r0 = c * kChunkRows;
        const Index len = std::min(kChunkRows, n - r0);
        partials.col(c).noalias() = x.middleRows(r0, len).transpose() * coeffs.segment(r0, len);
    }
    return ordered_column_sum(partials);
}

LogisticSums logistic_sums(const RowMatrix& x, std::span<const int> labels, const Vector& w) {
    const Index n = x.rows();
    if (static_cast<std::size_t>(n) != labels.size() || x.cols() != w.size()) {
        throw InvalidArgument("logistic_sums: dimension mismatch");
    }
    const Index chunks = chunk_count(n);
    Vector coeff(n);
    std::vector<double> chunk_loss(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < chunks; ++c) {
        const Index r0 = c * kChunkRows;
        const Index r1 = std::min(n, r0 + kChunkRows);
        double loss = 0.0;
        for (Index i = r0; i < r1; ++i) {
            const double y = labels[static_cast<std::size_t>(i)];
            const double margin = y * x.row(i).dot(w);
            loss += log1p_exp_neg(margin);
            coeff[i] = -y * sigmoid_neg(margin);
        }
        chunk_loss[static_cast<std::size_t>(c)] = loss;
    }
    LogisticSums out;
    for (double l : chunk_loss) out.loss += l;
    out.gradient = transpose_times(x, coeff);
    return out;
}

double logistic_loss(const RowMatrix& x, std::span<const int> labels, const Vector& w) {
    const Index n = x.rows();
    if (static_cast<std::size_t>(n) != labels.size() || x.cols() != w.size()) {
        throw InvalidArgument("logistic_loss: dimension mismatch");
    }
    const Index chunks = chunk_count(n);
    std::vector<double> chunk_loss(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < chunks; ++c) {
        const Index r0 = c * kChunkRows;
        const Index r1 = std::min(n, r0 + kChunkRows);
        double loss = 0.0;
        for (Index i = r0; i < r1; ++i) {
            loss += log1p_exp_neg(labels[static_cast<std::size_t>(i)] * x.row(i).dot(w));
        }
        chunk_loss[static_cast<std::size_t>(c)] = loss;
    }
    double total = 0.0;
    for (double l : chunk_loss) total += l;
    return total;
}

MeanCovariance mean_covariance(const RowMatrix& x) {
    const Index n = x.rows();
    const Index d = x.cols();
    if (n < 1) throw InvalidArgument("mean_covariance: no rows");
    MeanCovariance out;
    out.mean = transpose_times(x, Vector::Ones(n)) / static_cast<double>(n);
    out.covariance = Matrix::Zero(d, d);
    if (n == 1) return out;

    RowMatrix centered(n, d);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        centered.row(i) = x.row(i) - out.mean.transpose();
    }

    // Each thread owns a block of output columns; only the upper triangle is kept.
    constexpr Index kBlock = 32;
    const Index blocks = (d + kBlock - 1) / kBlock;
    Matrix& cov = out.covariance;
#pragma omp parallel for schedule(dynamic)
    for (Index b = 0; b < blocks; ++b) {
        const Index j0 = b * kBlock;
        const Index width = std::min(kBlock, d - j0);
        const Index rows = j0 + width;
        cov.block(0, j0, rows, width).noalias() =
            centered.leftCols(rows).transpose() * centered.middleCols(j0, width);
    }
    for (Index j = 0; j < d; ++j) {
        for (Index k = j + 1; k < d; ++k) cov(k, j) = cov(j, k);
    }
    cov /= static_cast<double>(n - 1);
    return out;
}

}  // namespace gaussrisk::kernels

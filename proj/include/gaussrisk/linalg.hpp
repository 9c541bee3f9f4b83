#pragma once

#include <Eigen/Dense>

namespace gaussrisk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Samples are rows; row-major keeps each sample contiguous for the per-sample kernels.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace gaussrisk

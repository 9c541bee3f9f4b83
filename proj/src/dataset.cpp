#include "gaussrisk/dataset.hpp"

#include <string>

#include "gaussrisk/error.hpp"

namespace gaussrisk {

Dataset::Dataset(RowMatrix features, std::vector<int> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw InvalidArgument("dataset must contain at least one sample");
    }
    if (static_cast<std::size_t>(features_.rows()) != labels_.size()) {
        throw InvalidArgument("dataset has " + std::to_string(features_.rows()) + " rows but " +
                              std::to_string(labels_.size()) + " labels");
    }
    if (features_.cols() < 1) {
        throw InvalidArgument("dataset must have at least one feature");
    }
    if (!features_.allFinite()) {
        throw InvalidArgument("dataset contains non-finite feature values");
    }
    for (int y : labels_) {
        if (y == 1) {
            ++n_pos_;
        } else if (y != -1) {
            throw InvalidArgument("labels must be +1 or -1, got " + std::to_string(y));
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    RowMatrix x(static_cast<Eigen::Index>(rows.size()), features_.cols());
    std::vector<int> y(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] >= size()) throw InvalidArgument("subset row index out of range");
        x.row(static_cast<Eigen::Index>(k)) = features_.row(static_cast<Eigen::Index>(rows[k]));
        y[k] = labels_[rows[k]];
    }
    return Dataset(std::move(x), std::move(y));
}

Dataset Dataset::with_labels(std::vector<int> labels) const {
    return Dataset(features_, std::move(labels));
}

RowMatrix Dataset::class_rows(int label) const {
    const std::size_t count = label == 1 ? count_positive() : count_negative();
    RowMatrix out(static_cast<Eigen::Index>(count), features_.cols());
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (labels_[i] == label) out.row(k++) = features_.row(static_cast<Eigen::Index>(i));
    }
    return out;
}

}  // namespace gaussrisk

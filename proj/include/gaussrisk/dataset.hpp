#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gaussrisk/linalg.hpp"

namespace gaussrisk {

/// Dense samples (rows) with +1/-1 labels.
///
/// Invariants, checked on construction: at least one sample, one label per
/// row, every feature finite, labels only +1 or -1.
class Dataset {
public:
    Dataset(RowMatrix features, std::vector<int> labels);

    const RowMatrix& features() const noexcept { return features_; }
    const std::vector<int>& labels() const noexcept { return labels_; }

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(features_.cols()); }
    std::size_t count_positive() const noexcept { return n_pos_; }
    std::size_t count_negative() const noexcept { return size() - n_pos_; }

    /// Rows selected by index, in the given order.
    Dataset subset(std::span<const std::size_t> rows) const;

    /// Same features, different labels (used by label-noise injection).
    Dataset with_labels(std::vector<int> labels) const;

    /// Features of one class, stacked in dataset order.
    RowMatrix class_rows(int label) const;

private:
    RowMatrix features_;
    std::vector<int> labels_;
    std::size_t n_pos_ = 0;
};

}  // namespace gaussrisk

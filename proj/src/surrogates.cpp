#include "gaussrisk/surrogates.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "gaussrisk/error.hpp"
#include "gaussrisk/kernels.hpp"

namespace gaussrisk {

void LinearModel::validate() const {
    if (w.size() < 1) throw InvalidArgument("linear model has no weights");
    if (!w.allFinite() || !std::isfinite(intercept)) {
        throw InvalidArgument("linear model has non-finite entries");
    }
}

ObjectiveEval logistic_eval(const Vector& w, const Dataset& dataset, double lambda) {
    if (!(lambda >= 0.0)) throw InvalidArgument("logistic_eval: lambda must be >= 0");
    if (static_cast<std::size_t>(w.size()) != dataset.dim()) {
        throw InvalidArgument("logistic_eval: dimension mismatch");
    }
    const double n = static_cast<double>(dataset.size());
    auto sums = kernels::logistic_sums(dataset.features(), dataset.labels(), w);
    ObjectiveEval out;
    out.value = sums.loss / n + lambda * w.squaredNorm();
    out.gradient = sums.gradient / n + 2.0 * lambda * w;
    return out;
}

namespace {

struct ScoredRow {
    double score;
    Eigen::Index row;
};

// Scratch buffers reused across evaluations on the same thread. Fresh
// multi-megabyte allocations are served by mmap and page-fault on every call,
// which dominated the evaluation time on large training sets.
struct HingeWorkspace {
    Vector scores;
    std::vector<ScoredRow> rows;
    std::vector<std::size_t> bucket_end;
    Vector coeff;
};

HingeWorkspace& workspace() {
    thread_local HingeWorkspace ws;
    return ws;
}

bool by_score(const ScoredRow& a, const ScoredRow& b) { return a.score < b.score; }

void insertion_sort(ScoredRow* first, ScoredRow* last) {
    for (ScoredRow* i = first + 1; i < last; ++i) {
        const ScoredRow v = *i;
        ScoredRow* j = i;
        for (; j > first && v.score < (j - 1)->score; --j) *j = *(j - 1);
        *j = v;
    }
}

// Buckets of one class: a monotone map from score to bucket index, offset so
// that all buckets of the high class precede those of the low class.
struct ClassBuckets {
    std::size_t count = 0;
    double lo = INFINITY;
    double hi = -INFINITY;
    double scale = 0.0;
    std::size_t buckets = 1;
    std::size_t offset = 0;
    bool spread = false;

    std::size_t of(double v) const {
        return offset + (spread ? std::min(buckets - 1, static_cast<std::size_t>((v - lo) * scale)) : 0);
    }
};

// Fills ws.rows with the high-label rows sorted by score followed by the
// low-label rows sorted by score; returns the number of high rows. Bucket sort
// over each class's score range: one counting pass, one scatter pass, then an
// insertion sort inside each bucket of about 8 rows. Expected linear time for
// spread-out scores; skewed buckets and small classes fall back to std::sort.
std::size_t split_sorted(const Vector& scores, const std::vector<int>& labels, int high_label, HingeWorkspace& ws) {
    constexpr std::size_t kSmall = 256;
    constexpr std::size_t kPerBucket = 8;
    constexpr std::size_t kInsertionMax = 32;
    const std::size_t n = labels.size();
    ClassBuckets cls[2];
    for (std::size_t i = 0; i < n; ++i) {
        ClassBuckets& c = cls[labels[i] == high_label ? 0 : 1];
        const double v = scores[static_cast<Eigen::Index>(i)];
        c.lo = std::min(c.lo, v);
        c.hi = std::max(c.hi, v);
        ++c.count;
    }
    for (ClassBuckets& c : cls) {
        if (c.count <= kSmall) continue;
        const std::size_t buckets = c.count / kPerBucket;
        const double scale = static_cast<double>(buckets) / (c.hi - c.lo);
        if (!std::isfinite(scale) || !(c.hi > c.lo)) continue;
        c.buckets = buckets;
        c.scale = scale;
        c.spread = true;
    }
    cls[1].offset = cls[0].buckets;
    const std::size_t total = cls[0].buckets + cls[1].buckets;

    std::vector<std::size_t>& end = ws.bucket_end;
    end.assign(total + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++end[cls[labels[i] == high_label ? 0 : 1].of(scores[static_cast<Eigen::Index>(i)]) + 1];
    }
    for (std::size_t k = 1; k <= total; ++k) end[k] += end[k - 1];
    ws.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const std::size_t k = cls[labels[i] == high_label ? 0 : 1].of(scores[row]);
        ws.rows[end[k]++] = {scores[row], row};
    }
    // end[k] now holds the end of bucket k.
    std::size_t begin = 0;
    for (std::size_t k = 0; k < total; ++k) {
        if (end[k] - begin <= kInsertionMax) {
            insertion_sort(ws.rows.data() + begin, ws.rows.data() + end[k]);
        } else {
            std::sort(ws.rows.data() + begin, ws.rows.data() + end[k], by_score);
        }
        begin = end[k];
    }
    return cls[0].count;
}

// Pairs (h, l) of "high" and "low" rows contribute max{0, 1 - (s_h - s_l)}.
// A pair is active when s_h < s_l + 1. For each low row, count_l = #{h active},
// for each high row, count_h = #{l active}; the gradient is
//   sum_l count_l x_l - sum_h count_h x_h.
ObjectiveEval hinge_sorted(const Dataset& dataset, const Vector& w, int high_label) {
    HingeWorkspace& ws = workspace();
    kernels::scores_into(dataset.features(), w, 0.0, ws.scores);
    const std::size_t n_high = split_sorted(ws.scores, dataset.labels(), high_label, ws);
    const std::span<const ScoredRow> high(ws.rows.data(), n_high);
    const std::span<const ScoredRow> low(ws.rows.data() + n_high, ws.rows.size() - n_high);

    // Both sweeps walk the sorted lists once. Low rows in ascending order see a
    // growing prefix of high rows below their threshold s_l + 1; high rows in
    // ascending order see a shrinking suffix of low thresholds above them.
    Vector& coeff = ws.coeff;
    coeff.resize(static_cast<Eigen::Index>(dataset.size()));
    double total = 0.0;
    double prefix = 0.0;
    std::size_t active = 0;
    for (const ScoredRow& l : low) {
        const double t = l.score + 1.0;
        while (active < high.size() && high[active].score < t) prefix += high[active++].score;
        total += static_cast<double>(active) * t - prefix;
        coeff[l.row] = static_cast<double>(active);
    }
    std::size_t below = 0;  // thresholds <= s_h
    for (const ScoredRow& h : high) {
        while (below < low.size() && low[below].score + 1.0 <= h.score) ++below;
        coeff[h.row] = -static_cast<double>(low.size() - below);
    }

    const double pairs = static_cast<double>(high.size()) * static_cast<double>(low.size());
    ObjectiveEval out;
    out.value = total / pairs;
    out.gradient = kernels::transpose_times(dataset.features(), coeff) / pairs;
    return out;
}

}  // namespace

ObjectiveEval pairwise_hinge_eval(const Vector& w, const Dataset& dataset, HingeOrientation orientation) {
    if (dataset.count_positive() == 0 || dataset.count_negative() == 0) {
        throw InvalidArgument("pairwise_hinge_eval: dataset needs both classes");
    }
    if (static_cast<std::size_t>(w.size()) != dataset.dim()) {
        throw InvalidArgument("pairwise_hinge_eval: dimension mismatch");
    }
    return hinge_sorted(dataset, w, orientation == HingeOrientation::PositiveAbove ? 1 : -1);
}

LinearModel lda_fit(const ClassMoments& moments) {
    moments.validate();
    const Vector diff = moments.mu_pos - moments.mu_neg;
    if (diff.norm() == 0.0) throw DegenerateModel("lda_fit: class means coincide");

    const Eigen::Index d = diff.size();
    Matrix pooled = moments.prior_pos * moments.sigma_pos + moments.prior_neg * moments.sigma_neg;
    Eigen::LLT<Matrix> llt(pooled);
    if (llt.info() != Eigen::Success) {
        const double jitter = 1e-8 * pooled.trace() / static_cast<double>(d);
        if (!(jitter > 0.0)) throw SingularModel("lda_fit: pooled covariance is zero");
        pooled.diagonal().array() += jitter;
        llt.compute(pooled);
        if (llt.info() != Eigen::Success) throw SingularModel("lda_fit: pooled covariance is singular");
    }
    LinearModel model;
    model.w = llt.solve(diff);
    model.intercept =
        -0.5 * model.w.dot(moments.mu_pos + moments.mu_neg) + std::log(moments.prior_pos / moments.prior_neg);
    model.validate();
    return model;
}

LogisticObjective::LogisticObjective(const Dataset& dataset, double lambda)
    : dataset_(&dataset), lambda_(lambda < 0.0 ? 1.0 / static_cast<double>(dataset.size()) : lambda) {}

double LogisticObjective::value(const Vector& w) const {
    if (static_cast<std::size_t>(w.size()) != dataset_->dim()) {
        throw InvalidArgument("logistic objective: dimension mismatch");
    }
    const double n = static_cast<double>(dataset_->size());
    return kernels::logistic_loss(dataset_->features(), dataset_->labels(), w) / n + lambda_ * w.squaredNorm();
}

ObjectiveEval LogisticObjective::evaluate(const Vector& w) const {
    return logistic_eval(w, *dataset_, lambda_);
}

PairwiseHingeObjective::PairwiseHingeObjective(const Dataset& dataset, HingeOrientation orientation)
    : dataset_(&dataset), orientation_(orientation) {
    if (dataset.count_positive() == 0 || dataset.count_negative() == 0) {
        throw InvalidArgument("pairwise hinge needs both classes");
    }
}

}  // namespace gaussrisk

#include "gaussrisk/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "gaussrisk/error.hpp"
#include "gaussrisk/kernels.hpp"

namespace gaussrisk {

namespace {

void check_model(const LinearModel& model, const Dataset& dataset) {
    model.validate();
    if (static_cast<std::size_t>(model.w.size()) != dataset.dim()) {
        throw InvalidArgument("model dimension " + std::to_string(model.w.size()) +
                              " does not match dataset dimension " + std::to_string(dataset.dim()));
    }
}

}  // namespace

double empirical_accuracy(const LinearModel& model, const Dataset& dataset) {
    check_model(model, dataset);
    const Vector scores = kernels::scores(dataset.features(), model.w, model.intercept);
    const auto& labels = dataset.labels();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int predicted = scores[static_cast<Eigen::Index>(i)] >= 0.0 ? 1 : -1;
        if (predicted == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double auc_from_scores(std::span<const double> scores, std::span<const int> labels, AucTies ties) {
    if (scores.size() != labels.size()) throw InvalidArgument("auc: scores and labels differ in length");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Walk groups of equal scores in ascending order. Counts are integers so
    // the result equals pair enumeration exactly; `credit` is doubled to keep
    // the midrank half-credits integral.
    std::uint64_t neg_below = 0;
    std::uint64_t n_pos = 0;
    std::uint64_t credit = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::uint64_t pos_here = 0;
        std::uint64_t neg_here = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] == 1 ? pos_here : neg_here) += 1;
            ++j;
        }
        credit += 2 * pos_here * neg_below;
        if (ties == AucTies::Midrank) credit += pos_here * neg_here;
        neg_below += neg_here;
        n_pos += pos_here;
        i = j;
    }
    const std::uint64_t n_neg = neg_below;
    if (n_pos == 0 || n_neg == 0) throw InvalidArgument("auc: need at least one sample of each class");
    return static_cast<double>(credit) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double empirical_auc(const LinearModel& model, const Dataset& dataset, AucTies ties) {
    check_model(model, dataset);
    if (dataset.count_positive() == 0 || dataset.count_negative() == 0) {
        throw InvalidArgument("empirical_auc: dataset needs both classes");
    }
    const Vector scores = kernels::scores(dataset.features(), model.w, model.intercept);
    return auc_from_scores(std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())),
                           dataset.labels(), ties);
}

EvalResult evaluate_model(const LinearModel& model, const Dataset& dataset) {
    EvalResult r;
    r.accuracy = empirical_accuracy(model, dataset);
    r.n_pos = dataset.count_positive();
    r.n_neg = dataset.count_negative();
    r.auc = (r.n_pos > 0 && r.n_neg > 0) ? empirical_auc(model, dataset) : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace gaussrisk

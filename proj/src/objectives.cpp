#include "gaussrisk/objectives.hpp"

#include <algorithm>

#include "gaussrisk/error.hpp"
#include "gaussrisk/special.hpp"

namespace gaussrisk {

namespace {

// g(w) = w'mu / sqrt(w'Sw); d/dw phi(g(w)) = pdf(g) * (s * mu - g * S w) / s^2.
struct Ratio {
    ProjectedStats stats;
    double raw;
    double clamped;
};

Ratio ratio_of(const Vector& w, const Vector& mu, const Matrix& sigma) {
    const ProjectedStats stats = projected_stats(w, mu, sigma);
    const double raw = stats.mean / stats.stddev;
    return {stats, raw, std::clamp(raw, -kRatioClamp, kRatioClamp)};
}

Vector ratio_gradient(const Ratio& r, const Vector& w, const Vector& mu, const Matrix& sigma) {
    const double s = r.stats.stddev;
    const double density = std_normal_pdf(r.clamped);
    return density * (s * mu - r.raw * (sigma * w)) / (s * s);
}

}  // namespace

double f_error(const Vector& w, const ClassMoments& m) {
    const Ratio pos = ratio_of(w, m.mu_pos, m.sigma_pos);
    const Ratio neg = ratio_of(w, m.mu_neg, m.sigma_neg);
    return m.prior_pos * std_normal_cdf(-pos.clamped) + m.prior_neg * std_normal_cdf(neg.clamped);
}

Vector grad_f_error(const Vector& w, const ClassMoments& m) {
    return eval_error(w, m).gradient;
}

ObjectiveEval eval_error(const Vector& w, const ClassMoments& m) {
    const Ratio pos = ratio_of(w, m.mu_pos, m.sigma_pos);
    const Ratio neg = ratio_of(w, m.mu_neg, m.sigma_neg);
    ObjectiveEval out;
    out.value = m.prior_pos * std_normal_cdf(-pos.clamped) + m.prior_neg * std_normal_cdf(neg.clamped);
    out.gradient = m.prior_neg * ratio_gradient(neg, w, m.mu_neg, m.sigma_neg) -
                   m.prior_pos * ratio_gradient(pos, w, m.mu_pos, m.sigma_pos);
    return out;
}

double f_auc(const Vector& w, const AucMoments& a) {
    return std_normal_cdf(ratio_of(w, a.mu_hat, a.sigma_hat).clamped);
}

Vector grad_f_auc(const Vector& w, const AucMoments& a) {
    return ratio_gradient(ratio_of(w, a.mu_hat, a.sigma_hat), w, a.mu_hat, a.sigma_hat);
}

ObjectiveEval eval_auc(const Vector& w, const AucMoments& a) {
    const Ratio r = ratio_of(w, a.mu_hat, a.sigma_hat);
    return {std_normal_cdf(r.clamped), ratio_gradient(r, w, a.mu_hat, a.sigma_hat)};
}

ExpectedErrorObjective::ExpectedErrorObjective(ClassMoments moments) : moments_(std::move(moments)) {
    moments_.validate();
}

RankingLossObjective::RankingLossObjective(AucMoments moments) : moments_(std::move(moments)) {
    const auto d = moments_.mu_hat.size();
    if (d < 1 || moments_.sigma_hat.rows() != d || moments_.sigma_hat.cols() != d) {
        throw InvalidArgument("ranking-loss moments have inconsistent dimensions");
    }
}

}  // namespace gaussrisk

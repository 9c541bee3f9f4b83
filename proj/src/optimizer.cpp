#include "gaussrisk/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "gaussrisk/random.hpp"

namespace gaussrisk {

void LineSearchConfig::validate() const {
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("line search: c must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("line search: beta must lie in (0, 1)");
    if (!(alpha0 > 0.0)) throw InvalidArgument("line search: alpha0 must be positive");
    if (max_iters < 1) throw InvalidArgument("line search: max_iters must be positive");
    if (!(grad_tol_rel > 0.0)) throw InvalidArgument("line search: grad_tol_rel must be positive");
    if (max_backtracks < 1) throw InvalidArgument("line search: max_backtracks must be positive");
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::GradientTolerance: return "gradient-tolerance";
        case Termination::MaxIterations: return "max-iterations";
        case Termination::LineSearchFailure: return "line-search-failure";
    }
    return "unknown";
}

OptimizationResult gd_backtracking(const Objective& objective, const Vector& w0, const LineSearchConfig& cfg) {
    cfg.validate();
    if (static_cast<std::size_t>(w0.size()) != objective.dim()) {
        throw InvalidArgument("gd_backtracking: starting point has the wrong dimension");
    }
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    OptimizationResult result;
    OptimizationTrace& trace = result.trace;
    Vector w = w0;
    ObjectiveEval current = objective.evaluate(w);
    double value = current.value;
    double grad_norm = current.gradient.norm();
    trace.initial_objective = value;
    trace.initial_grad_norm = grad_norm;
    const double stop_below = cfg.grad_tol_rel * grad_norm;

    trace.termination = Termination::MaxIterations;
    long backtracks = 0;
    try {
        for (int k = 1;; ++k) {
            if (grad_norm == 0.0 || grad_norm < stop_below) {
                trace.termination = Termination::GradientTolerance;
                break;
            }
            if (k > cfg.max_iters) break;

            const double decrease = cfg.c * grad_norm * grad_norm;
            double alpha = cfg.alpha0;
            bool accepted = false;
            Vector trial;
            double trial_value = 0.0;
            for (int j = 0; j <= cfg.max_backtracks; ++j) {
                trial = w - alpha * current.gradient;
                trial_value = objective.value(trial);
                if (trial_value <= value - alpha * decrease) {
                    accepted = true;
                    break;
                }
                if (j < cfg.max_backtracks) {
                    alpha *= cfg.beta;
                    ++backtracks;
                }
            }
            if (!accepted) {
                trace.termination = Termination::LineSearchFailure;
                break;
            }

            w = std::move(trial);
            current = objective.evaluate(w);
            // The accepted trial value is the one the Armijo test saw; keep it for replay.
            value = trial_value;
            grad_norm = current.gradient.norm();
            trace.iterations.push_back({k, value, grad_norm, alpha, backtracks, elapsed()});
        }
    } catch (const Error& e) {
        trace.total_seconds = elapsed();
        throw OptimizationAborted(e.what(), trace);
    }
    trace.total_seconds = elapsed();
    result.model.w = std::move(w);
    return result;
}

Vector init_w0_error(const ClassMoments& moments) {
    const Vector& mu_pos = moments.mu_pos;
    const Vector& mu_neg = moments.mu_neg;
    if (mu_pos.size() != mu_neg.size()) throw InvalidArgument("init_w0_error: dimension mismatch");
    const double pos_norm = mu_pos.norm();
    if (pos_norm == 0.0) throw NoInitializer("init_w0_error: positive class mean is zero");

    Vector w = mu_pos;
    const double neg_sq = mu_neg.squaredNorm();
    if (neg_sq > 0.0) w -= (mu_neg.dot(mu_pos) / neg_sq) * mu_neg;
    const double norm = w.norm();
    if (norm < 1e-12 * std::max(1.0, pos_norm)) return mu_pos / pos_norm;
    return w / norm;
}

Vector init_random(std::size_t d, std::uint64_t seed) {
    if (d < 1) throw InvalidArgument("init_random: d must be positive");
    Rng rng(seed);
    Vector w(static_cast<Eigen::Index>(d));
    double norm = 0.0;
    do {
        for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = rng.normal();
        norm = w.norm();
    } while (norm == 0.0);
    return w / norm;
}

}  // namespace gaussrisk

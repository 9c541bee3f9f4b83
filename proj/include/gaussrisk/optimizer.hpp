#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gaussrisk/error.hpp"
#include "gaussrisk/model.hpp"
#include "gaussrisk/moments.hpp"
#include "gaussrisk/objectives.hpp"

namespace gaussrisk {

struct LineSearchConfig {
    double c = 1e-4;             // Armijo sufficient-decrease constant, (0, 1)
    double beta = 0.5;           // backtracking factor, (0, 1)
    double alpha0 = 1.0;         // first trial step
    int max_iters = 250;
    double grad_tol_rel = 1e-7;  // stop once ||g_k|| < grad_tol_rel * ||g_0||
    int max_backtracks = 60;     // alpha0 * beta^60 ~ 1e-18

    void validate() const;
};

enum class Termination { GradientTolerance, MaxIterations, LineSearchFailure };

std::string_view to_string(Termination t);

/// State after accepted step `iter` (1-based).
struct IterationRecord {
    int iter = 0;
    double objective = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;       // alpha that produced this iterate
    long backtracks = 0;     // cumulative over the run
    double seconds = 0.0;    // wall clock since the run started
};

struct OptimizationTrace {
    double initial_objective = 0.0;
    double initial_grad_norm = 0.0;
    std::vector<IterationRecord> iterations;
    Termination termination = Termination::MaxIterations;
    double total_seconds = 0.0;
};

struct OptimizationResult {
    LinearModel model;
    OptimizationTrace trace;
};

/// Thrown when the objective fails part-way through a run; carries the trace so far.
class OptimizationAborted : public Error {
public:
    OptimizationAborted(const std::string& what, OptimizationTrace partial)
        : Error(what), trace_(std::move(partial)) {}

    const OptimizationTrace& trace() const noexcept { return trace_; }

private:
    OptimizationTrace trace_;
};

/// Gradient descent with Armijo backtracking.
///
/// Each iteration tries alpha0 * beta^j, j = 0..max_backtracks, and accepts the
/// first step with F(w - a g) <= F(w) - c a ||g||^2. Running out of
/// backtracks ends the run with LineSearchFailure and returns the incumbent.
OptimizationResult gd_backtracking(const Objective& objective, const Vector& w0, const LineSearchConfig& cfg = {});

/// Unit vector along mu+ with its component along mu- removed, falling back to
/// mu+/||mu+|| when the means are parallel. Throws NoInitializer when mu+ = 0.
Vector init_w0_error(const ClassMoments& moments);

/// d seeded standard-normal draws scaled to unit norm.
Vector init_random(std::size_t d, std::uint64_t seed);

}  // namespace gaussrisk

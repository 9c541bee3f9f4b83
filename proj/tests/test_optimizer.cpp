#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "gaussrisk/error.hpp"
#include "gaussrisk/optimizer.hpp"
#include "oracles.hpp"

using namespace gaussrisk;

namespace {

class Lambda final : public Objective {
public:
    Lambda(std::size_t d, std::function<double(const Vector&)> f, std::function<Vector(const Vector&)> g)
        : d_(d), f_(std::move(f)), g_(std::move(g)) {}
    std::size_t dim() const override { return d_; }
    double value(const Vector& w) const override { return f_(w); }
    ObjectiveEval evaluate(const Vector& w) const override { return {f_(w), g_(w)}; }

private:
    std::size_t d_;
    std::function<double(const Vector&)> f_;
    std::function<Vector(const Vector&)> g_;
};

// Recomputes the iterates from the trace and checks every Armijo inequality.
void replay(const Objective& obj, Vector w, const OptimizationTrace& trace, const LineSearchConfig& cfg) {
    double f = trace.initial_objective;
    for (const IterationRecord& r : trace.iterations) {
        const ObjectiveEval e = obj.evaluate(w);
        ASSERT_EQ(e.value, f);
        w -= r.step * e.gradient;
        const double next = obj.value(w);
        EXPECT_EQ(next, r.objective);
        EXPECT_LE(next, f - cfg.c * r.step * e.gradient.squaredNorm());
        EXPECT_GT(r.step, 0.0);
        EXPECT_LE(r.step, cfg.alpha0);
        f = next;
    }
}

}  // namespace

TEST(GdBacktracking, QuadraticInOneStep) {
    const Lambda obj(2, [](const Vector& w) { return 0.5 * w.squaredNorm(); }, [](const Vector& w) { return w; });
    const OptimizationResult r = gd_backtracking(obj, (Vector(2) << 3, 4).finished());
    ASSERT_EQ(r.trace.iterations.size(), 1u);
    EXPECT_EQ(r.trace.iterations[0].step, 1.0);
    EXPECT_TRUE(r.model.w.isZero(0.0));
    EXPECT_EQ(r.trace.termination, Termination::GradientTolerance);
    EXPECT_EQ(r.trace.initial_objective, 12.5);
}

TEST(GdBacktracking, ShiftedParabola) {
    const Lambda obj(
        1, [](const Vector& w) { return (w(0) - 1) * (w(0) - 1); },
        [](const Vector& w) { return Vector::Constant(1, 2 * (w(0) - 1)); });
    const OptimizationResult r = gd_backtracking(obj, Vector::Zero(1));
    EXPECT_NEAR(r.model.w(0), 1.0, 1e-6);
    EXPECT_LE(r.trace.iterations.size(), 50u);
    double prev = r.trace.initial_objective;
    for (const auto& it : r.trace.iterations) {
        EXPECT_LE(it.objective, prev);
        prev = it.objective;
    }
}

TEST(GdBacktracking, QuarticTraceReplays) {
    const Lambda obj(
        1, [](const Vector& w) { return std::pow(w(0), 4); },
        [](const Vector& w) { return Vector::Constant(1, 4 * std::pow(w(0), 3)); });
    LineSearchConfig cfg;
    const OptimizationResult r = gd_backtracking(obj, Vector::Ones(1), cfg);
    ASSERT_FALSE(r.trace.iterations.empty());
    replay(obj, Vector::Ones(1), r.trace, cfg);
    const OptimizationResult longer = gd_backtracking(obj, Vector::Constant(1, 0.7), cfg);
    EXPECT_GT(longer.trace.iterations.size(), 10u);
    replay(obj, Vector::Constant(1, 0.7), longer.trace, cfg);
    long prev = 0;
    for (const auto& it : longer.trace.iterations) {
        EXPECT_GE(it.backtracks, prev);
        prev = it.backtracks;
    }
}

TEST(GdBacktracking, DirectObjectiveReplaysAndIsDeterministic) {
    Rng rng(3);
    const ClassMoments m = oracle::random_moments(8, rng, 0.35);
    const ExpectedErrorObjective obj(m);
    const Vector w0 = init_w0_error(m);
    const OptimizationResult a = gd_backtracking(obj, w0);
    const OptimizationResult b = gd_backtracking(obj, w0);
    EXPECT_EQ(a.model.w, b.model.w);
    ASSERT_EQ(a.trace.iterations.size(), b.trace.iterations.size());
    for (std::size_t i = 0; i < a.trace.iterations.size(); ++i) {
        EXPECT_EQ(a.trace.iterations[i].objective, b.trace.iterations[i].objective);
        EXPECT_EQ(a.trace.iterations[i].step, b.trace.iterations[i].step);
    }
    replay(obj, w0, a.trace, LineSearchConfig{});
    EXPECT_LT(a.trace.iterations.back().objective, a.trace.initial_objective);
}

TEST(GdBacktracking, MaxItersAndLineSearchFailure) {
    LineSearchConfig cfg;
    cfg.max_iters = 3;
    const Lambda slow(
        1, [](const Vector& w) { return std::pow(w(0), 4); },
        [](const Vector& w) { return Vector::Constant(1, 4 * std::pow(w(0), 3)); });
    // From 0.7 no trial step lands exactly on the minimizer.
    const OptimizationResult r = gd_backtracking(slow, Vector::Constant(1, 0.7), cfg);
    EXPECT_EQ(r.trace.iterations.size(), 3u);
    EXPECT_EQ(r.trace.termination, Termination::MaxIterations);

    // A gradient pointing uphill can never satisfy Armijo.
    const Lambda wrong(1, [](const Vector& w) { return w(0); }, [](const Vector&) { return Vector::Constant(1, -1.0); });
    LineSearchConfig few;
    few.max_backtracks = 5;
    const OptimizationResult f = gd_backtracking(wrong, Vector::Constant(1, 2.0), few);
    EXPECT_EQ(f.trace.termination, Termination::LineSearchFailure);
    EXPECT_TRUE(f.trace.iterations.empty());
    EXPECT_EQ(f.model.w(0), 2.0);
}

TEST(GdBacktracking, FailureCarriesPartialTrace) {
    int calls = 0;
    const Lambda flaky(
        1,
        [&](const Vector& w) {
            if (++calls > 6) throw DegenerateProjection("boom");
            return w(0) * w(0);
        },
        [](const Vector& w) { return Vector::Constant(1, 2 * w(0)); });
    LineSearchConfig cfg;
    cfg.alpha0 = 0.1;
    try {
        gd_backtracking(flaky, Vector::Ones(1), cfg);
        FAIL() << "expected OptimizationAborted";
    } catch (const OptimizationAborted& e) {
        EXPECT_FALSE(e.trace().iterations.empty());
    }
}

TEST(LineSearchConfig, Validate) {
    LineSearchConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.beta = 1.0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg = {};
    cfg.c = 0.0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg = {};
    cfg.max_iters = 0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(InitW0Error, Examples) {
    ClassMoments m{Vector::Unit(2, 0), Vector::Unit(2, 1), Matrix::Identity(2, 2), Matrix::Identity(2, 2), 0.5, 0.5};
    EXPECT_TRUE(init_w0_error(m).isApprox(Vector::Unit(2, 0), 1e-15));
    m.mu_pos = (Vector(2) << 1, 1).finished();
    m.mu_neg = (Vector(2) << 1, 0).finished();
    EXPECT_TRUE(init_w0_error(m).isApprox(Vector::Unit(2, 1), 1e-15));
    m.mu_pos = (Vector(2) << 1, 2).finished();
    m.mu_neg = 3.0 * m.mu_pos;
    EXPECT_TRUE(init_w0_error(m).isApprox(m.mu_pos.normalized(), 1e-15));
    m.mu_neg.setZero();
    EXPECT_TRUE(init_w0_error(m).isApprox(m.mu_pos.normalized(), 1e-15));
    m.mu_pos.setZero();
    EXPECT_THROW(init_w0_error(m), NoInitializer);
}

TEST(InitRandom, UnitDeterministicCentered) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Vector a = init_random(7, seed);
        EXPECT_EQ(a, init_random(7, seed));
        EXPECT_NEAR(a.norm(), 1.0, 1e-12);
    }
    // Unit scaling divides by about sqrt(d), so the raw draws' mean bound 4/sqrt(d) becomes 4/d.
    const Vector big = init_random(10000, 5);
    EXPECT_LT(std::abs(big.mean()), 4.0 / 10000.0);
}

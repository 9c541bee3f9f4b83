#include <gtest/gtest.h>

#include <cmath>

#include "gaussrisk/data.hpp"
#include "gaussrisk/error.hpp"
#include "gaussrisk/metrics.hpp"
#include "gaussrisk/objectives.hpp"
#include "gaussrisk/special.hpp"
#include "oracles.hpp"

using namespace gaussrisk;

namespace {

ClassMoments unit_pair() {
    return ClassMoments{Vector::Unit(2, 0), -Vector::Unit(2, 0), Matrix::Identity(2, 2), Matrix::Identity(2, 2), 0.5, 0.5};
}

double rel_error(const Vector& a, const Vector& b) {
    return (a - b).norm() / std::max(a.norm(), b.norm());
}

}  // namespace

TEST(FError, Examples) {
    EXPECT_NEAR(f_error(Vector::Unit(2, 0), unit_pair()), 0.15865525393145707, 1e-14);
    Rng rng(1);
    ClassMoments same = oracle::random_moments(3, rng);
    same.mu_neg = same.mu_pos;
    same.sigma_neg = same.sigma_pos;
    EXPECT_NEAR(f_error(oracle::random_vector(3, rng), same), 0.5, 1e-15);
}

TEST(FError, ZeroMeansGiveZeroGradient) {
    Rng rng(2);
    ClassMoments m = oracle::random_moments(4, rng);
    m.mu_pos.setZero();
    m.mu_neg.setZero();
    EXPECT_TRUE(grad_f_error(oracle::random_vector(4, rng), m).isZero(0.0));
}

TEST(FError, DegenerateProjectionThrows) {
    ClassMoments m = unit_pair();
    EXPECT_THROW(f_error(Vector::Zero(2), m), DegenerateProjection);
    EXPECT_THROW(grad_f_error(Vector::Zero(2), m), DegenerateProjection);
}

TEST(FAuc, Examples) {
    const AucMoments a = auc_moments(unit_pair());
    EXPECT_NEAR(f_auc(Vector::Unit(2, 0), a), 0.07864960352514258, 1e-14);
    AucMoments zero{Vector::Zero(2), Matrix::Identity(2, 2)};
    EXPECT_EQ(f_auc(Vector::Ones(2), zero), 0.5);
}

TEST(FAuc, GradientAtZeroMean) {
    Rng rng(3);
    const AucMoments a = auc_moments(oracle::random_moments(3, rng));
    // Pick w orthogonal to mu_hat, so mu_Z = 0.
    Vector w = oracle::random_vector(3, rng);
    w -= w.dot(a.mu_hat) / a.mu_hat.squaredNorm() * a.mu_hat;
    const double sigma = std::sqrt(w.dot(a.sigma_hat * w));
    EXPECT_TRUE(grad_f_auc(w, a).isApprox(a.mu_hat / (std::sqrt(2 * M_PI) * sigma), 1e-12));
}

TEST(FAuc, OrthogonalWithIdentityGivesParallelGradient) {
    AucMoments a{(Vector(3) << 1, 2, 0).finished(), Matrix::Identity(3, 3)};
    const Vector w = (Vector(3) << 2, -1, 5).finished();
    const Vector g = grad_f_auc(w, a);
    EXPECT_NEAR(std::abs(g.normalized().dot(a.mu_hat.normalized())), 1.0, 1e-14);
}

TEST(Objectives, FiniteDifferences) {
    const double h = 1e-5;
    for (double prior : {0.05, 0.35, 0.5}) {
        Rng rng(static_cast<std::uint64_t>(prior * 1000));
        for (int trial = 0; trial < 200; ++trial) {
            // In one dimension both objectives are locally constant, so start at d = 2.
            const std::size_t d = 2 + rng.below(9);
            const ClassMoments m = oracle::random_moments(d, rng, prior);
            const AucMoments a = auc_moments(m);
            const Vector w = oracle::random_vector(d, rng);
            const Vector fd_e = oracle::central_difference([&](const Vector& v) { return f_error(v, m); }, w, h);
            const Vector fd_a = oracle::central_difference([&](const Vector& v) { return f_auc(v, a); }, w, h);
            EXPECT_LE(rel_error(grad_f_error(w, m), fd_e), 1e-6) << "d=" << d;
            EXPECT_LE(rel_error(grad_f_auc(w, a), fd_a), 1e-6) << "d=" << d;
        }
    }
}

TEST(Objectives, ScaleInvarianceAndOrthogonality) {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 2 + rng.below(9);
        const ClassMoments m = oracle::random_moments(d, rng, 0.05 + 0.9 * rng.uniform());
        const AucMoments a = auc_moments(m);
        const Vector w = oracle::random_vector(d, rng);
        const double fe = f_error(w, m);
        const double fa = f_auc(w, a);
        for (double c : {0.5, 2.0, 10.0}) {
            EXPECT_NEAR(f_error(c * w, m), fe, 1e-12 * fe);
            EXPECT_NEAR(f_auc(c * w, a), fa, 1e-12 * fa);
        }
        const Vector ge = grad_f_error(w, m);
        const Vector ga = grad_f_auc(w, a);
        EXPECT_LE(std::abs(w.dot(ge)), 1e-10 * w.norm() * ge.norm());
        EXPECT_LE(std::abs(w.dot(ga)), 1e-10 * w.norm() * ga.norm());
    }
}

TEST(Objectives, EvalMatchesSeparateCalls) {
    Rng rng(5);
    const ClassMoments m = oracle::random_moments(6, rng, 0.3);
    const Vector w = oracle::random_vector(6, rng);
    const ExpectedErrorObjective e(m);
    const ObjectiveEval ev = e.evaluate(w);
    EXPECT_EQ(ev.value, f_error(w, m));
    EXPECT_TRUE(ev.gradient.isApprox(grad_f_error(w, m), 1e-15));
    const RankingLossObjective r(auc_moments(m));
    EXPECT_EQ(r.value(w), f_auc(w, auc_moments(m)));
    EXPECT_EQ(r.dim(), 6u);
}

TEST(Objectives, ClampKeepsGradientFinite) {
    ClassMoments m = unit_pair();
    m.mu_pos *= 1e3;
    m.mu_neg *= 1e3;
    const ObjectiveEval ev = eval_error(Vector::Unit(2, 0), m);
    EXPECT_EQ(ev.value, 0.0);
    EXPECT_TRUE(ev.gradient.allFinite());
}

TEST(Objectives, MonteCarloAgreement) {
    // One fixed configuration; the 20-configuration version runs in the acceptance suite.
    Rng rng(6);
    const std::size_t d = 5;
    const ClassMoments m = oracle::random_moments(d, rng, 0.4);
    const Vector w = oracle::random_vector(d, rng);
    const Matrix lp = m.sigma_pos.llt().matrixL();
    const Matrix ln = m.sigma_neg.llt().matrixL();
    const std::size_t draws = 1000000;
    std::size_t errors = 0;
    Vector z(d);
    for (std::size_t i = 0; i < draws; ++i) {
        const bool pos = rng.uniform() < m.prior_pos;
        for (std::size_t j = 0; j < d; ++j) z(j) = rng.normal();
        const Vector x = pos ? Vector(m.mu_pos + lp * z) : Vector(m.mu_neg + ln * z);
        const bool predicted_pos = w.dot(x) >= 0.0;
        if (predicted_pos != pos) ++errors;
    }
    const double f = f_error(w, m);
    EXPECT_NEAR(static_cast<double>(errors) / draws, f, 3.0 * std::sqrt(f * (1 - f) / draws));

    const std::size_t n = 10000;
    const RowMatrix xp = sample_gaussian(m.mu_pos, lp, n, 7);
    const RowMatrix xn = sample_gaussian(m.mu_neg, ln, n, 8);
    std::vector<double> s;
    std::vector<int> y;
    for (Eigen::Index i = 0; i < xp.rows(); ++i) {
        s.push_back(xp.row(i).dot(w));
        y.push_back(1);
    }
    for (Eigen::Index i = 0; i < xn.rows(); ++i) {
        s.push_back(xn.row(i).dot(w));
        y.push_back(-1);
    }
    EXPECT_NEAR(1.0 - auc_from_scores(s, y), f_auc(w, auc_moments(m)), 0.01);
}

#include <gtest/gtest.h>

#include <cmath>

#include "gaussrisk/error.hpp"
#include "gaussrisk/metrics.hpp"
#include "oracles.hpp"

using namespace gaussrisk;

namespace {

Dataset line(std::vector<double> xs, std::vector<int> ys) {
    RowMatrix x(static_cast<Eigen::Index>(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) x(static_cast<Eigen::Index>(i), 0) = xs[i];
    return Dataset(std::move(x), std::move(ys));
}

struct Scored {
    std::vector<double> s;
    std::vector<int> y;
};

Scored random_scores(std::size_t n, Rng& rng, bool ties) {
    Scored out;
    for (std::size_t i = 0; i < n; ++i) {
        out.y.push_back(i == 0 ? 1 : i == 1 ? -1 : (rng.uniform() < 0.4 ? 1 : -1));
        out.s.push_back(ties ? static_cast<double>(rng.below(8)) : rng.normal() + 0.5 * out.y.back());
    }
    return out;
}

}  // namespace

TEST(Accuracy, Examples) {
    const Dataset ds = line({2, -1}, {1, -1});
    EXPECT_EQ(empirical_accuracy({Vector::Ones(1), 0.0}, ds), 1.0);
    EXPECT_EQ(empirical_accuracy({-Vector::Ones(1), 0.0}, ds), 0.0);
    EXPECT_EQ(empirical_accuracy({Vector::Ones(1), 0.0}, line({0}, {1})), 1.0);
    EXPECT_EQ(empirical_accuracy({Vector::Ones(1), 0.0}, line({0}, {-1})), 0.0);
    EXPECT_EQ(empirical_accuracy({Vector::Ones(1), 1.5}, line({-1}, {1})), 1.0);
}

TEST(Auc, Examples) {
    const std::vector<double> s{2, 0.5, 1, -1};
    const std::vector<int> y{1, 1, -1, -1};
    EXPECT_EQ(auc_from_scores(s, y), 0.75);
    EXPECT_EQ(auc_from_scores(std::vector<double>{3, 4, 1, 2}, y), 1.0);
    EXPECT_EQ(auc_from_scores(std::vector<double>{1, 1}, std::vector<int>{1, -1}), 0.0);
    EXPECT_EQ(auc_from_scores(std::vector<double>{1, 1}, std::vector<int>{1, -1}, AucTies::Midrank), 0.5);
    EXPECT_THROW(auc_from_scores(std::vector<double>{1, 2}, std::vector<int>{1, 1}), InvalidArgument);
}

TEST(Auc, MatchesBruteForceExactly) {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const Scored sc = random_scores(2 + rng.below(299), rng, trial % 2 == 0);
        EXPECT_EQ(auc_from_scores(sc.s, sc.y), oracle::brute_auc(sc.s, sc.y, false));
        EXPECT_EQ(auc_from_scores(sc.s, sc.y, AucTies::Midrank), oracle::brute_auc(sc.s, sc.y, true));
    }
}

TEST(Auc, MonotoneTransformInvariance) {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        Scored sc = random_scores(50 + rng.below(100), rng, false);
        const double base = auc_from_scores(sc.s, sc.y);
        std::vector<double> affine;
        std::vector<double> cubic;
        for (double v : sc.s) {
            affine.push_back(2 * v + 7);
            cubic.push_back(v * v * v);
        }
        EXPECT_EQ(auc_from_scores(affine, sc.y), base);
        EXPECT_EQ(auc_from_scores(cubic, sc.y), base);
    }
}

TEST(Auc, NegatedWeightsComplement) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        RowMatrix x(40, 3);
        std::vector<int> y(40);
        for (int i = 0; i < 40; ++i) {
            y[i] = i % 2 == 0 ? 1 : -1;
            for (int j = 0; j < 3; ++j) x(i, j) = rng.normal();
        }
        const Dataset ds(x, y);
        const Vector w = oracle::random_vector(3, rng);
        EXPECT_NEAR(empirical_auc({w, 0.0}, ds) + empirical_auc({-w, 0.0}, ds), 1.0, 1e-15);
    }
}

TEST(Metrics, PositiveScaleInvariance) {
    Rng rng(4);
    RowMatrix x(60, 2);
    std::vector<int> y(60);
    for (int i = 0; i < 60; ++i) {
        y[i] = i % 3 == 0 ? 1 : -1;
        x(i, 0) = rng.normal() + y[i];
        x(i, 1) = rng.normal();
    }
    const Dataset ds(x, y);
    const LinearModel m{(Vector(2) << 1.0, -0.3).finished(), 0.2};
    const EvalResult base = evaluate_model(m, ds);
    const EvalResult scaled = evaluate_model({3.0 * m.w, 3.0 * m.intercept}, ds);
    EXPECT_EQ(base.accuracy, scaled.accuracy);
    EXPECT_EQ(base.auc, scaled.auc);
    EXPECT_EQ(base.n_pos, 20u);
    EXPECT_EQ(base.n_neg, 40u);
}

TEST(Metrics, SingleClassGivesNanAuc) {
    const EvalResult r = evaluate_model({Vector::Ones(1), 0.0}, line({1, 2}, {1, 1}));
    EXPECT_EQ(r.accuracy, 1.0);
    EXPECT_TRUE(std::isnan(r.auc));
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gaussrisk/error.hpp"
#include "gaussrisk/special.hpp"
#include "oracles.hpp"

using namespace gaussrisk;

TEST(NormalCdf, KnownValues) {
    EXPECT_EQ(std_normal_cdf(0.0).value(), 0.5);
    EXPECT_NEAR(std_normal_cdf(1.0), 0.8413447460685429, 1e-15);
    EXPECT_NEAR(std_normal_cdf(-1.0), 0.15865525393145707, 1e-15);
    EXPECT_NEAR(std_normal_cdf(-std::sqrt(2.0)), 0.07864960352514258, 1e-15);
}

TEST(NormalCdf, MatchesQuadratureOnGrid) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -8.0 + 16.0 * i / 999.0;
        worst = std::max(worst, std::abs(std_normal_cdf(x).value() - static_cast<double>(oracle::normal_cdf(x))));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(NormalCdf, LowerTailRelativeAccuracy) {
    for (double x : {-10.0, -20.0, -30.0}) {
        const double ref = static_cast<double>(oracle::normal_cdf(x));
        EXPECT_NEAR(std_normal_cdf(x) / ref, 1.0, 1e-10) << x;
    }
}

TEST(NormalCdf, SymmetryAndMonotonicity) {
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = -10.0 + 0.01 * i;
        const double p = std_normal_cdf(x);
        EXPECT_NEAR(p + std_normal_cdf(-x), 1.0, 1e-15);
        EXPECT_GE(p, prev);
        prev = p;
    }
}

TEST(NormalCdf, SaturatesAndRejectsNonFinite) {
    EXPECT_EQ(std_normal_cdf(41.0).value(), 1.0);
    EXPECT_EQ(std_normal_cdf(-41.0).value(), 0.0);
    EXPECT_THROW(std_normal_cdf(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
    EXPECT_THROW(std_normal_cdf(std::numeric_limits<double>::infinity()), InvalidArgument);
    EXPECT_THROW(std_normal_pdf(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
}

TEST(NormalPdf, IsDerivativeOfCdf) {
    const double h = 1e-5;
    for (double x = -6.0; x <= 6.0; x += 0.37) {
        const double fd = (std_normal_cdf(x + h) - std_normal_cdf(x - h)) / (2 * h);
        EXPECT_NEAR(fd, std_normal_pdf(x), 1e-9) << x;
    }
    EXPECT_NEAR(std_normal_pdf(0.0), kInvSqrt2Pi, 1e-17);
}

TEST(Probability, RejectsOutOfRange) {
    EXPECT_THROW(Probability(-0.1), InvalidArgument);
    EXPECT_THROW(Probability(1.5), InvalidArgument);
    EXPECT_THROW(Probability(std::nan("")), InvalidArgument);
    EXPECT_EQ(Probability(0.25).value(), 0.25);
}

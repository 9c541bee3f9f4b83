#pragma once

namespace gaussrisk {

/// A value in [0, 1].
class Probability {
public:
    /// Throws InvalidArgument outside [0, 1] or for NaN.
    explicit Probability(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

/// Standard normal CDF, phi(x) = P(N(0,1) <= x).
///
/// Evaluated as erfc(-x / sqrt(2)) / 2, which keeps full relative accuracy in
/// the lower tail. Saturates to exactly 0 or 1 for |x| > 40. Throws
/// InvalidArgument for non-finite x.
Probability std_normal_cdf(double x);

/// Standard normal density. Throws InvalidArgument for non-finite x.
double std_normal_pdf(double x);

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kCdfSaturation = 40.0;

}  // namespace gaussrisk

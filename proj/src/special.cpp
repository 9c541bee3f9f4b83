#include "gaussrisk/special.hpp"

#include <cmath>
#include <numbers>

#include "gaussrisk/error.hpp"

namespace gaussrisk {

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InvalidArgument("probability outside [0, 1]");
    }
}

Probability std_normal_cdf(double x) {
    if (!std::isfinite(x)) {
        throw InvalidArgument("std_normal_cdf: non-finite argument");
    }
    if (x > kCdfSaturation) return Probability(1.0);
    if (x < -kCdfSaturation) return Probability(0.0);
    return Probability(0.5 * std::erfc(-x / std::numbers::sqrt2));
}

double std_normal_pdf(double x) {
    if (!std::isfinite(x)) {
        throw InvalidArgument("std_normal_pdf: non-finite argument");
    }
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

}  // namespace gaussrisk

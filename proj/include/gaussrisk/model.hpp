#pragma once

#include "gaussrisk/linalg.hpp"

namespace gaussrisk {

/// f(x) = w'x + intercept. The direct and surrogate methods train through the
/// origin (intercept 0); only LDA sets an intercept.
struct LinearModel {
    Vector w;
    double intercept = 0.0;

    /// Throws InvalidArgument for an empty or non-finite model.
    void validate() const;
};

}  // namespace gaussrisk

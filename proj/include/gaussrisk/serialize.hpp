#pragma once

#include <iosfwd>
#include <string>

#include "gaussrisk/model.hpp"
#include "gaussrisk/moments.hpp"

namespace gaussrisk {

// Plain-text key/value files, one key per line followed by its values in
// shortest round-trip decimal form. '#' starts a comment.
//
// Model:            d, intercept, w (d values)
// Class moments:    d, prior_pos, prior_neg, mu_pos, mu_neg (d values each),
//                   sigma_pos, sigma_neg (d*d values each, row-major)

void write_model(const LinearModel& model, std::ostream& out);
LinearModel read_model(std::istream& in);
void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(const std::string& path);

void write_moments(const ClassMoments& moments, std::ostream& out);
ClassMoments read_moments(std::istream& in);
void save_moments(const ClassMoments& moments, const std::string& path);
ClassMoments load_moments(const std::string& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace gaussrisk

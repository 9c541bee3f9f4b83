#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaussrisk/dataset.hpp"
#include "gaussrisk/moments.hpp"

namespace gaussrisk {

// ---- LIBSVM text format -----------------------------------------------------
//
// One sample per line: "<label> <idx>:<val> <idx>:<val> ...", 1-based strictly
// increasing indices, '#' starts a comment, LF or CRLF line endings. Missing
// indices are zero and the dimension is the largest index seen. Exactly two
// distinct raw labels are required; the larger maps to +1.

Dataset parse_libsvm(std::istream& in);
Dataset parse_libsvm(std::string_view text);
Dataset load_libsvm(const std::string& path);

/// Writes labels as +1/-1 and values in shortest round-trip form. Entries
/// equal to +0.0 are omitted, except that the last column is always written on
/// the first line so the dimension survives a round trip.
void write_libsvm(const Dataset& dataset, std::ostream& out);
void save_libsvm(const Dataset& dataset, const std::string& path);

// ---- normalization ----------------------------------------------------------

struct NormalizationStats {
    Vector mean;
    Vector scale;  // population stddev, or 1 where it is below 1e-12
};

NormalizationStats zscore_stats(const Dataset& dataset);
Dataset apply_normalization(const Dataset& dataset, const NormalizationStats& stats);

/// Centers each column and scales it to unit (population) variance. Throws
/// InvalidArgument for fewer than two samples.
std::pair<Dataset, NormalizationStats> normalize_zscore(const Dataset& dataset);

/// Class moments of the normalized features: mu' = (mu - m) / s and
/// S' = D^-1 S D^-1 with D = diag(s). Exact, since the map is affine.
ClassMoments normalize_moments(const ClassMoments& moments, const NormalizationStats& stats);

// ---- synthetic Gaussian benchmarks ------------------------------------------

struct GaussianSpec {
    std::size_t d = 2;
    std::size_t n = 1000;
    double prior_pos = 0.5;
    double outlier_pct = 0.0;  // applied by callers through inject_outliers
    std::uint64_t seed = 0;
    double mean_scale = 1.0;
    double cov_scale = 1.0;

    void validate() const;
};

/// Class means with i.i.d. N(0, mean_scale^2) entries, covariances
/// cov_scale * (A A'/d + I) with A standard normal, and round(n * prior_pos)
/// positives drawn through a Cholesky factor. Rows are shuffled. Returns the
/// clean sample and the exact moments used (priors from the spec).
std::pair<Dataset, ClassMoments> gen_gaussian(const GaussianSpec& spec);

/// Draws n samples from N(mean, L L') given the lower Cholesky factor.
RowMatrix sample_gaussian(const Vector& mean, const Matrix& chol_lower, std::size_t n, std::uint64_t seed);

/// Flips floor(pct/100 * n+) positive and floor(pct/100 * n-) negative labels,
/// chosen uniformly. pct must lie in [0, 50).
Dataset inject_outliers(const Dataset& dataset, double pct, std::uint64_t seed);

// ---- cross-validation -------------------------------------------------------

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Seeded permutation of 0..n-1 cut into k contiguous folds; the first n % k
/// folds get one extra index. Requires k >= 2 and n >= k.
std::vector<Fold> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace gaussrisk

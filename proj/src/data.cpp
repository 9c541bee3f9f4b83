#include "gaussrisk/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gaussrisk/error.hpp"
#include "gaussrisk/random.hpp"

namespace gaussrisk {

namespace {

using Index = Eigen::Index;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view token, std::size_t line, const char* what) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) throw ParseError(line, std::string("non-finite ") + what);
    return value;
}

struct SparseRow {
    double raw_label;
    std::vector<std::pair<std::size_t, double>> entries;
};

void append_double(std::string& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

Dataset parse_libsvm(std::istream& in) {
    std::vector<SparseRow> rows;
    std::vector<double> distinct;
    std::size_t dim = 0;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        std::string_view line(text);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        line = trim(line);
        if (line.empty()) continue;

        SparseRow row;
        std::size_t pos = 0;
        bool first = true;
        std::size_t previous = 0;
        while (pos < line.size()) {
            const auto end = std::min(line.find_first_of(" \t", pos), line.size());
            const std::string_view token = line.substr(pos, end - pos);
            pos = line.find_first_not_of(" \t", end);
            if (pos == std::string_view::npos) pos = line.size();
            if (first) {
                row.raw_label = parse_real(token, line_no, "label");
                first = false;
                continue;
            }
            const auto colon = token.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError(line_no, "expected <index>:<value>, got '" + std::string(token) + "'");
            }
            const std::string_view idx_text = token.substr(0, colon);
            std::size_t index = 0;
            const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
            if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || idx_text.empty()) {
                throw ParseError(line_no, "invalid feature index '" + std::string(idx_text) + "'");
            }
            if (index == 0) throw ParseError(line_no, "feature indices are 1-based");
            if (index <= previous) throw ParseError(line_no, "feature indices must be strictly increasing");
            previous = index;
            row.entries.emplace_back(index, parse_real(token.substr(colon + 1), line_no, "feature value"));
            dim = std::max(dim, index);
        }
        if (std::find(distinct.begin(), distinct.end(), row.raw_label) == distinct.end()) {
            distinct.push_back(row.raw_label);
            if (distinct.size() > 2) throw ParseError(line_no, "more than two distinct labels");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(line_no, "no samples");
    if (distinct.size() != 2) throw ParseError(line_no, "exactly two distinct labels are required");
    if (dim == 0) throw ParseError(line_no, "no features");

    const double positive = std::max(distinct[0], distinct[1]);
    RowMatrix x = RowMatrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(dim));
    std::vector<int> labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        labels[i] = rows[i].raw_label == positive ? 1 : -1;
        for (const auto& [index, value] : rows[i].entries) {
            x(static_cast<Index>(i), static_cast<Index>(index - 1)) = value;
        }
    }
    return Dataset(std::move(x), std::move(labels));
}

Dataset parse_libsvm(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_libsvm(in);
}

Dataset load_libsvm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_libsvm(in);
}

void write_libsvm(const Dataset& dataset, std::ostream& out) {
    const RowMatrix& x = dataset.features();
    const Index d = x.cols();
    std::string line;
    for (Index i = 0; i < x.rows(); ++i) {
        line.assign(dataset.labels()[static_cast<std::size_t>(i)] == 1 ? "+1" : "-1");
        for (Index j = 0; j < d; ++j) {
            const double v = x(i, j);
            const bool positive_zero = v == 0.0 && !std::signbit(v);
            if (positive_zero && !(i == 0 && j == d - 1)) continue;
            line += ' ';
            line += std::to_string(j + 1);
            line += ':';
            append_double(line, v);
        }
        line += '\n';
        out << line;
    }
}

void save_libsvm(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    write_libsvm(dataset, out);
    if (!out) throw IoError("error writing " + path);
}

NormalizationStats zscore_stats(const Dataset& dataset) {
    const RowMatrix& x = dataset.features();
    const Index n = x.rows();
    if (n < 2) throw InvalidArgument("normalize_zscore: need at least two samples");
    NormalizationStats stats;
    stats.mean = x.colwise().mean().transpose();
    stats.scale.resize(x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
        const double var = (x.col(j).array() - stats.mean[j]).square().sum() / static_cast<double>(n);
        const double sd = std::sqrt(var);
        stats.scale[j] = sd < 1e-12 ? 1.0 : sd;
    }
    return stats;
}

Dataset apply_normalization(const Dataset& dataset, const NormalizationStats& stats) {
    if (stats.mean.size() != static_cast<Index>(dataset.dim()) ||
        stats.scale.size() != static_cast<Index>(dataset.dim())) {
        throw InvalidArgument("normalization statistics do not match the dataset dimension");
    }
    RowMatrix x = dataset.features();
    x.rowwise() -= stats.mean.transpose();
    x.array().rowwise() /= stats.scale.transpose().array();
    return Dataset(std::move(x), dataset.labels());
}

std::pair<Dataset, NormalizationStats> normalize_zscore(const Dataset& dataset) {
    NormalizationStats stats = zscore_stats(dataset);
    Dataset normalized = apply_normalization(dataset, stats);
    return {std::move(normalized), std::move(stats)};
}

ClassMoments normalize_moments(const ClassMoments& moments, const NormalizationStats& stats) {
    const Index d = static_cast<Index>(moments.dim());
    if (stats.mean.size() != d || stats.scale.size() != d) {
        throw InvalidArgument("normalization statistics do not match the moment dimension");
    }
    const Vector inv = stats.scale.cwiseInverse();
    ClassMoments out = moments;
    out.mu_pos = (moments.mu_pos - stats.mean).cwiseProduct(inv);
    out.mu_neg = (moments.mu_neg - stats.mean).cwiseProduct(inv);
    out.sigma_pos = inv.asDiagonal() * moments.sigma_pos * inv.asDiagonal();
    out.sigma_neg = inv.asDiagonal() * moments.sigma_neg * inv.asDiagonal();
    return out;
}

void GaussianSpec::validate() const {
    if (d < 1) throw InvalidArgument("GaussianSpec: d must be positive");
    if (n < 1) throw InvalidArgument("GaussianSpec: n must be positive");
    if (!(prior_pos > 0.0 && prior_pos < 1.0)) throw InvalidArgument("GaussianSpec: prior_pos must lie in (0, 1)");
    if (!(outlier_pct >= 0.0 && outlier_pct < 100.0)) {
        throw InvalidArgument("GaussianSpec: outlier_pct must lie in [0, 100)");
    }
    if (!(mean_scale > 0.0) || !(cov_scale > 0.0)) throw InvalidArgument("GaussianSpec: scales must be positive");
    const double expected_pos = static_cast<double>(n) * prior_pos;
    if (expected_pos < 2.0 || static_cast<double>(n) - expected_pos < 2.0) {
        throw InvalidArgument("GaussianSpec: each class needs at least two expected samples");
    }
}

RowMatrix sample_gaussian(const Vector& mean, const Matrix& chol_lower, std::size_t n, std::uint64_t seed) {
    const Index d = mean.size();
    Rng rng(seed);
    RowMatrix out(static_cast<Index>(n), d);
    Vector z(d);
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
        for (Index j = 0; j < d; ++j) z[j] = rng.normal();
        out.row(i) = (mean + chol_lower.triangularView<Eigen::Lower>() * z).transpose();
    }
    return out;
}

std::pair<Dataset, ClassMoments> gen_gaussian(const GaussianSpec& spec) {
    spec.validate();
    const auto d = static_cast<Index>(spec.d);
    Rng model_rng(derive_seed(spec.seed, 0));

    auto random_mean = [&] {
        Vector mu(d);
        for (Index j = 0; j < d; ++j) mu[j] = spec.mean_scale * model_rng.normal();
        return mu;
    };
    auto random_covariance = [&] {
        Matrix a(d, d);
        for (Index i = 0; i < d; ++i) {
            for (Index j = 0; j < d; ++j) a(i, j) = model_rng.normal();
        }
        Matrix sigma = a * a.transpose() / static_cast<double>(d);
        sigma.diagonal().array() += 1.0;
        sigma *= spec.cov_scale;
        // Exact symmetry; the product is symmetric only up to rounding.
        return Matrix((sigma + sigma.transpose()) / 2.0);
    };

    ClassMoments m;
    m.mu_pos = random_mean();
    m.mu_neg = random_mean();
    m.sigma_pos = random_covariance();
    m.sigma_neg = random_covariance();
    m.prior_pos = spec.prior_pos;
    m.prior_neg = 1.0 - spec.prior_pos;

    const auto n_pos = static_cast<std::size_t>(std::llround(static_cast<double>(spec.n) * spec.prior_pos));
    const std::size_t n_neg = spec.n - n_pos;

    Eigen::LLT<Matrix> llt_pos(m.sigma_pos);
    Eigen::LLT<Matrix> llt_neg(m.sigma_neg);
    if (llt_pos.info() != Eigen::Success || llt_neg.info() != Eigen::Success) {
        throw InternalError("gen_gaussian: generated covariance is not positive definite");
    }
    const RowMatrix pos = sample_gaussian(m.mu_pos, llt_pos.matrixL(), n_pos, derive_seed(spec.seed, 1));
    const RowMatrix neg = sample_gaussian(m.mu_neg, llt_neg.matrixL(), n_neg, derive_seed(spec.seed, 2));

    Rng order_rng(derive_seed(spec.seed, 3));
    const std::vector<std::size_t> order = order_rng.permutation(spec.n);
    RowMatrix x(static_cast<Index>(spec.n), d);
    std::vector<int> labels(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        const std::size_t src = order[k];
        if (src < n_pos) {
            x.row(static_cast<Index>(k)) = pos.row(static_cast<Index>(src));
            labels[k] = 1;
        } else {
            x.row(static_cast<Index>(k)) = neg.row(static_cast<Index>(src - n_pos));
            labels[k] = -1;
        }
    }
    return {Dataset(std::move(x), std::move(labels)), std::move(m)};
}

Dataset inject_outliers(const Dataset& dataset, double pct, std::uint64_t seed) {
    if (!(pct >= 0.0 && pct < 50.0)) throw InvalidArgument("inject_outliers: pct must lie in [0, 50)");
    std::vector<int> labels = dataset.labels();
    if (pct == 0.0) return dataset;

    std::vector<std::size_t> pos_rows;
    std::vector<std::size_t> neg_rows;
    for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? pos_rows : neg_rows).push_back(i);

    Rng rng(seed);
    auto flip = [&](std::vector<std::size_t>& rows) {
        const auto count = static_cast<std::size_t>(std::floor(pct / 100.0 * static_cast<double>(rows.size())));
        rng.shuffle(std::span<std::size_t>(rows));
        for (std::size_t k = 0; k < count; ++k) labels[rows[k]] = -labels[rows[k]];
    };
    flip(pos_rows);
    flip(neg_rows);
    return dataset.with_labels(std::move(labels));
}

std::vector<Fold> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw InvalidArgument("kfold_split: k must be at least 2");
    if (n < k) throw InvalidArgument("kfold_split: n must be at least k");
    Rng rng(seed);
    const std::vector<std::size_t> perm = rng.permutation(n);
    std::vector<Fold> folds(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        folds[f].test.assign(perm.begin() + static_cast<std::ptrdiff_t>(start),
                             perm.begin() + static_cast<std::ptrdiff_t>(start + size));
        std::sort(folds[f].test.begin(), folds[f].test.end());
        start += size;
    }
    for (std::size_t f = 0; f < k; ++f) {
        for (std::size_t g = 0; g < k; ++g) {
            if (g != f) folds[f].train.insert(folds[f].train.end(), folds[g].test.begin(), folds[g].test.end());
        }
        std::sort(folds[f].train.begin(), folds[f].train.end());
    }
    return folds;
}

}  // namespace gaussrisk

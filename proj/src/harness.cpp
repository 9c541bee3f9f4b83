#include "gaussrisk/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "gaussrisk/metrics.hpp"
#include "gaussrisk/random.hpp"
#include "gaussrisk/serialize.hpp"

namespace gaussrisk {

namespace {

// Stream tags for derive_seed; fixed so that every method sees the same splits.
constexpr std::uint64_t kSplitStream = 1000;
constexpr std::uint64_t kOutlierStream = 2000;
constexpr std::uint64_t kStartStream = 3000;
constexpr std::uint64_t kGlobalOutlierStream = 4000;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_number(double v) { return std::isnan(v) ? std::string() : format_double(v); }

std::string csv_text(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    }
    return text;
}

struct PreparedData {
    Dataset data;
    std::optional<ClassMoments> exact;
    double train_outlier_pct = 0.0;
};

PreparedData prepare(const ExperimentConfig& cfg) {
    if (const auto* file = std::get_if<FileSource>(&cfg.data)) {
        PreparedData p{load_libsvm(file->path), std::nullopt, 0.0};
        if (!file->moments_path.empty()) {
            p.exact = load_moments(file->moments_path);
            if (p.exact->dim() != p.data.dim()) {
                throw InvalidArgument("moments sidecar dimension does not match the dataset");
            }
        }
        return p;
    }
    const auto& spec = std::get<GaussianSpec>(cfg.data);
    auto [data, moments] = gen_gaussian(spec);
    PreparedData p{std::move(data), std::move(moments), 0.0};
    if (spec.outlier_pct > 0.0) {
        if (cfg.outliers_in_test) {
            p.data = inject_outliers(p.data, spec.outlier_pct, derive_seed(cfg.seed, kGlobalOutlierStream));
        } else {
            p.train_outlier_pct = spec.outlier_pct;
        }
    }
    return p;
}

std::string describe(const ExperimentConfig& cfg) {
    std::ostringstream s;
    s << "method=" << to_string(cfg.method) << " moment_source=" << to_string(cfg.moment_source)
      << " folds=" << cfg.folds << " repeats=" << cfg.repeats << " seed=" << cfg.seed
      << " normalization=" << to_string(cfg.normalization);
    if (const auto* file = std::get_if<FileSource>(&cfg.data)) {
        s << " data=" << file->path;
        if (!file->moments_path.empty()) s << " moments=" << file->moments_path;
    } else {
        const auto& g = std::get<GaussianSpec>(cfg.data);
        s << " gaussian(d=" << g.d << ",n=" << g.n << ",prior_pos=" << g.prior_pos << ",outlier_pct=" << g.outlier_pct
          << ",seed=" << g.seed << ",mean_scale=" << g.mean_scale << ",cov_scale=" << g.cov_scale << ")";
    }
    return s.str();
}

std::string moment_label(const ExperimentConfig& cfg) {
    if (is_direct(cfg.method)) return std::string(to_string(cfg.moment_source));
    if (cfg.method == Method::Lda) return "empirical";
    return "none";
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::ErrorDirect: return "error-direct";
        case Method::AucDirect: return "auc-direct";
        case Method::Logistic: return "logistic";
        case Method::Hinge: return "hinge";
        case Method::Lda: return "lda";
    }
    return "unknown";
}

std::string_view to_string(MomentSource s) { return s == MomentSource::Exact ? "exact" : "empirical"; }

std::string_view to_string(Normalization n) {
    switch (n) {
        case Normalization::None: return "none";
        case Normalization::Global: return "global";
        case Normalization::PerFold: return "per-fold";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    for (Method m : {Method::ErrorDirect, Method::AucDirect, Method::Logistic, Method::Hinge, Method::Lda}) {
        if (text == to_string(m)) return m;
    }
    throw InvalidArgument("unknown method '" + std::string(text) + "'");
}

MomentSource parse_moment_source(std::string_view text) {
    if (text == "exact") return MomentSource::Exact;
    if (text == "empirical") return MomentSource::Empirical;
    throw InvalidArgument("unknown moment source '" + std::string(text) + "'");
}

Normalization parse_normalization(std::string_view text) {
    for (Normalization n : {Normalization::None, Normalization::Global, Normalization::PerFold}) {
        if (text == to_string(n)) return n;
    }
    throw InvalidArgument("unknown normalization '" + std::string(text) + "'");
}

bool is_direct(Method m) { return m == Method::ErrorDirect || m == Method::AucDirect; }

void ExperimentConfig::validate() const {
    if (folds < 2) throw InvalidArgument("folds must be at least 2");
    if (repeats < 1) throw InvalidArgument("repeats must be at least 1");
    optimizer.validate();
    if (moment_source == MomentSource::Exact) {
        if (!is_direct(method)) throw InvalidArgument("moment source applies to direct methods only");
        const auto* file = std::get_if<FileSource>(&data);
        if (file && file->moments_path.empty()) {
            throw InvalidArgument("exact moments need a synthetic source (generator spec or moments sidecar)");
        }
    }
    if (const auto* g = std::get_if<GaussianSpec>(&data)) g->validate();
}

TrainResult train_model(const Dataset& train, const TrainOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    TrainResult result;

    auto moments_for = [&]() -> ClassMoments {
        if (options.exact != nullptr) return *options.exact;
        return estimate_class_moments(train);
    };
    auto optimize = [&](const Objective& objective, const Vector& w0) {
        OptimizationResult r = gd_backtracking(objective, w0, options.optimizer);
        result.model = std::move(r.model);
        result.optimize_seconds = r.trace.total_seconds;
        result.trace = std::move(r.trace);
    };

    switch (options.method) {
        case Method::ErrorDirect: {
            const ExpectedErrorObjective objective(moments_for());
            optimize(objective, init_w0_error(objective.moments()));
            break;
        }
        case Method::AucDirect: {
            const ClassMoments moments = moments_for();
            const RankingLossObjective objective(auc_moments(moments));
            optimize(objective, init_w0_error(moments));
            break;
        }
        case Method::Logistic: {
            const LogisticObjective objective(train, options.lambda);
            optimize(objective, init_random(train.dim(), options.seed));
            break;
        }
        case Method::Hinge: {
            const PairwiseHingeObjective objective(train, options.hinge_orientation);
            optimize(objective, init_random(train.dim(), options.seed));
            break;
        }
        case Method::Lda:
            result.model = lda_fit(estimate_class_moments(train));
            break;
    }
    result.seconds = seconds_since(start);
    return result;
}

Summary summarize(const std::vector<RunRecord>& runs) {
    Summary s;
    double acc_sum = 0.0;
    double auc_sum = 0.0;
    double sec_sum = 0.0;
    std::size_t auc_count = 0;
    for (const RunRecord& r : runs) {
        if (!r.ok) {
            ++s.failed;
            continue;
        }
        ++s.completed;
        acc_sum += r.accuracy;
        sec_sum += r.train_seconds;
        if (!std::isnan(r.auc)) {
            auc_sum += r.auc;
            ++auc_count;
        }
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (s.completed == 0) {
        s.mean_accuracy = s.std_accuracy = s.mean_auc = s.std_auc = s.mean_seconds = nan;
        return s;
    }
    s.mean_accuracy = acc_sum / static_cast<double>(s.completed);
    s.mean_seconds = sec_sum / static_cast<double>(s.completed);
    s.mean_auc = auc_count > 0 ? auc_sum / static_cast<double>(auc_count) : nan;

    double acc_sq = 0.0;
    double auc_sq = 0.0;
    for (const RunRecord& r : runs) {
        if (!r.ok) continue;
        acc_sq += (r.accuracy - s.mean_accuracy) * (r.accuracy - s.mean_accuracy);
        if (!std::isnan(r.auc)) auc_sq += (r.auc - s.mean_auc) * (r.auc - s.mean_auc);
    }
    s.std_accuracy = s.completed > 1 ? std::sqrt(acc_sq / static_cast<double>(s.completed - 1)) : nan;
    s.std_auc = auc_count > 1 ? std::sqrt(auc_sq / static_cast<double>(auc_count - 1)) : nan;
    return s;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.method = std::string(to_string(cfg.method));
    report.moment_source = moment_label(cfg);
    report.config = describe(cfg);

    PreparedData prepared = prepare(cfg);
    if (cfg.moment_source == MomentSource::Exact && !prepared.exact) {
        throw InvalidArgument("exact moments are not available for this data source");
    }
    Dataset data = std::move(prepared.data);
    if (cfg.normalization == Normalization::Global) {
        auto [normalized, stats] = normalize_zscore(data);
        data = std::move(normalized);
        if (prepared.exact) prepared.exact = normalize_moments(*prepared.exact, stats);
    }

    const std::size_t k = cfg.folds;
    for (std::size_t repeat = 0; repeat < cfg.repeats; ++repeat) {
        const std::vector<Fold> folds = kfold_split(data.size(), k, derive_seed(cfg.seed, kSplitStream + repeat));
        for (std::size_t f = 0; f < k; ++f) {
            RunRecord rec;
            rec.repeat = repeat;
            rec.fold = f;
            rec.run = repeat * k + f;
            try {
                Dataset train = data.subset(folds[f].train);
                Dataset test = data.subset(folds[f].test);
                if (prepared.train_outlier_pct > 0.0) {
                    train = inject_outliers(train, prepared.train_outlier_pct,
                                            derive_seed(cfg.seed, kOutlierStream + rec.run));
                }
                std::optional<ClassMoments> fold_exact;
                if (cfg.normalization == Normalization::PerFold) {
                    const NormalizationStats stats = zscore_stats(train);
                    train = apply_normalization(train, stats);
                    test = apply_normalization(test, stats);
                    if (prepared.exact) fold_exact = normalize_moments(*prepared.exact, stats);
                }
                if (train.count_positive() == 0 || train.count_negative() == 0) {
                    throw InsufficientData("training fold contains a single class");
                }
                TrainOptions options;
                options.method = cfg.method;
                if (cfg.moment_source == MomentSource::Exact) {
                    options.exact = fold_exact ? &*fold_exact : &*prepared.exact;
                }
                options.optimizer = cfg.optimizer;
                options.lambda = cfg.lambda;
                options.hinge_orientation = cfg.hinge_orientation;
                options.seed = derive_seed(cfg.seed, kStartStream + rec.run);
                TrainResult trained = train_model(train, options);

                const EvalResult eval = evaluate_model(trained.model, test);
                rec.ok = true;
                rec.accuracy = eval.accuracy;
                rec.auc = eval.auc;
                rec.train_seconds = trained.seconds;
                rec.optimize_seconds = trained.optimize_seconds;
                if (trained.trace) {
                    rec.iterations = trained.trace->iterations.size();
                    rec.termination = trained.trace->termination;
                    if (cfg.keep_traces) rec.trace = std::move(trained.trace);
                }
            } catch (const Error& e) {
                rec.ok = false;
                rec.reason = e.what();
            }
            report.runs.push_back(std::move(rec));
        }
    }
    report.summary = summarize(report.runs);
    return report;
}

void emit_report(const ExperimentReport& report, std::ostream& out, const ReportOptions& options) {
    auto seconds = [&](double v) { return options.include_timing ? csv_number(v) : std::string(); };
    const std::string method = csv_text(report.method);
    const std::string source = csv_text(report.moment_source);
    out << "method,moment_source,run,fold,repeat,accuracy,auc,train_seconds,reason\n";
    for (const RunRecord& r : report.runs) {
        out << method << ',' << source << ',' << r.run << ',' << r.fold << ',' << r.repeat << ',';
        if (r.ok) {
            out << csv_number(r.accuracy) << ',' << csv_number(r.auc) << ',' << seconds(r.train_seconds) << ",\n";
        } else {
            out << ",,," << csv_text(r.reason) << '\n';
        }
    }
    const Summary& s = report.summary;
    out << method << ',' << source << ",summary," << csv_number(s.mean_accuracy) << ',' << csv_number(s.std_accuracy)
        << ',' << csv_number(s.mean_auc) << ',' << csv_number(s.std_auc) << ',' << seconds(s.mean_seconds) << '\n';
}

void emit_report(const ExperimentReport& report, const std::string& path, const ReportOptions& options) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    emit_report(report, out, options);
    if (!out) throw IoError("error writing " + path);
}

void emit_trace(const OptimizationTrace& trace, std::ostream& out) {
    if (trace.iterations.empty()) throw InvalidArgument("emit_trace: trace has no iterations");
    out << "iter,objective,grad_norm,step,seconds\n";
    for (const IterationRecord& r : trace.iterations) {
        out << r.iter << ',' << format_double(r.objective) << ',' << format_double(r.grad_norm) << ','
            << format_double(r.step) << ',' << format_double(r.seconds) << '\n';
    }
}

void emit_trace(const OptimizationTrace& trace, const std::string& path) {
    if (trace.iterations.empty()) throw InvalidArgument("emit_trace: trace has no iterations");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    emit_trace(trace, out);
    if (!out) throw IoError("error writing " + path);
}

}  // namespace gaussrisk

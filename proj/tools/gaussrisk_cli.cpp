// gaussrisk: generate benchmark data, train and evaluate linear classifiers,
// and run cross-validated comparisons.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gaussrisk/data.hpp"
#include "gaussrisk/harness.hpp"
#include "gaussrisk/kernels.hpp"
#include "gaussrisk/metrics.hpp"
#include "gaussrisk/random.hpp"
#include "gaussrisk/serialize.hpp"

namespace fs = std::filesystem;
using namespace gaussrisk;

namespace {

// Seed stream used by `gen` for label flipping.
constexpr std::uint64_t kGenOutlierStream = 9000;

void add_gaussian_flags(CLI::App* app, GaussianSpec& spec, bool& gen_seed_given) {
    app->add_option("--d", spec.d, "Feature dimension")->check(CLI::PositiveNumber);
    app->add_option("--n", spec.n, "Number of samples")->check(CLI::PositiveNumber);
    app->add_option("--prior-pos", spec.prior_pos, "Positive class prior")->check(CLI::Range(0.0, 1.0));
    app->add_option("--outlier-pct", spec.outlier_pct, "Percentage of labels flipped per class")
        ->check(CLI::Range(0.0, 50.0));
    app->add_option("--mean-scale", spec.mean_scale, "Scale of the random class means");
    app->add_option("--cov-scale", spec.cov_scale, "Scale of the random class covariances");
    app->add_option_function<std::uint64_t>(
        "--gen-seed",
        [&spec, &gen_seed_given](const std::uint64_t& s) {
            spec.seed = s;
            gen_seed_given = true;
        },
        "Generator seed (defaults to --seed)");
}

void add_optimizer_flags(CLI::App* app, LineSearchConfig& cfg) {
    app->add_option("--c", cfg.c, "Armijo constant");
    app->add_option("--beta", cfg.beta, "Backtracking factor");
    app->add_option("--alpha0", cfg.alpha0, "Initial step");
    app->add_option("--max-iters", cfg.max_iters, "Maximum iterations");
    app->add_option("--grad-tol-rel", cfg.grad_tol_rel, "Relative gradient-norm stopping tolerance");
    app->add_option("--max-backtracks", cfg.max_backtracks, "Maximum backtracking steps per iteration");
}

HingeOrientation parse_orientation(const std::string& text) {
    if (text == "positive-above") return HingeOrientation::PositiveAbove;
    if (text == "negative-above") return HingeOrientation::NegativeAbove;
    throw InvalidArgument("unknown hinge orientation '" + text + "'");
}

// Flags shared by `cv` and `bench`.
struct ExperimentFlags {
    ExperimentConfig cfg;
    std::string method = "error-direct";
    std::string moment_source = "empirical";
    std::string normalization = "global";
    std::string orientation = "positive-above";
    std::string data;
    std::string moments;
    GaussianSpec spec;
    bool gen_seed_given = false;

    void add(CLI::App* app, bool with_method) {
        if (with_method) {
            app->add_option("--method", method, "error-direct | auc-direct | logistic | hinge | lda");
        }
        app->add_option("--moment-source", moment_source, "exact | empirical (direct methods)");
        app->add_option("--data", data, "LIBSVM file; omit to generate Gaussian data");
        app->add_option("--moments", moments, "Exact-moments sidecar for --data");
        app->add_option("--folds", cfg.folds, "Cross-validation folds");
        app->add_option("--repeats", cfg.repeats, "Cross-validation repeats");
        app->add_option("--seed", cfg.seed, "Seed for splits, starts and outliers");
        app->add_option("--normalize", normalization, "none | global | per-fold");
        app->add_option("--lambda", cfg.lambda, "Logistic L2 weight (default 1/n)");
        app->add_option("--hinge-orientation", orientation, "positive-above | negative-above");
        app->add_flag("--outliers-in-test", cfg.outliers_in_test, "Also flip labels in held-out folds");
        add_gaussian_flags(app, spec, gen_seed_given);
        add_optimizer_flags(app, cfg.optimizer);
    }

    ExperimentConfig build(const std::string& method_name) const {
        ExperimentConfig out = cfg;
        out.method = parse_method(method_name);
        out.moment_source = parse_moment_source(moment_source);
        out.normalization = parse_normalization(normalization);
        out.hinge_orientation = parse_orientation(orientation);
        if (!data.empty()) {
            out.data = FileSource{data, moments};
        } else {
            GaussianSpec g = spec;
            if (!gen_seed_given) g.seed = cfg.seed;
            out.data = g;
        }
        return out;
    }
};

int run_gen(const GaussianSpec& spec_in, bool gen_seed_given, std::uint64_t seed, const std::string& out,
            const std::string& moments_out) {
    GaussianSpec spec = spec_in;
    if (!gen_seed_given) spec.seed = seed;
    auto [data, moments] = gen_gaussian(spec);
    if (spec.outlier_pct > 0.0) data = inject_outliers(data, spec.outlier_pct, derive_seed(spec.seed, kGenOutlierStream));
    save_libsvm(data, out);
    if (!moments_out.empty()) save_moments(moments, moments_out);
    std::cout << "wrote " << data.size() << " samples (" << data.count_positive() << " positive, d=" << data.dim()
              << ") to " << out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train linear classifiers by minimizing closed-form Gaussian expected error and ranking loss"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads for the data-parallel kernels (0 = runtime default)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a Gaussian benchmark as LIBSVM plus an exact-moments sidecar");
    GaussianSpec gen_spec;
    bool gen_seed_given = false;
    std::uint64_t gen_base_seed = 0;
    std::string gen_out;
    std::string gen_moments_out;
    add_gaussian_flags(gen, gen_spec, gen_seed_given);
    gen->add_option("--seed", gen_base_seed, "Seed (used when --gen-seed is absent)");
    gen->add_option("--out", gen_out, "Output LIBSVM file")->required();
    gen->add_option("--moments-out", gen_moments_out, "Output exact-moments sidecar");

    // train
    auto* train = app.add_subcommand("train", "Train one method on one dataset");
    std::string train_method = "error-direct";
    std::string train_source = "empirical";
    std::string train_data;
    std::string train_moments;
    std::string train_model_out;
    std::string train_trace_out;
    std::string train_orientation = "positive-above";
    bool train_normalize = false;
    TrainOptions train_opts;
    train->add_option("--method", train_method, "error-direct | auc-direct | logistic | hinge | lda");
    train->add_option("--moment-source", train_source, "exact | empirical (direct methods)");
    train->add_option("--data", train_data, "Training LIBSVM file")->required();
    train->add_option("--moments", train_moments, "Exact-moments sidecar (with --moment-source exact)");
    train->add_option("--seed", train_opts.seed, "Seed for the random start of logistic / hinge");
    train->add_option("--lambda", train_opts.lambda, "Logistic L2 weight (default 1/n)");
    train->add_option("--hinge-orientation", train_orientation, "positive-above | negative-above");
    train->add_flag("--normalize", train_normalize, "Z-score features; the saved model maps raw features");
    train->add_option("--model-out", train_model_out, "Output model file")->required();
    train->add_option("--trace-out", train_trace_out, "Output optimization trace CSV");
    add_optimizer_flags(train, train_opts.optimizer);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a model on a dataset");
    std::string eval_model;
    std::string eval_data;
    eval->add_option("--model", eval_model, "Model file")->required();
    eval->add_option("--data", eval_data, "LIBSVM file")->required();

    // cv
    auto* cv = app.add_subcommand("cv", "Cross-validated experiment for one method");
    ExperimentFlags cv_flags;
    std::string cv_report;
    std::string cv_trace_dir;
    bool cv_no_timing = false;
    cv_flags.add(cv, true);
    cv->add_option("--report-out", cv_report, "Output report CSV")->required();
    cv->add_option("--trace-dir", cv_trace_dir, "Directory for per-run trace CSVs");
    cv->add_flag("--no-timing", cv_no_timing, "Leave seconds columns empty (byte-reproducible output)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the same experiment for several methods");
    ExperimentFlags bench_flags;
    std::vector<std::string> bench_methods{"error-direct", "logistic", "auc-direct", "hinge", "lda"};
    std::string bench_dir;
    bool bench_no_timing = false;
    bench_flags.add(bench, false);
    bench->add_option("--methods", bench_methods, "Methods to run")->delimiter(',');
    bench->add_option("--out-dir", bench_dir, "Directory for per-method reports and summary.csv")->required();
    bench->add_flag("--no-timing", bench_no_timing, "Leave seconds columns empty");

    CLI11_PARSE(app, argc, argv);
    kernels::set_thread_count(threads);

    try {
        if (*gen) return run_gen(gen_spec, gen_seed_given, gen_base_seed, gen_out, gen_moments_out);

        if (*train) {
            Dataset data = load_libsvm(train_data);
            std::optional<NormalizationStats> stats;
            if (train_normalize) {
                auto [normalized, s] = normalize_zscore(data);
                data = std::move(normalized);
                stats = std::move(s);
            }
            train_opts.method = parse_method(train_method);
            train_opts.hinge_orientation = parse_orientation(train_orientation);
            std::optional<ClassMoments> exact;
            if (parse_moment_source(train_source) == MomentSource::Exact) {
                if (!is_direct(train_opts.method)) throw InvalidArgument("exact moments apply to direct methods only");
                if (train_moments.empty()) throw InvalidArgument("--moment-source exact needs --moments");
                exact = load_moments(train_moments);
                if (stats) exact = normalize_moments(*exact, *stats);
                train_opts.exact = &*exact;
            }
            TrainResult result = train_model(data, train_opts);
            LinearModel model = result.model;
            if (stats) {
                // w'((x - m) / s) + b  ==  (w / s)'x + (b - (w / s)'m)
                model.w = result.model.w.cwiseQuotient(stats->scale);
                model.intercept = result.model.intercept - model.w.dot(stats->mean);
            }
            save_model(model, train_model_out);
            if (!train_trace_out.empty()) {
                if (result.trace && !result.trace->iterations.empty()) {
                    emit_trace(*result.trace, train_trace_out);
                } else {
                    std::cerr << "note: no iterations recorded; trace not written\n";
                }
            }
            const EvalResult fit = evaluate_model(model, load_libsvm(train_data));
            std::cout << "method=" << train_method << " train_accuracy=" << format_double(fit.accuracy)
                      << " train_auc=" << format_double(fit.auc) << " seconds=" << format_double(result.seconds);
            if (result.trace) {
                std::cout << " iterations=" << result.trace->iterations.size()
                          << " termination=" << to_string(result.trace->termination);
            }
            std::cout << '\n';
            return 0;
        }

        if (*eval) {
            const LinearModel model = load_model(eval_model);
            const EvalResult r = evaluate_model(model, load_libsvm(eval_data));
            std::cout << "accuracy,auc,n_pos,n_neg\n"
                      << format_double(r.accuracy) << ',' << format_double(r.auc) << ',' << r.n_pos << ','
                      << r.n_neg << '\n';
            return 0;
        }

        if (*cv) {
            ExperimentConfig cfg = cv_flags.build(cv_flags.method);
            cfg.keep_traces = !cv_trace_dir.empty();
            const ExperimentReport report = run_experiment(cfg);
            emit_report(report, cv_report, ReportOptions{!cv_no_timing});
            if (!cv_trace_dir.empty()) {
                fs::create_directories(cv_trace_dir);
                for (const RunRecord& r : report.runs) {
                    if (r.trace && !r.trace->iterations.empty()) {
                        emit_trace(*r.trace, (fs::path(cv_trace_dir) / ("run_" + std::to_string(r.run) + ".csv")).string());
                    }
                }
            }
            const Summary& s = report.summary;
            std::cout << report.method << " (" << report.moment_source << "): accuracy " << format_double(s.mean_accuracy)
                      << " +- " << format_double(s.std_accuracy) << ", auc " << format_double(s.mean_auc) << " +- "
                      << format_double(s.std_auc) << ", " << s.completed << " runs ok, " << s.failed << " failed\n";
            return 0;
        }

        if (*bench) {
            fs::create_directories(bench_dir);
            std::ofstream summary((fs::path(bench_dir) / "summary.csv").string());
            if (!summary) throw IoError("cannot write summary.csv in " + bench_dir);
            summary << "method,moment_source,completed,failed,mean_accuracy,std_accuracy,mean_auc,std_auc,mean_seconds\n";
            for (const std::string& name : bench_methods) {
                const ExperimentConfig cfg = bench_flags.build(name);
                const ExperimentReport report = run_experiment(cfg);
                emit_report(report, (fs::path(bench_dir) / (name + ".csv")).string(), ReportOptions{!bench_no_timing});
                const Summary& s = report.summary;
                auto num = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
                summary << report.method << ',' << report.moment_source << ',' << s.completed << ',' << s.failed << ','
                        << num(s.mean_accuracy) << ',' << num(s.std_accuracy) << ',' << num(s.mean_auc) << ','
                        << num(s.std_auc) << ',' << (bench_no_timing ? std::string() : num(s.mean_seconds)) << '\n';
                std::cout << name << ": accuracy " << num(s.mean_accuracy) << ", auc " << num(s.mean_auc) << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

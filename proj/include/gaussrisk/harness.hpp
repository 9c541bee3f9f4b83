#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaussrisk/data.hpp"
#include "gaussrisk/model.hpp"
#include "gaussrisk/optimizer.hpp"
#include "gaussrisk/surrogates.hpp"

namespace gaussrisk {

enum class Method { ErrorDirect, AucDirect, Logistic, Hinge, Lda };
enum class MomentSource { Exact, Empirical };
enum class Normalization { None, Global, PerFold };

std::string_view to_string(Method m);
std::string_view to_string(MomentSource s);
std::string_view to_string(Normalization n);
Method parse_method(std::string_view text);
MomentSource parse_moment_source(std::string_view text);
Normalization parse_normalization(std::string_view text);

bool is_direct(Method m);

/// LIBSVM file, optionally with an exact-moments sidecar written by `gen`.
struct FileSource {
    std::string path;
    std::string moments_path;
};

struct ExperimentConfig {
    Method method = Method::ErrorDirect;
    MomentSource moment_source = MomentSource::Empirical;
    std::variant<FileSource, GaussianSpec> data = GaussianSpec{};
    std::size_t folds = 5;
    std::size_t repeats = 4;
    LineSearchConfig optimizer;
    std::uint64_t seed = 0;
    Normalization normalization = Normalization::Global;
    double lambda = -1.0;  // logistic regularization; negative means 1/n_train
    HingeOrientation hinge_orientation = HingeOrientation::PositiveAbove;
    /// Synthetic sources only: also flip labels in the held-out folds. By
    /// default outliers contaminate the training folds and tests stay clean.
    bool outliers_in_test = false;
    bool keep_traces = false;

    void validate() const;
};

/// Training inputs for one method. `exact` is used by direct methods when set.
struct TrainOptions {
    Method method = Method::ErrorDirect;
    const ClassMoments* exact = nullptr;
    LineSearchConfig optimizer;
    double lambda = -1.0;
    HingeOrientation hinge_orientation = HingeOrientation::PositiveAbove;
    std::uint64_t seed = 0;  // random start for logistic / hinge
};

struct TrainResult {
    LinearModel model;
    std::optional<OptimizationTrace> trace;  // absent for LDA
    double seconds = 0.0;           // everything, including moment estimation
    double optimize_seconds = 0.0;  // gradient descent alone
};

TrainResult train_model(const Dataset& train, const TrainOptions& options);

struct RunRecord {
    std::size_t run = 0;
    std::size_t fold = 0;
    std::size_t repeat = 0;
    bool ok = false;
    std::string reason;  // set when !ok
    double accuracy = 0.0;
    double auc = 0.0;  // NaN if the test fold has a single class
    double train_seconds = 0.0;
    double optimize_seconds = 0.0;
    std::size_t iterations = 0;
    std::optional<Termination> termination;
    std::optional<OptimizationTrace> trace;
};

struct Summary {
    std::size_t completed = 0;
    std::size_t failed = 0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    double mean_auc = 0.0;
    double std_auc = 0.0;
    double mean_seconds = 0.0;
};

struct ExperimentReport {
    std::string method;
    std::string moment_source;
    std::string config;  // human-readable echo of the configuration
    std::vector<RunRecord> runs;  // ordered by (repeat, fold)
    Summary summary;
};

/// Loads or generates the data, then trains and evaluates every (repeat, fold).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Mean and (runs - 1)-denominator standard deviation over completed runs.
Summary summarize(const std::vector<RunRecord>& runs);

struct ReportOptions {
    /// When false the seconds columns are left empty so repeated runs are byte-identical.
    bool include_timing = true;
};

// Header "method,moment_source,run,fold,repeat,accuracy,auc,train_seconds,reason",
// one row per run, then
// "<method>,<moment_source>,summary,mean_accuracy,std_accuracy,mean_auc,std_auc,mean_seconds".
void emit_report(const ExperimentReport& report, std::ostream& out, const ReportOptions& options = {});
void emit_report(const ExperimentReport& report, const std::string& path, const ReportOptions& options = {});

// Header "iter,objective,grad_norm,step,seconds", one row per accepted iteration.
void emit_trace(const OptimizationTrace& trace, std::ostream& out);
void emit_trace(const OptimizationTrace& trace, const std::string& path);

}  // namespace gaussrisk

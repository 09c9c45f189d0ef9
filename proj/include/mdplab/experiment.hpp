#pragma once

// Experiment harness behind the CLI: configuration, instance construction,
// single cells, parallel sweeps with deterministic output, and CSV reporting.

#include "mdplab/io.hpp"
#include "mdplab/solvers.hpp"
#include "mdplab/verification.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mdplab {

enum class ModelKind { dmdp, fhmdp, tbsg };
std::string to_string(ModelKind kind);

enum class InstanceMode { anchor, regular, adversarial };

/// uniform: rewards i.i.d. on [0, 1]. planted_gaps: see plant_action_gaps.
enum class RewardDesign { uniform, planted_gaps };

struct InstanceSpec {
    ModelKind kind = ModelKind::dmdp;
    InstanceMode mode = InstanceMode::anchor;
    int num_states = 10;
    int num_actions = 2;
    int num_anchors = 4;
    double regularity = 1.0; ///< L for regular and adversarial modes
    double gamma = 0.9;
    int horizon = 5;         ///< fhmdp only
    std::vector<double> xi{0.0};
    /// Synthesized anchor/regular instances only.
    RewardDesign rewards = RewardDesign::planted_gaps;
    GapDesign gaps;
    std::optional<std::uint64_t> seed; ///< defaults to a key derived from master_seed
    std::string model_file;    ///< optional: load instead of synthesizing
    std::string features_file;
};

struct ExperimentConfig {
    InstanceSpec instance;
    std::vector<std::int64_t> samples;  ///< N axis
    int seeds = 1;
    SolverKind solver = SolverKind::value_iteration;
    double eps_ps = 1e-6;
    std::uint64_t master_seed = 0;
    int threads = 1;
    bool timing = false; ///< wall_time_ms is 0 unless set, so CSVs stay byte-stable
    std::string output;
};

/// Parses and validates; errors name the offending field. MDPLAB_SEED, when set,
/// overrides master_seed.
ExperimentConfig parse_config(const Json& doc);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& config);

struct ResultRow {
    std::string instance_id;
    ModelKind model_kind = ModelKind::dmdp;
    std::int64_t samples = 0;
    int seed = 0; ///< seed index within the cell
    SolverKind solver = SolverKind::value_iteration;
    double eps_ps = 0.0;
    Classification classification = Classification::proper;
    double suboptimality = 0.0; ///< NaN when skipped
    double wall_time_ms = 0.0;
    std::string status = "ok"; ///< ok, skipped_pseudo or diverged
};

inline constexpr const char* kCsvHeader =
    "instance_id,model_kind,N,seed,solver,eps_ps,classification,suboptimality,wall_time_ms,status";

std::string format_number(double value);
std::string to_csv_line(const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
/// Throws Error on a header mismatch or malformed row.
std::vector<ResultRow> read_csv(std::istream& in);

/// A built instance: the linear structure and one true model per xi level.
struct Instance {
    std::string base_id;
    LinearGroundTruth structure;
    std::vector<double> xi;
    std::vector<TabularMDP> truths; ///< one per xi level
    std::vector<Vector> q_star;     ///< optimal (dmdp) or equilibrium (tbsg) Q per level
    std::vector<Player> owners;     ///< tbsg only
};

Instance build_instance(const ExperimentConfig& config);

/// Stream key of a cell; independent of xi so every xi level sees the same draws.
std::uint64_t cell_key(std::uint64_t master_seed, std::int64_t samples, int seed_index);

/// Scores one (xi level, N, seed) cell.
ResultRow run_cell(const ExperimentConfig& config, const Instance& instance, int xi_index,
                   std::int64_t samples, int seed_index);

/// Every cell in xi-major, then N, then seed order; output order does not depend
/// on config.threads.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

struct GeneratedFiles {
    std::string model_path;
    std::string features_path;
    std::string derived_path; ///< fhmdp/tbsg view of the model; empty for dmdp
    AnchorPropertyReport anchor_property;
};

/// Writes model.json and features.json (plus fhmdp.json or game.json) under `dir`.
GeneratedFiles generate_instance_files(const ExperimentConfig& config, const std::string& dir);

// ---------------------------------------------------------------------------
// Reporting

struct SummaryRow {
    std::string instance_id;
    SolverKind solver = SolverKind::value_iteration;
    std::int64_t samples = 0;
    int count = 0;
    int skipped = 0;
    double mean = 0.0;
    double median = 0.0;
    double p90 = 0.0;
};

struct Report {
    std::vector<SummaryRow> rows; ///< sorted by (instance, solver, N)
    /// Log-log slope of mean suboptimality against N per (instance, solver).
    std::map<std::string, double> slopes;
};

double mean(const std::vector<double>& values);
double median(std::vector<double> values);
/// Linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);
/// Least-squares slope of log(y) against log(x); pairs with y <= 0 are dropped.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

Report summarize(const std::vector<ResultRow>& rows);
void write_report_table(std::ostream& out, const Report& report);
/// Two columns "N mean_error" per (instance, solver) block.
void write_plot_data(std::ostream& out, const Report& report);

} // namespace mdplab

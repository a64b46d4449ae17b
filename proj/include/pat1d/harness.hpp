#pragma once

// End-to-end experiment driver: forward data generation, sampling, noise,
// reconstruction by each requested method, error metrics, and the CSV / JSON
// outputs consumed by the plotting tools.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pat1d/baselines.hpp"
#include "pat1d/error.hpp"
#include "pat1d/inverse.hpp"
#include "pat1d/observation.hpp"
#include "pat1d/profile.hpp"

namespace pat1d {

enum class Method { Spectral, Lsq, BackwardFd };
enum class DataSource { Spectral, Oracle };
enum class SweepParam { K, Noise, N };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(DataSource s) noexcept;
std::string_view to_string(SweepParam p) noexcept;
Method parse_method(std::string_view name);
DataSource parse_data_source(std::string_view name);
SweepParam parse_sweep_param(std::string_view name);

struct ExperimentConfig {
    std::string profile = "smooth";
    int T = 2;
    std::size_t M = 400;  // forward modes
    std::size_t K = 50;   // inverse modes
    int N = 100;          // samples per unit time
    NoiseSpec noise{};
    std::vector<Method> methods{Method::Spectral};
    std::filesystem::path output_dir;  // empty: no files written
    DataSource source = DataSource::Spectral;
    ExtensionSign extended_trace_sign = ExtensionSign::Minus;
    std::optional<FdConfig> fd;  // defaults to FdConfig::defaults_for(T)
    std::size_t output_points = 401;
    unsigned workers = 1;  // sweep concurrency
    bool timings = false;  // record wall-clock runtimes (breaks byte-reproducibility)
};

/// Unknown keys are a configuration error.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig read_config_file(const std::filesystem::path& path);

/// Checks guards that do not need data (T, K, M, N, methods, noise).
void validate(const ExperimentConfig& cfg);

/// Relative L2 error on a uniform grid via composite Simpson; the denominator
/// is the norm of `truth`.
double relative_l2(std::span<const double> estimate, std::span<const double> truth, double h);
double max_abs_error(std::span<const double> estimate, std::span<const double> truth);

struct ErrorReport {
    double rel_l2 = 0.0;
    double l_inf = 0.0;
    std::vector<std::pair<int, double>> coefficient_errors;  // non-skipped k only
    std::vector<std::pair<std::string, double>> runtime_ms;   // per stage
};

struct MethodResult {
    Method method;
    std::vector<double> estimate;  // on the output grid
    std::optional<ErrorReport> report;  // present when the true profile is known
    nlohmann::json details;             // method-specific diagnostics
};

struct PipelineResult {
    BoundaryTrace trace;
    std::vector<double> x;
    std::vector<double> truth;
    std::vector<MethodResult> methods;
    std::vector<std::pair<std::string, double>> runtime_ms;  // data-generation stages
};

/// Forward solve (spectral series or d'Alembert oracle), sampling, noise.
BoundaryTrace generate_trace(const ExperimentConfig& cfg);

/// Runs one method on a trace. `truth_profile` enables error metrics.
MethodResult apply_method(const BoundaryTrace& trace, Method method, const ExperimentConfig& cfg,
                          std::span<const double> xs, const Profile* truth_profile);

/// Full pipeline. Writes trace.csv, recon.csv and report.json into
/// cfg.output_dir when it is non-empty. Stage failures are rethrown with the
/// stage name and a config echo.
PipelineResult run_pipeline(const ExperimentConfig& cfg);

void write_reconstruction_csv(std::ostream& out, const PipelineResult& result);
nlohmann::json report_json(const ExperimentConfig& cfg, const PipelineResult& result);

struct SweepRow {
    double value = 0.0;
    double rel_l2 = 0.0;
    double l_inf = 0.0;
    double runtime_ms = 0.0;
    std::string status = "ok";
};

/// One pipeline per value; metrics come from the first configured method.
/// A failing value becomes a row with an error status.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, SweepParam param,
                                const std::vector<double>& values);

/// Header `param_value,rel_l2,l_inf,runtime_ms,status`.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Process exit code for an error: 2 configuration, 3 data, 4 numerical.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace pat1d

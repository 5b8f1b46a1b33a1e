#pragma once

#include "apzeta/error_model.hpp"
#include "apzeta/fixtures.hpp"
#include "apzeta/series_eval.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apzeta {

/// Exit codes shared by every command.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_precondition = 2,
    exit_numeric = 3,
    exit_grid_exhausted = 4,
};

/// "re,im" or a bare real.
Complex parse_complex(std::string_view text);
/// "start:stop:step".
Grid parse_grid(std::string_view text);
/// Comma-separated, strictly positive and strictly decreasing.
std::vector<double> parse_targets(std::string_view text);
SummationMode parse_mode(std::string_view text);

/// m,t,sigma,N,target,value_re,value_im,abs_error,predicted_error,status
struct CsvRow {
    std::uint64_t m = 0;
    Complex s;
    std::uint64_t N = 0;
    std::optional<double> target;
    Complex value;
    double abs_error = 0.0;
    std::optional<double> predicted_error;
    std::string status = "ok";
};

std::string csv_header();
std::string format_csv_row(const CsvRow& row);

/// Reference value accurate to at most `target`; tries a tighter accuracy
/// first. Throws PreconditionError when no oracle covers s.
OracleResult oracle_for(const Complex& s, double target);

/// predicted_error when the leading-term model applies at (s, N).
std::optional<double> model_error(const Representation& rep, const Complex& s, std::uint64_t N);

struct CoeffsOptions {
    std::uint64_t m = 0;
    std::optional<std::filesystem::path> out;
};

struct EvalCommand {
    std::uint64_t m = 0;
    Complex s;
    std::uint64_t N = 0;
    SummationMode mode = SummationMode::sequential;
    bool limit = false;
    bool explore = false;
};

struct MinNCommand {
    std::uint64_t m = 0;
    double t = 0.0;
    double sigma = 0.5;
    std::vector<double> targets;
    Grid grid;
    std::optional<std::filesystem::path> out;
};

struct CurveCommand {
    std::uint64_t m = 0;
    Complex s{0.5, 1e5};
    Grid grid;
    std::optional<std::filesystem::path> out;
    bool explore = false;
};

/// Each command writes its report to `out` and returns an exit code;
/// library exceptions propagate (see exit_code_for).
int cmd_coeffs(const CoeffsOptions& options, std::ostream& out);
int cmd_eval(const EvalCommand& options, std::ostream& out);
int cmd_min_n(const MinNCommand& options, std::ostream& out);
int cmd_curve(const CurveCommand& options, std::ostream& out);

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<std::string> suite_names();
/// Throws PreconditionError for an unknown name.
SuiteResult run_suite(std::string_view name, const std::filesystem::path& fixture_dir);
/// One JSON line per suite; exit_failure when any suite fails.
int cmd_verify(const std::optional<std::string>& suite, std::ostream& out);

/// Maps an exception to its exit code and writes a one-line JSON error report.
int exit_code_for(const std::exception& e, std::ostream& err);

struct TableCell {
    std::uint64_t m = 0;
    double t = 0.0;
    double target = 0.0;
    std::uint64_t published_N = 0;
    bool desk_scale = true;
    std::string excluded_reason;
};

struct ScalingGrid {
    std::uint64_t m = 0;
    Grid grid;
};

struct Manifest {
    double sigma = 0.5;
    std::vector<TableCell> min_n_cells;
    double scaling_t = 0.0;
    double scaling_oracle_target = 0.0;
    std::vector<ScalingGrid> scaling_grids;
    std::vector<TableCell> scaling_cells;
};

/// APZETA_MANIFEST if set, otherwise experiments/manifest.json in the source tree.
std::filesystem::path manifest_path();
Manifest load_manifest(const std::filesystem::path& path);

} // namespace apzeta

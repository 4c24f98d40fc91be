#pragma once

// Subcommand implementations behind the qsample CLI. Each command is a
// pure function of its RunConfig and returns a table plus exit status;
// rendering to CSV or JSON is separate so output can be compared byte for
// byte.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qsample {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { csv, json };

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

/// Parsed command line. Scalars left unset fall back to per-command
/// defaults; list-valued flags keep their raw text.
struct RunConfig {
    std::string command;
    std::optional<double> epsilon;
    std::optional<double> epsilon_hat;
    std::optional<double> beta;
    std::optional<double> w;
    std::optional<double> c;
    std::optional<double> m_fraction;
    std::optional<std::string> m;      ///< scalar for bound, list for sampling
    std::optional<std::string> n;
    std::optional<std::string> N;      ///< list for sampling
    std::optional<std::string> delta;  ///< list for sampling
    std::optional<std::string> grid;
    std::optional<unsigned> a;
    std::string formula = "paper";
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> suites;
    double inject_bound_offset = 0.0;
    OutputFormat format = OutputFormat::csv;
    std::string out;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct CommandResult {
    Table table;
    int exit_code = kExitOk;
    /// Lines for stderr: warnings, skipped rows, serialized violations.
    std::vector<std::string> diagnostics;
};

/// Thrown for invalid parameters; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Comma list ("1,2,3") or inclusive linear range "start:stop:count".
/// Empty text yields an empty list.
std::vector<double> parse_grid(const std::string& text);

/// %.12g, with nan/inf spelled out.
std::string format_number(double x);

CommandResult cmd_bound(const RunConfig& cfg);
CommandResult cmd_rate_curve(const RunConfig& cfg);
CommandResult cmd_fig1(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_sampling(const RunConfig& cfg);

/// Dispatches on cfg.command. Throws UsageError for unknown commands.
CommandResult run_command(const RunConfig& cfg);

/// CSV with a header row, LF line endings.
std::string render_csv(const Table& table);
/// {"metadata": {...}, "rows": [{column: value, ...}, ...]}
std::string render_json(const Table& table, const RunConfig& cfg);
std::string render(const Table& table, const RunConfig& cfg);

}  // namespace qsample

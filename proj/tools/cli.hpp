#pragma once

/*
 * cli.hpp — command line driver for the log-damped wave lab.
 *
 * Thin shell over the core library: parses flags (plus an optional flat
 * key = value config file, flags win), dispatches one experiment, and
 * formats the result as CSV rows and/or a self-contained SVG rate plot.
 * No numerics live here beyond formatting.
 *
 * Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage error,
 * 3 quadrature did not converge, 4 I/O failure.
 */

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "logdamp/experiments.hpp"

namespace logdamp::cli {

enum class Command { Roots, Delta, Evolve, Rates, Profile, VerifyAll };

struct RunConfig {
    Command command = Command::VerifyAll;
    double mu = 1.0;
    int dim = 1;
    std::string data_key = "gaussian:1,1";
    double t_min = 1e2;
    double t_max = 1e4;
    int points = 20;
    std::optional<double> tol;  // overrides the verdict tolerance
    std::string out_path;       // empty: CSV to stdout
    std::string format = "csv"; // csv | svg | both
    // roots / evolve extras
    double r = 1.0;
    double r_min = 0.0;
    double r_max = 10.0;
    int r_points = 101;
};

struct ParseOutcome {
    RunConfig config;
    int exit_now = -1;  // >= 0: print-and-exit path (help or usage error)
};

ParseOutcome parse_config(int argc, const char* const* argv);

/// Executes the configured command, printing verdicts to `out` and
/// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Plain numeric table with named columns. Values are written with 17
/// significant digits so a round trip through the file is bit-exact.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit_csv(const SeriesTable& table, const std::vector<Verdict>& verdicts, std::ostream& os);

/// Log-log polyline of the series with a dashed reference line of the
/// given slope (omitted when NaN). Falls back to linear axes, with a
/// warning comment embedded in the file, when a value is nonpositive.
void emit_svg(const std::vector<std::pair<double, double>>& series, double reference_slope,
              std::ostream& os);

std::string format_17g(double v);

}  // namespace logdamp::cli

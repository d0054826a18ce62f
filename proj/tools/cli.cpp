#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>

#include "logdamp/error.hpp"
#include "logdamp/model.hpp"
#include "logdamp/spectral.hpp"

namespace logdamp::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void apply_tolerance(std::vector<Verdict>& verdicts, const std::optional<double>& tol) {
    if (!tol) return;
    for (auto& v : verdicts) {
        v.tolerance = *tol;
        switch (v.mode) {
            case CheckMode::TwoSided: v.pass = std::abs(v.measured - v.expected) <= v.tolerance; break;
            case CheckMode::UpperBound: v.pass = v.measured <= v.expected + v.tolerance; break;
            case CheckMode::LowerBound: v.pass = v.measured >= v.expected - v.tolerance; break;
        }
    }
}

std::string svg_path_for(const std::string& out_path) {
    if (out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".svg") return out_path;
    if (out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv") {
        return out_path.substr(0, out_path.size() - 4) + ".svg";
    }
    return out_path + ".svg";
}

/// Writes the requested formats; returns 0, or 4 on I/O failure.
int write_outputs(const RunConfig& cfg, const SeriesTable& table, const std::vector<Verdict>& verdicts,
                  std::ostream& out, std::ostream& err) {
    const bool want_csv = cfg.format == "csv" || cfg.format == "both";
    const bool want_svg = cfg.format == "svg" || cfg.format == "both";

    if (want_csv) {
        if (cfg.out_path.empty()) {
            emit_csv(table, verdicts, out);
        } else {
            std::ofstream os(cfg.out_path);
            if (!os) {
                err << "error: cannot open '" << cfg.out_path << "' for writing\n";
                return 4;
            }
            emit_csv(table, verdicts, os);
            os.flush();
            if (!os.good()) {
                err << "error: write failed for '" << cfg.out_path << "'\n";
                return 4;
            }
        }
    }
    if (want_svg) {
        if (cfg.out_path.empty()) {
            err << "error: --format svg needs --out\n";
            return 2;
        }
        std::vector<std::pair<double, double>> series;
        double slope = kNaN;
        for (const auto& v : verdicts) {
            if (!v.series.empty()) {
                series = v.series;
                slope = v.expected;
                break;
            }
        }
        if (series.empty()) {
            for (const auto& row : table.rows) {
                if (row.size() >= 2) series.emplace_back(row[0], row[1]);
            }
        }
        const std::string path = svg_path_for(cfg.out_path);
        std::ofstream os(path);
        if (!os) {
            err << "error: cannot open '" << path << "' for writing\n";
            return 4;
        }
        emit_svg(series, slope, os);
        os.flush();
        if (!os.good()) {
            err << "error: write failed for '" << path << "'\n";
            return 4;
        }
    }
    return 0;
}

int run_roots(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!(cfg.r_min >= 0.0) || !(cfg.r_min < cfg.r_max) || cfg.r_points < 2) {
        err << "error: roots needs 0 <= r-min < r-max and r-points >= 2\n";
        return 2;
    }
    SeriesTable table;
    table.columns = {"r",      "lambda_plus_re",  "lambda_plus_im", "lambda_minus_re",
                     "lambda_minus_im", "discriminant", "gap_re",   "gap_im"};
    for (int i = 0; i < cfg.r_points; ++i) {
        const double r = cfg.r_min + (cfg.r_max - cfg.r_min) * static_cast<double>(i) / (cfg.r_points - 1);
        const CharRoots roots = char_roots(cfg.mu, r);
        const auto gap = root_gap(cfg.mu, r);
        table.rows.push_back({r, roots.lambda_plus.real(), roots.lambda_plus.imag(),
                              roots.lambda_minus.real(), roots.lambda_minus.imag(),
                              roots.discriminant, gap.real(), gap.imag()});
    }
    return write_outputs(cfg, table, {}, out, err);
}

int run_delta(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (classify(cfg.mu) != Regime::Effective) {
        err << "error: delta requires mu > 2\n";
        return 2;
    }
    const Threshold thr = threshold_delta(cfg.mu);
    out << "delta = " << format_17g(thr.delta) << "\n";
    out << "delta1 = " << format_17g(thr.delta1) << "\n";
    out << "c = " << format_17g(thr.c) << "\n";
    out << "d = " << format_17g(thr.d) << "\n";
    return 0;
}

int run_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const DataPair pair = pair_from_key(cfg.data_key, cfg.dim);
    const TimeGrid grid{cfg.t_min, cfg.t_max, cfg.points};
    SeriesTable table;
    table.columns = {"t", "value"};
    for (double t : grid.times()) {
        table.rows.push_back({t, solution_hat(pair, cfg.mu, cfg.r, t)});
    }
    return write_outputs(cfg, table, {}, out, err);
}

int run_rates(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const DataPair pair = pair_from_key(cfg.data_key, cfg.dim);
    const TimeGrid grid{cfg.t_min, cfg.t_max, cfg.points};
    auto verdicts = run_solution_norm_rates(cfg.mu, pair, grid);
    apply_tolerance(verdicts, cfg.tol);
    for (const auto& v : verdicts) out << v.summary() << "\n";

    SeriesTable table;
    table.columns = {"t", "value"};
    for (const auto& [t, y] : verdicts.front().series) table.rows.push_back({t, y});
    const int io = write_outputs(cfg, table, verdicts, out, err);
    if (io != 0) return io;
    return all_pass(verdicts) ? 0 : 1;
}

int run_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const DataPair pair = pair_from_key(cfg.data_key, cfg.dim);
    const TimeGrid grid{cfg.t_min, cfg.t_max, cfg.points};
    const bool effective = classify(cfg.mu) == Regime::Effective;

    std::vector<Verdict> verdicts;
    verdicts.push_back(run_profile_convergence(cfg.mu, pair, grid));
    if (effective) verdicts.push_back(run_tail_exponential(cfg.mu, pair));
    apply_tolerance(verdicts, cfg.tol);
    for (const auto& v : verdicts) out << v.summary() << "\n";

    SeriesTable table;
    table.columns = effective ? std::vector<std::string>{"t", "value", "profile_diff", "tail_norm"}
                              : std::vector<std::string>{"t", "value", "profile_diff"};
    for (const auto& [t, diff] : verdicts.front().series) {
        std::vector<double> row{t, solution_norm(pair, cfg.mu, t), diff};
        if (effective) row.push_back(tail_norm(pair, cfg.mu, t));
        table.rows.push_back(std::move(row));
    }
    const int io = write_outputs(cfg, table, verdicts, out, err);
    if (io != 0) return io;
    return all_pass(verdicts) ? 0 : 1;
}

int run_verify_all(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const TimeGrid grid{cfg.t_min, cfg.t_max, cfg.points};
    std::vector<Verdict> verdicts;
    const auto record = [&](Verdict v) {
        out << v.summary() << "\n";
        out.flush();
        verdicts.push_back(std::move(v));
    };

    for (double mu : {1.0, 2.0, 2.1, 4.0}) {
        const DataPair pair = pair_from_key(cfg.data_key, cfg.dim);
        record(run_profile_convergence(mu, pair, grid));
        for (auto& v : run_solution_norm_rates(mu, pair, grid)) record(std::move(v));
        if (mu > 2.0) {
            record(run_tail_exponential(mu, pair));
            record(run_root_gap_bounds(mu));
            // Probe once exp(-delta*t) has decayed past the jump bound;
            // below that the absolute jump only measures the smooth
            // variation of S itself.
            const double t_probe = std::max(50.0, 50.0 / threshold_delta(mu).delta);
            for (auto& v : run_singularity_probe(mu, t_probe)) record(std::move(v));
        }
    }
    record(run_zero_mean(cfg.dim, 1.0, grid));
    record(run_zero_mean(cfg.dim, 3.0, grid));
    record(run_regime_comparison(cfg.data_key, cfg.dim, grid));

    SeriesTable table;
    table.columns = {"t", "value"};
    const int io = write_outputs(cfg, table, verdicts, out, err);
    if (io != 0) return io;
    return all_pass(verdicts) ? 0 : 1;
}

}  // namespace

ParseOutcome parse_config(int argc, const char* const* argv) {
    ParseOutcome outcome;
    RunConfig& cfg = outcome.config;

    CLI::App app{"logdamp: decay-rate laboratory for the log-damped wave equation"};
    app.set_config("--config", "", "flat key = value file (# comments); flags override file values");

    std::string command;
    app.add_option("command", command, "one of: roots, delta, evolve, rates, profile, verify-all")
        ->required()
        ->check(CLI::IsMember({"roots", "delta", "evolve", "rates", "profile", "verify-all"}));
    app.add_option("--mu", cfg.mu, "damping coefficient, mu > 0")->check(CLI::PositiveNumber);
    app.add_option("--dim", cfg.dim, "space dimension n >= 1 (integer)")->check(CLI::PositiveNumber);
    app.add_option("--data", cfg.data_key, "datum key: gaussian:A,a or zeromean:a,b");
    app.add_option("--t-min", cfg.t_min, "start of the time window")->check(CLI::PositiveNumber);
    app.add_option("--t-max", cfg.t_max, "end of the time window")->check(CLI::PositiveNumber);
    app.add_option("--points", cfg.points, "points on the geometric time grid (>= 5)");
    app.add_option("--tol", cfg.tol, "override verdict tolerance (rates/profile)");
    app.add_option("--out", cfg.out_path, "output path (CSV; .svg derived for plots)");
    app.add_option("--format", cfg.format, "csv | svg | both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
    app.add_option("--r", cfg.r, "frequency radius for evolve")->check(CLI::NonNegativeNumber);
    app.add_option("--r-min", cfg.r_min, "roots: grid start")->check(CLI::NonNegativeNumber);
    app.add_option("--r-max", cfg.r_max, "roots: grid end")->check(CLI::PositiveNumber);
    app.add_option("--r-points", cfg.r_points, "roots: grid size");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        outcome.exit_now = 0;
        return outcome;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        outcome.exit_now = 2;
        return outcome;
    }

    static const std::map<std::string, Command> kCommands = {
        {"roots", Command::Roots},   {"delta", Command::Delta},     {"evolve", Command::Evolve},
        {"rates", Command::Rates},   {"profile", Command::Profile}, {"verify-all", Command::VerifyAll},
    };
    cfg.command = kCommands.at(command);
    return outcome;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::Roots: return run_roots(cfg, out, err);
            case Command::Delta: return run_delta(cfg, out, err);
            case Command::Evolve: return run_evolve(cfg, out, err);
            case Command::Rates: return run_rates(cfg, out, err);
            case Command::Profile: return run_profile(cfg, out, err);
            case Command::VerifyAll: return run_verify_all(cfg, out, err);
        }
        err << "error: unknown command\n";
        return 2;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << " (best estimate " << fmt6(e.best_estimate) << ")\n";
        return 3;
    } catch (const RegimeError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

std::string format_17g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_csv(const SeriesTable& table, const std::vector<Verdict>& verdicts, std::ostream& os) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_17g(row[i]);
        }
        os << "\n";
    }
    for (const auto& v : verdicts) {
        os << "# " << v.name << "," << format_17g(v.expected) << "," << format_17g(v.measured) << ","
           << format_17g(v.tolerance) << "," << (v.pass ? "true" : "false") << "\n";
    }
}

void emit_svg(const std::vector<std::pair<double, double>>& series, double reference_slope,
              std::ostream& os) {
    constexpr int kW = 640, kH = 440;
    constexpr double kL = 70, kR = 620, kT = 20, kB = 390;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    if (series.empty()) {
        os << "  <text x=\"" << kW / 2 << "\" y=\"" << kH / 2
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\">no data</text>\n</svg>\n";
        return;
    }

    bool log_axes = true;
    for (const auto& [t, y] : series) {
        if (!(t > 0.0) || !(y > 0.0)) log_axes = false;
    }
    if (!log_axes) {
        os << "  <!-- warning: nonpositive values in series, falling back to linear axes -->\n";
    }
    const auto tx = [log_axes](double t) { return log_axes ? std::log10(t) : t; };

    double x_lo = tx(series.front().first), x_hi = x_lo;
    double y_lo = tx(series.front().second), y_hi = y_lo;
    for (const auto& [t, y] : series) {
        x_lo = std::min(x_lo, tx(t));
        x_hi = std::max(x_hi, tx(t));
        y_lo = std::min(y_lo, tx(y));
        y_hi = std::max(y_hi, tx(y));
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const auto px = [&](double x) { return kL + (x - x_lo) / (x_hi - x_lo) * (kR - kL); };
    const auto py = [&](double y) { return kB - (y - y_lo) / (y_hi - y_lo) * (kB - kT); };

    os << "  <rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kR - kL << "\" height=\""
       << kB - kT << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "  <clipPath id=\"plot\"><rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kR - kL
       << "\" height=\"" << kB - kT << "\"/></clipPath>\n";

    // Decade ticks on log axes, five even ticks on linear ones.
    const auto tick_label = [&](double v) { return log_axes ? "1e" + fmt6(v) : fmt6(v); };
    std::vector<double> xticks, yticks;
    if (log_axes) {
        for (double e = std::ceil(x_lo); e <= std::floor(x_hi) + 1e-12; e += 1.0) xticks.push_back(e);
        for (double e = std::ceil(y_lo); e <= std::floor(y_hi) + 1e-12; e += 1.0) yticks.push_back(e);
    } else {
        for (int i = 0; i <= 4; ++i) {
            xticks.push_back(x_lo + (x_hi - x_lo) * i / 4.0);
            yticks.push_back(y_lo + (y_hi - y_lo) * i / 4.0);
        }
    }
    for (double v : xticks) {
        os << "  <line x1=\"" << fmt6(px(v)) << "\" y1=\"" << kB << "\" x2=\"" << fmt6(px(v))
           << "\" y2=\"" << kB + 6 << "\" stroke=\"black\"/>\n";
        os << "  <text x=\"" << fmt6(px(v)) << "\" y=\"" << kB + 22
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(v)
           << "</text>\n";
    }
    for (double v : yticks) {
        os << "  <line x1=\"" << kL - 6 << "\" y1=\"" << fmt6(py(v)) << "\" x2=\"" << kL << "\" y2=\""
           << fmt6(py(v)) << "\" stroke=\"black\"/>\n";
        os << "  <text x=\"" << kL - 10 << "\" y=\"" << fmt6(py(v) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(v)
           << "</text>\n";
    }
    os << "  <text x=\"" << (kL + kR) / 2 << "\" y=\"" << kH - 8
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t</text>\n";
    os << "  <text x=\"16\" y=\"" << (kT + kB) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
       << (kT + kB) / 2 << ")\">value</text>\n";

    os << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& [t, y] : series) {
        os << fmt6(px(tx(t))) << "," << fmt6(py(tx(y))) << " ";
    }
    os << "\"/>\n";

    if (std::isfinite(reference_slope) && log_axes) {
        // Dashed reference through the middle sample with the expected slope.
        const auto& mid = series[series.size() / 2];
        const double x0 = tx(mid.first), y0 = tx(mid.second);
        const double ya = y0 + reference_slope * (x_lo - x0);
        const double yb = y0 + reference_slope * (x_hi - x0);
        os << "  <line clip-path=\"url(#plot)\" x1=\"" << fmt6(px(x_lo)) << "\" y1=\"" << fmt6(py(ya))
           << "\" x2=\"" << fmt6(px(x_hi)) << "\" y2=\"" << fmt6(py(yb))
           << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n";
        os << "  <text x=\"" << kR - 8 << "\" y=\"" << kT + 16
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">slope "
           << fmt6(reference_slope) << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace logdamp::cli

// attctl — batch front door for the intermittent attitude-control toolkit.
// Subcommands:
//   run      simulate one scenario, export trace/events/summary/figure data
//   sweep    Cartesian-product parameter sweep with concurrent workers
//   analyze  re-verify a stored trace against its scenario
// Exit codes: 0 ok, 2 parse error, 3 infeasible, 4 numeric failure,
//             5 verification-check failure.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "attctl/analysis.hpp"
#include "attctl/errors.hpp"
#include "attctl/scenario.hpp"
#include "attctl/sim.hpp"
#include "attctl/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitCheckFailure = 5;

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;  // key=value
    double dt = -1.0;                    // <0: keep scenario value
    double t_end = -1.0;
    bool no_analysis = false;
};

attctl::ScenarioConfig load_config(const CommonOpts& opts) {
    attctl::ScenarioConfig config = attctl::load_scenario(opts.scenario_path);
    for (const std::string& kv : opts.overrides) attctl::apply_override(config, kv);
    if (opts.dt > 0) config.dt = opts.dt;
    if (opts.t_end > 0) config.t_end = opts.t_end;
    attctl::validate_config(config);
    return config;
}

/// Run one scenario end to end and write all artifacts under `dir`.
/// Returns the process exit code; never throws.
int run_one(const attctl::ScenarioConfig& config, const fs::path& dir, bool with_analysis,
            attctl::Trace* trace_out = nullptr, std::string* message = nullptr) {
    try {
        fs::create_directories(dir);
        if (with_analysis) {
            // A-priori feasibility gate (conservative |q0| floor) before
            // spending the simulation time; throws the named inequality.
            attctl::derive_constants(config, config.analysis.q0_floor_apriori);
        }
        attctl::SimEngine engine(config);
        attctl::Trace trace = engine.run();

        attctl::write_trace(trace, (dir / "trace.dat").string());
        attctl::write_events(trace, (dir / "events.dat").string());
        attctl::write_figure_data(trace, (dir / "figures").string());

        if (!trace.summary.completed) {
            attctl::write_summary(trace, nullptr, (dir / "summary.json").string());
            if (message) *message = trace.summary.failure_reason;
            if (trace_out) *trace_out = std::move(trace);
            return kExitNumeric;
        }

        int code = kExitOk;
        if (with_analysis) {
            attctl::AnalysisReport report = attctl::analyze_trace(trace, config);
            attctl::write_summary(trace, &report, (dir / "summary.json").string());
            if (!report.all_passed) {
                code = kExitCheckFailure;
                if (message) {
                    for (const auto& check : report.checks) {
                        if (!check.passed()) {
                            *message = "check failed: " + check.name;
                            break;
                        }
                    }
                }
            }
        } else {
            attctl::write_summary(trace, nullptr, (dir / "summary.json").string());
        }
        if (trace_out) *trace_out = std::move(trace);
        return code;
    } catch (const attctl::infeasibility_error& e) {
        if (message) *message = e.what();
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const attctl::numeric_failure_error& e) {
        if (message) *message = e.what();
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const attctl::internal_consistency_error& e) {
        if (message) *message = e.what();
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::exception& e) {
        if (message) *message = e.what();
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_run(const CommonOpts& opts) {
    attctl::ScenarioConfig config;
    try {
        config = load_config(opts);
    } catch (const attctl::infeasibility_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    const auto t0 = std::chrono::steady_clock::now();
    attctl::Trace trace;
    const int code = run_one(config, opts.out_dir, !opts.no_analysis, &trace);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // Timing goes to stderr so stdout/artifacts stay deterministic.
    std::fprintf(stderr, "wall time: %.3f s\n", wall);

    if (code == kExitOk || code == kExitCheckFailure) {
        const auto& s = trace.summary;
        std::printf("settling_time_s %.6f\n", s.settling_time);
        std::printf("terminal_error_deg %.6f\n", s.terminal_error_deg);
        std::printf("max_omega_norm %.6f\n", s.max_omega_norm);
        std::printf("on_events %d\n", s.on_events);
        std::printf("mean_update_rate_hz %.4f\n", s.mean_update_rate_hz);
        std::printf("on_fraction %.4f\n", s.on_fraction);
        std::printf("checks %s\n", code == kExitOk ? "pass" : "FAIL");
    }
    return code;
}

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

struct SweepCell {
    std::vector<std::pair<std::string, std::string>> assignment;
    fs::path dir;
    int exit_code = -1;
    std::string message;
    attctl::SimSummary summary;
    bool has_summary = false;
};

int cmd_sweep(const CommonOpts& opts, const std::vector<std::string>& axis_specs, int workers) {
    std::vector<SweepAxis> axes;
    for (const std::string& spec : axis_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
            std::cerr << "error: bad --axis '" << spec << "' (want key=v1,v2,...)\n";
            return kExitParse;
        }
        SweepAxis axis;
        axis.key = spec.substr(0, eq);
        std::stringstream ss(spec.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ',')) axis.values.push_back(item);
        if (axis.values.empty()) {
            std::cerr << "error: empty value list for axis '" << axis.key << "'\n";
            return kExitParse;
        }
        axes.push_back(std::move(axis));
    }
    if (axes.empty()) {
        std::cerr << "error: sweep requires at least one --axis key=v1,v2,...\n";
        return kExitParse;
    }

    // Validate the base scenario and the axis keys once, up front.
    attctl::ScenarioConfig base;
    try {
        base = load_config(opts);
        for (const SweepAxis& axis : axes) {
            attctl::ScenarioConfig probe = base;
            attctl::apply_override(probe, axis.key + "=" + axis.values.front());
        }
    } catch (const attctl::infeasibility_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    // Cartesian product, row-major over the axes in the order given.
    std::vector<SweepCell> cells;
    size_t total = 1;
    for (const SweepAxis& axis : axes) total *= axis.values.size();
    for (size_t idx = 0; idx < total; ++idx) {
        SweepCell cell;
        size_t rem = idx;
        for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
            cell.assignment.emplace_back(it->key, it->values[rem % it->values.size()]);
            rem /= it->values.size();
        }
        std::reverse(cell.assignment.begin(), cell.assignment.end());
        char name[32];
        std::snprintf(name, sizeof name, "cell_%04zu", idx);
        cell.dir = fs::path(opts.out_dir) / name;
        cells.push_back(std::move(cell));
    }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            SweepCell& cell = cells[i];
            attctl::ScenarioConfig config = base;
            try {
                for (const auto& [k, v] : cell.assignment) {
                    attctl::apply_override(config, k + "=" + v);
                }
                attctl::validate_config(config);
            } catch (const attctl::infeasibility_error& e) {
                cell.exit_code = kExitInfeasible;
                cell.message = e.what();
                continue;
            } catch (const std::exception& e) {
                cell.exit_code = kExitParse;
                cell.message = e.what();
                continue;
            }
            attctl::Trace trace;
            cell.exit_code = run_one(config, cell.dir, !opts.no_analysis, &trace, &cell.message);
            if (!trace.records.empty()) {
                cell.summary = trace.summary;
                cell.has_summary = true;
            }
        }
    };
    if (workers < 1) workers = 1;
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    // Single results table (stdout and results.txt).
    std::ostringstream table;
    table << "cell";
    for (const SweepAxis& axis : axes) table << ' ' << axis.key;
    table << " exit settling_time_s terminal_error_deg max_omega_norm on_events"
             " mean_update_rate_hz checks\n";
    int failures = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
        const SweepCell& cell = cells[i];
        table << i;
        for (const auto& [k, v] : cell.assignment) table << ' ' << v;
        table << ' ' << cell.exit_code;
        if (cell.has_summary) {
            char buf[160];
            std::snprintf(buf, sizeof buf, " %.6f %.6f %.6f %d %.4f",
                          cell.summary.settling_time, cell.summary.terminal_error_deg,
                          cell.summary.max_omega_norm, cell.summary.on_events,
                          cell.summary.mean_update_rate_hz);
            table << buf;
        } else {
            table << " - - - - -";
        }
        table << ' ' << (cell.exit_code == kExitOk ? "pass" : "FAIL");
        if (!cell.message.empty()) table << "  # " << cell.message;
        table << '\n';
        if (cell.exit_code != kExitOk) ++failures;
    }
    fs::create_directories(opts.out_dir);
    std::ofstream(fs::path(opts.out_dir) / "results.txt") << table.str();
    std::cout << table.str();
    return failures == 0 ? kExitOk : kExitCheckFailure;
}

int cmd_analyze(const std::string& trace_path, const CommonOpts& opts) {
    try {
        attctl::ScenarioConfig config = load_config(opts);
        attctl::Trace trace = attctl::read_trace(trace_path);
        const std::string expected = attctl::config_hash(config);
        if (trace.config_hash != expected) {
            std::cerr << "error: trace/config mismatch: trace hash " << trace.config_hash
                      << ", scenario hash " << expected << "\n";
            return kExitParse;
        }
        attctl::recompute_summary(trace, config);
        attctl::AnalysisReport report = attctl::analyze_trace(trace, config);
        if (!opts.out_dir.empty()) {
            fs::create_directories(opts.out_dir);
            attctl::write_summary(trace, &report,
                                  (fs::path(opts.out_dir) / "summary.json").string());
        }
        for (const auto& check : report.checks) {
            std::printf("%-28s %s%s\n", check.name.c_str(),
                        check.skipped ? "skipped" : (check.passed() ? "pass" : "FAIL"),
                        check.diagnostic.empty() ? "" : ("  # " + check.diagnostic).c_str());
        }
        return report.all_passed ? kExitOk : kExitCheckFailure;
    } catch (const attctl::infeasibility_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const attctl::internal_consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const attctl::numeric_failure_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intermittent prescribed-performance attitude control: simulate and verify"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> axis_specs;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    std::string trace_path;

    auto add_common = [&](CLI::App* sub, bool scenario_required) {
        auto* sc = sub->add_option("--scenario", opts.scenario_path, "Scenario file");
        if (scenario_required) sc->required();
        sub->add_option("--out", opts.out_dir, "Output directory");
        sub->add_option("--set", opts.overrides, "Config override key=value (repeatable)");
        sub->add_option("--dt", opts.dt, "Override integration step, seconds");
        sub->add_option("--t-end", opts.t_end, "Override episode length, seconds");
        sub->add_flag("--no-analysis", opts.no_analysis, "Skip post-run verification");
    };

    CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
    add_common(run, true);

    CLI::App* sweep = app.add_subcommand("sweep", "Cartesian-product parameter sweep");
    add_common(sweep, true);
    sweep->add_option("--axis", axis_specs, "Sweep axis key=v1,v2,... (repeatable)");
    sweep->add_option("--workers", workers, "Concurrent cells");

    CLI::App* analyze = app.add_subcommand("analyze", "Re-verify a stored trace");
    add_common(analyze, true);
    analyze->add_option("--trace", trace_path, "Trace file produced by run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) return cmd_sweep(opts, axis_specs, workers);
    return cmd_analyze(trace_path, opts);
}

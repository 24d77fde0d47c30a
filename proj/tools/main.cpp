#include "asmbench/accounting/accounting.hpp"
#include "asmbench/core/errors.hpp"
#include "asmbench/io/config.hpp"
#include "asmbench/io/reports.hpp"
#include "asmbench/io/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace asmbench;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kConfig = 2, kSolver = 3, kConvergenceRate = 4 };

struct Common {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<double> t_end;
    std::optional<double> rtol;
    std::optional<double> atol;
};

struct Extra {
    std::optional<double> dt;
    std::optional<std::size_t> samples;
    std::optional<std::string> sampling;
    std::optional<std::size_t> n_trajectory;
    std::optional<std::size_t> levels;
    std::string samples_csv, metrics_csv;
    std::optional<std::string> metric;
    std::optional<double> threshold;
    std::optional<std::size_t> nx, ny;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON config (default: built-in BSM1 baseline)");
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--workers", c.workers, "worker threads (0 = all hardware threads)");
    cmd->add_option("--t-end", c.t_end, "simulated days");
    cmd->add_option("--rtol", c.rtol, "integrator relative tolerance");
    cmd->add_option("--atol", c.atol, "integrator absolute tolerance");
}

io::RunConfig resolve(const Common& c) {
    io::RunConfig cfg = c.config.empty() ? io::RunConfig{} : io::load_config(c.config);
    if (const char* env = std::getenv("ASMBENCH_WORKERS"); env && *env) {
        char* end = nullptr;
        const long w = std::strtol(env, &end, 10);
        if (*end != '\0' || w < 0) throw ConfigError("ASMBENCH_WORKERS must be a non-negative integer");
        cfg.run.workers = static_cast<unsigned>(w);
    }
    if (c.out) cfg.run.out = *c.out;
    if (c.seed) cfg.run.seed = *c.seed;
    if (c.workers) cfg.run.workers = *c.workers;
    if (c.t_end) cfg.run.t_end = *c.t_end;
    if (c.rtol) cfg.scenario.steady.integrator.rtol = *c.rtol;
    if (c.atol) cfg.scenario.steady.integrator.atol = *c.atol;
    cfg.validate();
    return cfg;
}

fs::path out_path(const io::RunConfig& cfg, const char* name) { return fs::path(cfg.run.out) / name; }

void note(const std::string& msg) { std::cerr << "asmbench: " << msg << '\n'; }

void wrote(const fs::path& p) { std::cout << "wrote " << p.string() << '\n'; }

uq::ModelBinding binding_for(const io::RunConfig& cfg) { return uq::bsm1_binding(cfg.scenario, cfg.parameters); }

int cmd_simulate(const io::RunConfig& cfg, const Extra& x) {
    flowsheet::SystemOde ode(flowsheet::build_bsm1(cfg.scenario.settings, cfg.scenario.asm1));
    const double dt = x.dt.value_or(cfg.run.output_interval);
    const auto grid = flowsheet::output_grid(cfg.run.t_end, dt);
    const auto start = std::chrono::steady_clock::now();
    const auto traj = flowsheet::integrate(ode, cfg.run.t_end, ode.initial_state(), grid, cfg.scenario.steady.integrator);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto p = out_path(cfg, "trajectory.csv");
    io::write_csv(p, io::trajectory_table(traj));
    wrote(p);
    std::fprintf(stderr, "asmbench: %.6g d in %zu steps, %.3f s\n", cfg.run.t_end, traj.steps, wall);
    return kOk;
}

int cmd_steady(const io::RunConfig& cfg) {
    flowsheet::SystemOde ode(flowsheet::build_bsm1(cfg.scenario.settings, cfg.scenario.asm1));
    const auto steady = flowsheet::steady_state(ode, ode.initial_state(), cfg.scenario.steady);
    const auto metrics =
        flowsheet::effluent_metrics(ode, steady, cfg.scenario.asm1.composite_params(), cfg.scenario.steady.tol_ss);
    auto p = out_path(cfg, "steady.csv");
    io::write_csv(p, io::steady_table(ode.state_labels(), steady, metrics));
    wrote(p);

    const accounting::PlantSnapshot snap{cfg.scenario.settings, metrics, true};
    io::TeaLcaRow row;
    row.scenario = "baseline";
    row.inventory = accounting::bsm1_operating_inventory().evaluate(snap);
    auto tea = cfg.accounting.tea;
    for (auto& a : accounting::priced(row.inventory, cfg.accounting.prices)) tea.opex.push_back(std::move(a));
    row.tea = accounting::tea_annualize(tea);
    row.lca = accounting::lca_total(row.inventory, cfg.accounting.catalog, cfg.accounting.catalog.indicator_ids(),
                                    cfg.accounting.lca_horizon);
    p = out_path(cfg, "tea_lca.csv");
    io::write_csv(p, io::tea_lca_table({row}));
    wrote(p);
    std::fprintf(stderr, "asmbench: steady at t=%.6g d (max scaled derivative %.3g)\n", steady.time,
                 steady.max_scaled_derivative);
    return kOk;
}

int cmd_uncertainty(io::RunConfig cfg, const Extra& x) {
    if (x.samples) cfg.run.samples = *x.samples;
    if (x.sampling) cfg.run.sampling = *x.sampling;
    cfg.validate();
    const auto binding = binding_for(cfg);
    const auto samples = cfg.run.sampling == "lhs" ? uq::sample_lhs(binding.parameters, cfg.run.samples, cfg.run.seed)
                                                   : uq::sample_random(binding.parameters, cfg.run.samples, cfg.run.seed);
    auto p = out_path(cfg, "samples.csv");
    io::write_csv(p, io::samples_table(samples));
    wrote(p);
    const auto start = std::chrono::steady_clock::now();
    uq::MonteCarloResult mc;
    int code = kOk;
    try {
        mc = uq::run_monte_carlo(binding, samples, {cfg.run.workers, cfg.run.max_failure_fraction});
    } catch (const uq::ConvergenceRateError& e) {
        mc = e.result();
        note(e.what());
        code = kConvergenceRate;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    p = out_path(cfg, "metrics.csv");
    io::write_csv(p, io::metrics_table(mc));
    wrote(p);
    std::fprintf(stderr, "asmbench: %zu samples, %zu not converged, %.1f s\n", samples.rows(), mc.failures, wall);
    if (code != kOk) return code;
    for (const auto& f : cfg.filters)
        std::printf("P(%s > %g) = %.4f\n", f.metric.c_str(), f.threshold, mc.exceedance(f.metric, f.threshold));
    const auto rho = uq::spearman(samples.values, mc.metrics);
    p = out_path(cfg, "spearman.csv");
    io::write_csv(p, io::spearman_table(samples.names, mc.metric_names, rho));
    wrote(p);
    return kOk;
}

int cmd_morris(io::RunConfig cfg, const Extra& x) {
    if (x.n_trajectory) cfg.run.n_trajectory = *x.n_trajectory;
    if (x.levels) cfg.run.levels = *x.levels;
    const auto binding = binding_for(cfg);
    const auto res = uq::morris(binding, cfg.run.n_trajectory,
                                {cfg.run.levels, cfg.run.seed, cfg.run.bootstrap, cfg.run.workers});
    std::printf("simulations: %zu (%zu trajectories x %zu points)\n", res.simulations, res.n_trajectory,
                binding.parameters.size() + 1);
    if (res.failures) note(std::to_string(res.failures) + " morris points did not converge; their effects are skipped");
    const auto p = out_path(cfg, "morris.csv");
    io::write_csv(p, io::morris_table(res));
    wrote(p);
    return kOk;
}

int cmd_filter(io::RunConfig cfg, const Extra& x) {
    const fs::path sp = x.samples_csv.empty() ? out_path(cfg, "samples.csv") : fs::path(x.samples_csv);
    const fs::path mp = x.metrics_csv.empty() ? out_path(cfg, "metrics.csv") : fs::path(x.metrics_csv);
    const auto samples = io::samples_from_table(io::read_csv(sp));
    const auto metrics = io::read_csv(mp);
    if (metrics.rows.size() != samples.rows()) throw ConfigError("samples and metrics row counts differ");
    if (x.metric || x.threshold) {
        if (!x.metric || !x.threshold) throw ConfigError("--metric and --threshold go together");
        cfg.filters = {{*x.metric, *x.threshold}};
    }
    const auto conv = metrics.has_column("converged") ? metrics.numeric("converged") : std::vector<double>(samples.rows(), 1.0);
    std::vector<uq::FilterResult> results;
    for (const auto& f : cfg.filters) {
        auto y = metrics.numeric(f.metric);
        Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
        for (std::size_t i = 0; i < y.size(); ++i)
            v[static_cast<Eigen::Index>(i)] = conv[i] != 0.0 ? y[i] : std::numeric_limits<double>::quiet_NaN();
        results.push_back(uq::mc_filter(samples, v, f.threshold, f.metric));
        const auto& r = results.back();
        if (r.excluded) note(f.metric + ": " + std::to_string(r.excluded) + " non-converged rows excluded");
        if (!r.entries.empty() && r.entries.front().low_confidence)
            note(f.metric + ": a group has fewer than 5 samples; results are low-confidence");
        const auto rank = r.ranking();
        std::printf("%s > %g: largest D %s (%.3f)\n", f.metric.c_str(), f.threshold,
                    r.entries[rank.front()].parameter.c_str(), r.entries[rank.front()].D);
    }
    const auto p = out_path(cfg, "filter.csv");
    io::write_csv(p, io::filter_table(results));
    wrote(p);
    return kOk;
}

int cmd_sweep(io::RunConfig cfg, const Extra& x) {
    if (x.nx) cfg.sweep_x.n = *x.nx;
    if (x.ny) cfg.sweep_y.n = *x.ny;
    cfg.validate();
    const auto binding = binding_for(cfg);
    const auto res = uq::grid_sweep(binding, cfg.sweep_x.name, uq::linspace(cfg.sweep_x.min, cfg.sweep_x.max, cfg.sweep_x.n),
                                    cfg.sweep_y.name, uq::linspace(cfg.sweep_y.min, cfg.sweep_y.max, cfg.sweep_y.n),
                                    cfg.run.workers);
    std::size_t missing = 0;
    for (bool ok : res.converged) missing += ok ? 0 : 1;
    if (missing) note(std::to_string(missing) + " grid points did not converge and are recorded as missing");
    const auto p = out_path(cfg, "sweep.csv");
    io::write_csv(p, io::sweep_table(res));
    wrote(p);
    return kOk;
}

int run(int argc, char** argv) {
    CLI::App app{"asmbench: ASM1/BSM1 activated-sludge simulation, uncertainty, and accounting"};
    app.require_subcommand(1);
    Common common;
    Extra extra;

    auto* sim = app.add_subcommand("simulate", "integrate the plant and write trajectory.csv");
    add_common(sim, common);
    sim->add_option("--dt", extra.dt, "output interval, d");

    auto* steady = app.add_subcommand("steady", "converge to steady state; write steady.csv and tea_lca.csv");
    add_common(steady, common);

    auto* unc = app.add_subcommand("uncertainty", "Monte Carlo over the uncertain parameters");
    add_common(unc, common);
    unc->add_option("--samples", extra.samples, "sample count N");
    unc->add_option("--sampling", extra.sampling, "lhs or random")->check(CLI::IsMember({"lhs", "random"}));

    auto* mor = app.add_subcommand("morris", "Morris elementary-effects screening");
    add_common(mor, common);
    mor->add_option("--n-trajectory", extra.n_trajectory, "trajectories");
    mor->add_option("--levels", extra.levels, "grid levels p (even)");

    auto* fil = app.add_subcommand("filter", "Monte Carlo filtering of samples.csv / metrics.csv");
    add_common(fil, common);
    fil->add_option("--samples", extra.samples_csv, "samples CSV (default: <out>/samples.csv)");
    fil->add_option("--metrics", extra.metrics_csv, "metrics CSV (default: <out>/metrics.csv)");
    fil->add_option("--metric", extra.metric, "metric column");
    fil->add_option("--threshold", extra.threshold, "split threshold; equality counts as below");

    auto* swp = app.add_subcommand("sweep", "steady-state metrics on a 2-D decision grid");
    add_common(swp, common);
    swp->add_option("--nx", extra.nx, "points along the first variable");
    swp->add_option("--ny", extra.ny, "points along the second variable");

    io::ChartSpec chart;
    std::string kind;
    std::optional<double> threshold;
    auto* ch = app.add_subcommand("chart", "render a CSV as SVG");
    ch->add_option("--kind", kind, "timeseries | ecdf | morris_scatter | heatmap")->required();
    ch->add_option("--input", chart.input, "input CSV")->required();
    ch->add_option("--output", chart.output, "output SVG")->required();
    ch->add_option("--x", chart.x_column, "x column (timeseries)");
    ch->add_option("--columns", chart.columns, "columns to plot (heatmap: x y value)");
    ch->add_option("--metric", chart.metric, "metric filter (morris_scatter)");
    ch->add_option("--threshold", threshold, "threshold line (ecdf)");
    ch->add_option("--x-label", chart.x_label);
    ch->add_option("--y-label", chart.y_label);
    ch->add_option("--title", chart.title);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*ch) {
            chart.kind = io::parse_chart_kind(kind);
            chart.threshold = threshold;
            io::write_chart(chart);
            wrote(chart.output);
            return kOk;
        }
        const auto cfg = resolve(common);
        if (*sim) return cmd_simulate(cfg, extra);
        if (*steady) return cmd_steady(cfg);
        if (*unc) return cmd_uncertainty(cfg, extra);
        if (*mor) return cmd_morris(cfg, extra);
        if (*fil) return cmd_filter(cfg, extra);
        if (*swp) return cmd_sweep(cfg, extra);
    } catch (const ConfigError& e) {
        note(std::string("config error: ") + e.what());
        return kConfig;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "asmbench: solver error at t=%.6g d: %s\n", e.time(), e.what());
        return kSolver;
    } catch (const uq::ConvergenceRateError& e) {
        note(e.what());
        return kConvergenceRate;
    } catch (const ConvergenceError& e) {
        note(std::string("solver did not converge: ") + e.what());
        return kSolver;
    } catch (const std::exception& e) {
        note(e.what());
        return kFailure;
    }
    return kFailure;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

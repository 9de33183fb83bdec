#include "cgame/harness.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cgame/baselines.hpp"
#include "cgame/common.hpp"
#include "cgame/horizon.hpp"

namespace cgame {

namespace {

GameInstance bt_sqrt_instance(std::vector<double> mu, std::vector<double> gamma,
                              std::vector<double> c, std::vector<double> q,
                              std::vector<double> h, int T) {
    GameInstance inst;
    inst.T = T;
    inst.link = LinkFn::bradley_terry();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        inst.arms.push_back(
            ArmSpec{mu[i], c[i], gamma[i], ShrinkageFn::sqrt_decay(q[i], h[i])});
    }
    inst.validate();
    return inst;
}

std::vector<ExpectedValue> sensitive_expected(double map, double pm, double greedy,
                                              double cycle, double bt) {
    return {
        {"myopic-pause", map, 0.002, false},
        {"pure-myopic", pm, 0.002, false},
        {"greedy", greedy, 0.002, false},
        {"cycle", cycle, 0.002, false},
        {"bt-pull", bt, 0.15, true},
    };
}

std::vector<ExpectedValue> insensitive_expected(double opt, double gd, double greedy,
                                                double cycle, double bt, double tol) {
    return {
        {"opt", opt, tol, false},
        {"greedy-delay", gd, tol, false},
        {"greedy", greedy, tol, false},
        {"cycle", cycle, tol, false},
        {"bt-pull", bt, 0.15, true},
    };
}

double bt_pull_mean(const GameInstance& inst, int replications, std::uint64_t seed0) {
    double total = 0;
    for (int r = 0; r < replications; ++r) {
        BtPullHuman human(seed0 + static_cast<std::uint64_t>(r));
        total += simulate(inst, human, AiSpec::myopic()).human_total;
    }
    return total / replications;
}

StrategyRow make_row(const std::string& experiment, const ExpectedValue& ev, double value) {
    StrategyRow row;
    row.experiment = experiment;
    row.strategy = ev.strategy;
    row.value = value;
    row.expected = ev.value;
    row.abs_dev = std::fabs(value - ev.value);
    double band = ev.relative ? ev.tolerance * std::fabs(ev.value) : ev.tolerance;
    row.pass = row.abs_dev <= band;
    return row;
}

}  // namespace

std::vector<ExperimentSpec> built_in_experiments() {
    std::vector<ExperimentSpec> specs;

    ExperimentSpec ts1;
    ts1.name = "ts-1";
    ts1.time_sensitive = true;
    ts1.instance = bt_sqrt_instance({0.7, 0.85, 0.95}, {0.5, 0.48, 0.44},
                                    {0.53, 0.56, 0.6}, {0.1, 0.15, 0.5},
                                    {0.4, 0.45, 0.6}, 1000);
    ts1.expected = sensitive_expected(9.551, 3.125, 2.356, 2.373, 3.611);
    specs.push_back(ts1);

    ExperimentSpec ts2;
    ts2.name = "ts-2";
    ts2.time_sensitive = true;
    ts2.instance = bt_sqrt_instance({0.75, 0.8, 0.85}, {0.5, 0.55, 0.6},
                                    {0.55, 0.55, 0.55}, {0.15, 0.125, 0.1},
                                    {0.4, 0.4, 0.4}, 1000);
    // gamma_max = 0.6 pushes the window to 13 rounds, so the exhaustive
    // search visits 4^13 nodes and needs a larger budget than the default.
    ts2.enum_guard = 100000000;
    ts2.expected = sensitive_expected(5.051, 0.823, 1.088, 1.074, 1.077);
    specs.push_back(ts2);

    ExperimentSpec ts3;
    ts3.name = "ts-3";
    ts3.time_sensitive = true;
    ts3.instance = bt_sqrt_instance({0.73, 0.85, 0.9, 0.95}, {0.5, 0.48, 0.47, 0.45},
                                    {0.53, 0.56, 0.59, 0.58}, {0.1, 0.2, 0.5, 0.2},
                                    {0.3, 0.45, 0.6, 0.6}, 1000);
    ts3.expected = sensitive_expected(9.481, 7.039, 1.058, 1.280, 1.113);
    specs.push_back(ts3);

    ExperimentSpec ts4;
    ts4.name = "ts-4";
    ts4.time_sensitive = true;
    ts4.instance = bt_sqrt_instance({0.64, 0.95, 0.8, 0.88}, {0.5, 0.47, 0.5, 0.4},
                                    {0.53, 0.57, 0.54, 0.56}, {0.16, 0.15, 0.125, 0.1},
                                    {0.4, 0.5, 0.4, 0.4}, 1000);
    ts4.expected = sensitive_expected(6.858, -2.890, 4.013, 4.011, 2.940);
    specs.push_back(ts4);

    ExperimentSpec ti1;
    ti1.name = "ti-1";
    ti1.time_sensitive = false;
    ti1.instance = bt_sqrt_instance({0.86, 0.95, 0.87, 0.95}, {1, 1, 1, 1},
                                    {0.56, 0.52, 0.55, 0.53}, {1.4, 1.3, 1.5, 1.8},
                                    {0.75, 0.8, 0.6, 0.78}, 561);
    // 561 rounds is two short of the sum of exit pull counts, so the guard
    // has to be overridden; the best path drops three marginal pulls and
    // still fits the horizon without truncation.
    ti1.force_horizon = true;
    ti1.expected = insensitive_expected(10.9460, 10.9459, 4.2894, 7.1552, 4.7460, 0.0005);
    specs.push_back(ti1);

    ExperimentSpec ti2;
    ti2.name = "ti-2";
    ti2.time_sensitive = false;
    ti2.instance = bt_sqrt_instance({0.86, 0.95, 0.87, 0.95}, {1, 1, 1, 1},
                                    {0.57, 0.54, 0.56, 0.55}, {0.5, 0.3, 0.45, 0.4},
                                    {0.688, 0.76, 0.696, 0.76}, 15);
    ti2.expected = insensitive_expected(0.328, 0.319, 0.184, 0.220, 0.274, 0.002);
    specs.push_back(ti2);

    ExperimentSpec ti3;
    ti3.name = "ti-3";
    ti3.time_sensitive = false;
    ti3.instance = bt_sqrt_instance({0.95, 0.83, 0.7, 0.75}, {1, 1, 1, 1},
                                    {0.6, 0.55, 0.58, 0.56}, {3.5, 1.7, 2.2, 3.4},
                                    {0.8, 0.72, 0.54, 0.6}, 320);
    ti3.expected = insensitive_expected(8.2303, 8.2301, 1.8745, 2.6974, 4.0030, 0.0005);
    specs.push_back(ti3);

    return specs;
}

ExperimentSpec built_in_experiment(const std::string& name) {
    for (auto& spec : built_in_experiments()) {
        if (spec.name == name) return spec;
    }
    throw config_error("unknown experiment: " + name);
}

PauseCertificate check_pause_certificate(const GameInstance& inst,
                                         const WindowPlan& plan, double eps) {
    auto actions = myopic_then_pause_actions(plan, inst.T);
    auto traj = simulate_actions(inst, actions, AiSpec::myopic());
    double n_eps = pause_residual(inst, plan.tau);

    PauseCertificate cert;
    cert.min_window_value = plan.value;
    GameState state(inst.k());
    int cycle_len = 2 * plan.tau;
    for (int t = 0; t < inst.T; ++t) {
        if (t % cycle_len == 0) {
            for (double n : state.n) {
                cert.max_cycle_start_count = std::max(cert.max_cycle_start_count, n);
                if (n > n_eps + 1e-12) {
                    throw std::logic_error(
                        "pause certificate: discounted count above residual at a "
                        "cycle start");
                }
            }
            if (t + plan.tau <= inst.T) {
                double window = 0;
                for (int s = t; s < t + plan.tau; ++s) {
                    window += traj.rows[s].round_utility;
                }
                cert.full_windows += 1;
                cert.min_window_value = std::min(cert.min_window_value, window);
                if (window < (1 - eps) * plan.value - 1e-9) {
                    throw std::logic_error(
                        "pause certificate: replayed window fell below the "
                        "guaranteed share of the plan value");
                }
            }
        }
        state.advance(inst, actions[t]);
    }
    return cert;
}

Trajectory run_strategy(const GameInstance& inst, const std::string& strategy,
                        const RunOptions& opts) {
    if (strategy == "greedy") {
        GreedyHuman human;
        return simulate(inst, human, opts.ai);
    }
    if (strategy == "cycle") {
        CycleHuman human;
        return simulate(inst, human, opts.ai);
    }
    if (strategy == "greedy-delay") {
        GreedyDelayHuman human;
        return simulate(inst, human, opts.ai);
    }
    if (strategy == "bt-pull") {
        BtPullHuman human(opts.seed);
        return simulate(inst, human, opts.ai);
    }
    if (strategy == "myopic-pause" || strategy == "pure-myopic") {
        int tau = opts.tau_override;
        if (tau <= 0) {
            tau = window_size(inst, lipschitz_bounds(inst), opts.eps);
        }
        WindowPlan plan = solve_window(inst, tau, opts.enum_guard);
        auto actions = strategy == "myopic-pause"
                           ? myopic_then_pause_actions(plan, inst.T)
                           : pure_myopic_actions(plan, inst.T);
        auto traj = simulate_actions(inst, actions, opts.ai);
        if (strategy == "myopic-pause" && opts.tau_override <= 0 &&
            opts.ai.mode == AiSpec::Mode::Myopic && !inst.utility_override) {
            check_pause_certificate(inst, plan, opts.eps);
        }
        return traj;
    }
    if (strategy == "opt") {
        auto strat = solve_optimal(inst, opts.force_horizon);
        return simulate_actions(inst, strat.actions, opts.ai);
    }
    throw config_error("unknown strategy: " + strategy);
}

std::vector<StrategyRow> run_experiment(const ExperimentSpec& spec, int bt_replications) {
    const GameInstance& inst = spec.instance;
    std::vector<StrategyRow> rows;

    if (spec.time_sensitive) {
        int tau = window_size(inst, lipschitz_bounds(inst), spec.eps);
        WindowPlan plan = solve_window(inst, tau, spec.enum_guard);
        for (const auto& ev : spec.expected) {
            double value = 0;
            if (ev.strategy == "myopic-pause") {
                auto actions = myopic_then_pause_actions(plan, inst.T);
                value = simulate_actions(inst, actions, AiSpec::myopic()).human_total;
                check_pause_certificate(inst, plan, spec.eps);
            } else if (ev.strategy == "pure-myopic") {
                auto actions = pure_myopic_actions(plan, inst.T);
                value = simulate_actions(inst, actions, AiSpec::myopic()).human_total;
            } else if (ev.strategy == "bt-pull") {
                value = bt_pull_mean(inst, bt_replications, 1);
            } else {
                RunOptions o;
                value = run_strategy(inst, ev.strategy, o).human_total;
            }
            rows.push_back(make_row(spec.name, ev, value));
        }
        return rows;
    }

    SyncStrategy opt;
    for (const auto& ev : spec.expected) {
        double value = 0;
        if (ev.strategy == "opt") {
            opt = solve_optimal(inst, spec.force_horizon);
            value = opt.value;
        } else if (ev.strategy == "bt-pull") {
            value = bt_pull_mean(inst, bt_replications, 1);
        } else {
            RunOptions o;
            value = run_strategy(inst, ev.strategy, o).human_total;
        }
        rows.push_back(make_row(spec.name, ev, value));
    }
    return rows;
}

DeviationTable run_deviation() {
    DeviationTable table;

    ExperimentSpec ts3 = built_in_experiment("ts-3");
    int tau = window_size(ts3.instance, lipschitz_bounds(ts3.instance), ts3.eps);
    WindowPlan plan = solve_window(ts3.instance, tau, ts3.enum_guard);
    auto ts3_actions = myopic_then_pause_actions(plan, ts3.instance.T);

    ExperimentSpec ti1 = built_in_experiment("ti-1");
    auto ti1_actions = solve_optimal(ti1.instance, ti1.force_horizon).actions;

    for (int i = 0; i <= 10; ++i) {
        double p = (10 - i) * 0.1;
        table.p.push_back(p);
        auto ai = AiSpec::deviating_expectation(p);
        table.ts3_value.push_back(
            simulate_actions(ts3.instance, ts3_actions, ai).human_total);
        table.ti1_value.push_back(
            simulate_actions(ti1.instance, ti1_actions, ai).human_total);
    }
    return table;
}

namespace {

void append_deviation_rows(std::vector<StrategyRow>& rows) {
    DeviationTable table = run_deviation();

    auto endpoint_row = [&](const std::string& label, double value, double expected) {
        StrategyRow row;
        row.experiment = "deviation";
        row.strategy = label;
        row.value = value;
        row.expected = expected;
        row.abs_dev = std::fabs(value - expected);
        row.pass = row.abs_dev <= 0.002;
        rows.push_back(row);
    };
    endpoint_row("ts-3-endpoint-p1", table.ts3_value.front(), 9.481);
    endpoint_row("ti-1-endpoint-p1", table.ti1_value.front(), 10.946);

    auto monotone_row = [&](const std::string& label, const std::vector<double>& v) {
        // p decreases down the table, so the value must strictly increase.
        double min_step = v[1] - v[0];
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            min_step = std::min(min_step, v[i + 1] - v[i]);
        }
        StrategyRow row;
        row.experiment = "deviation";
        row.strategy = label;
        row.value = min_step;
        row.pass = min_step > 0;
        rows.push_back(row);
    };
    monotone_row("ts-3-min-step", table.ts3_value);
    monotone_row("ti-1-min-step", table.ti1_value);

    auto gain_row = [&](const std::string& label, const std::vector<double>& v) {
        StrategyRow row;
        row.experiment = "deviation";
        row.strategy = label;
        row.value = v.back() - v.front();
        row.pass = row.value > kTol;
        rows.push_back(row);
    };
    gain_row("ts-3-gain-at-p0", table.ts3_value);
    gain_row("ti-1-gain-at-p0", table.ti1_value);
}

}  // namespace

std::vector<StrategyRow> reproduce(const std::string& which, int bt_replications) {
    std::vector<StrategyRow> rows;
    if (which == "deviation") {
        append_deviation_rows(rows);
        return rows;
    }
    if (which == "all") {
        for (const auto& spec : built_in_experiments()) {
            auto r = run_experiment(spec, bt_replications);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        append_deviation_rows(rows);
        return rows;
    }
    auto r = run_experiment(built_in_experiment(which), bt_replications);
    rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<StrategyRow>& rows) {
    out << "experiment,strategy,value,expected,abs_dev,pass\n";
    for (const auto& row : rows) {
        out << row.experiment << ',' << row.strategy << ',' << format_double(row.value)
            << ',';
        if (row.expected) {
            out << format_double(*row.expected) << ',' << format_double(row.abs_dev);
        } else {
            out << ',';
        }
        out << ',' << (row.pass ? 1 : 0) << '\n';
    }
}

void write_deviation_csv(std::ostream& out, const DeviationTable& table) {
    out << "p,ts3_myopic_pause,ti1_opt\n";
    for (std::size_t i = 0; i < table.p.size(); ++i) {
        out << format_double(table.p[i]) << ',' << format_double(table.ts3_value[i])
            << ',' << format_double(table.ti1_value[i]) << '\n';
    }
}

void write_plot_csv(std::ostream& out, const Trajectory& traj, int rounds) {
    int k = traj.rows.empty() ? 0 : static_cast<int>(traj.rows.front().genmeans.size());
    out << "round";
    for (int i = 0; i < k; ++i) out << ",genmean_" << i;
    out << ",cum_utility\n";
    int n = std::min<int>(rounds, static_cast<int>(traj.rows.size()));
    for (int t = 0; t < n; ++t) {
        const auto& row = traj.rows[t];
        out << row.round;
        for (double g : row.genmeans) out << ',' << format_double(g);
        out << ',' << format_double(row.cum_utility) << '\n';
    }
}

}  // namespace cgame

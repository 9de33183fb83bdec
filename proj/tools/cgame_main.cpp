#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgame/baselines.hpp"
#include "cgame/common.hpp"
#include "cgame/gadgets.hpp"
#include "cgame/harness.hpp"
#include "cgame/horizon.hpp"
#include "cgame/instance.hpp"
#include "cgame/simulate.hpp"
#include "cgame/window.hpp"

namespace {

using namespace cgame;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write to " + path);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

struct AiFlags {
    double deviate_p = -1;
    std::string deviate_mode = "sampled";
    std::uint64_t ai_seed = 99;

    AiSpec build() const {
        if (deviate_p < 0) return AiSpec::myopic();
        if (deviate_mode == "sampled") return AiSpec::deviating_sampled(deviate_p, ai_seed);
        if (deviate_mode == "expectation") return AiSpec::deviating_expectation(deviate_p);
        throw config_error("unknown deviate mode: " + deviate_mode);
    }
};

int run_simulate(const std::string& config, const std::string& strategy,
                 const std::string& out_path, const RunOptions& opts) {
    GameInstance inst = load_instance(config);
    Trajectory traj = run_strategy(inst, strategy, opts);
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_trajectory_csv(out, traj);
    } else {
        write_trajectory_csv(std::cout, traj);
    }
    std::cerr << "human_total=" << format_double(traj.human_total)
              << " ai_total=" << format_double(traj.ai_total) << "\n";
    return 0;
}

int run_solve_insensitive(const std::string& config, const std::string& out_path,
                          bool force) {
    GameInstance inst = load_instance(config);
    SyncStrategy strat = solve_optimal(inst, force);
    if (!out_path.empty()) write_text(out_path, sync_strategy_to_json(strat));
    std::cout << "value=" << format_double(strat.value)
              << " rounds=" << strat.actions.size()
              << " truncated=" << (strat.truncated ? 1 : 0) << "\n";
    if (!strat.note.empty()) std::cout << "note=" << strat.note << "\n";
    return 0;
}

int run_solve_sensitive(const std::string& config, const std::string& out_path,
                        double eps, int tau_override, long long enum_guard) {
    GameInstance inst = load_instance(config);
    int tau = tau_override > 0 ? tau_override
                               : window_size(inst, lipschitz_bounds(inst), eps);
    WindowPlan plan = solve_window(inst, tau, enum_guard);
    if (!out_path.empty()) write_text(out_path, window_plan_to_json(plan));
    std::cout << "tau=" << plan.tau << " value=" << format_double(plan.value)
              << " residual=" << format_double(pause_residual(inst, plan.tau)) << "\n";
    return 0;
}

int run_baselines(const std::string& config, const std::string& strategy,
                  const std::string& out_path, std::uint64_t seed, int replications) {
    GameInstance inst = load_instance(config);
    if (strategy == "bt-pull" && replications > 1) {
        double total = 0;
        for (int r = 0; r < replications; ++r) {
            BtPullHuman human(seed + static_cast<std::uint64_t>(r));
            total += simulate(inst, human, AiSpec::myopic()).human_total;
        }
        std::cout << "mean_human_total=" << format_double(total / replications)
                  << " replications=" << replications << "\n";
        return 0;
    }
    RunOptions opts;
    opts.seed = seed;
    return run_simulate(config, strategy, out_path, opts);
}

int run_gadget_build(const std::string& type, const std::vector<int>& delays, int horizon,
                     const std::string& out_path, double alpha, double nu, double beta,
                     double eps_gamma, double trap_eps) {
    GameInstance inst;
    if (type == "same-gamma" || type == "same-shrinkage") {
        BlockingGadget gadget = type == "same-gamma"
                                    ? build_same_gamma_gadget(delays, horizon)
                                    : build_same_shrinkage_gadget(delays, horizon);
        inst = gadget.instance;
        std::cout << "arms=" << inst.k() << " T=" << inst.T
                  << " theta_high=" << format_double(gadget.theta_high)
                  << " theta_low=" << format_double(gadget.theta_low)
                  << " respected_payoff=" << format_double(gadget.respected_payoff)
                  << "\n";
    } else if (type == "pausing") {
        PausingGadget gadget = build_pausing_gadget(alpha, eps_gamma, nu, beta, horizon);
        inst = gadget.instance;
        std::cout << "arms=" << inst.k() << " T=" << inst.T << " kappa=" << gadget.kappa
                  << " nu=" << format_double(gadget.nu)
                  << " nu_prime=" << format_double(gadget.nu_prime) << "\n";
    } else if (type == "greedy-trap") {
        inst = build_greedy_trap(trap_eps);
        std::cout << "arms=" << inst.k() << " T=" << inst.T << "\n";
    } else {
        throw config_error("unknown gadget type: " + type);
    }
    if (!out_path.empty()) write_text(out_path, instance_to_json(inst));
    return 0;
}

int run_gadget_verify(const std::string& type, const std::vector<int>& delays,
                      int horizon, const std::string& schedule_path, double tolerance) {
    if (type != "same-gamma" && type != "same-shrinkage") {
        throw config_error("verify supports same-gamma and same-shrinkage gadgets");
    }
    BlockingGadget gadget = type == "same-gamma"
                                ? build_same_gamma_gadget(delays, horizon)
                                : build_same_shrinkage_gadget(delays, horizon);
    std::vector<int> actions = schedule_path.empty()
                                   ? canonical_schedule(delays, horizon)
                                   : load_schedule(schedule_path);
    ScheduleReport report = evaluate_schedule(gadget, actions);
    double target = gadget.respected_payoff * horizon;
    bool pass = report.delay_violations == 0 && report.decoy_pulls == 0 &&
                report.optouts == 0 && std::fabs(report.utility - target) <= tolerance;
    std::cout << "utility=" << format_double(report.utility)
              << " target=" << format_double(target)
              << " violations=" << report.delay_violations
              << " decoy_pulls=" << report.decoy_pulls << " optouts=" << report.optouts
              << " pass=" << (pass ? 1 : 0) << "\n";
    return pass ? 0 : 1;
}

int run_reproduce(const std::string& which, const std::string& out_path,
                  const std::string& deviation_out, int replications) {
    auto rows = reproduce(which, replications);
    std::ostringstream csv;
    write_summary_csv(csv, rows);
    if (!out_path.empty()) {
        write_text(out_path, csv.str());
    } else {
        std::cout << csv.str();
    }
    if (!deviation_out.empty() && (which == "all" || which == "deviation")) {
        auto out = open_out(deviation_out);
        write_deviation_csv(out, run_deviation());
    }
    bool all_pass = true;
    for (const auto& row : rows) {
        std::cerr << (row.pass ? "[PASS] " : "[FAIL] ") << row.experiment << "/"
                  << row.strategy << " value=" << format_double(row.value);
        if (row.expected) {
            std::cerr << " expected=" << format_double(*row.expected)
                      << " dev=" << format_double(row.abs_dev);
        }
        std::cerr << "\n";
        all_pass = all_pass && row.pass;
    }
    return all_pass ? 0 : 1;
}

int run_plot_data(const std::string& config, const std::string& strategy,
                  const std::string& out_path, int rounds, const RunOptions& opts) {
    GameInstance inst = load_instance(config);
    Trajectory traj = run_strategy(inst, strategy, opts);
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_plot_csv(out, traj, rounds);
    } else {
        write_plot_csv(std::cout, traj, rounds);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Content-creation game simulator and strategy solvers"};
    app.require_subcommand(1);

    std::string config, out_path, strategy = "greedy", schedule_path, deviation_out;
    std::string which = "all", gadget_type = "same-gamma";
    std::uint64_t seed = 1;
    int tau_override = 0, replications = 100, rounds = 50, horizon = 0;
    long long enum_guard = 10000000;
    double eps = 0.1, tolerance = 1e-9;
    double alpha = 0.1, nu = 0.1, beta = 2.0, eps_gamma = 0.05, trap_eps = 0.03;
    bool force = false;
    std::vector<int> delays;
    AiFlags ai;

    auto add_ai_flags = [&](CLI::App* cmd) {
        cmd->add_option("--deviate-p", ai.deviate_p,
                        "AI follows the myopic arm with this probability");
        cmd->add_option("--deviate-mode", ai.deviate_mode, "sampled or expectation");
        cmd->add_option("--ai-seed", ai.ai_seed, "seed for the sampled deviating AI");
    };
    auto add_window_flags = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon,--eps", eps, "pause-window accuracy target");
        cmd->add_option("--tau-override", tau_override, "fixed window length");
        cmd->add_option("--enum-guard", enum_guard, "window search node budget");
    };

    auto* sim = app.add_subcommand("simulate", "Run one strategy and emit a trajectory CSV");
    sim->add_option("--config", config, "instance JSON")->required();
    sim->add_option("--strategy", strategy,
                    "greedy|cycle|bt-pull|greedy-delay|myopic-pause|pure-myopic|opt");
    sim->add_option("--out", out_path, "trajectory CSV path (default stdout)");
    sim->add_option("--seed", seed, "seed for bt-pull");
    sim->add_flag("--force", force, "solve even when T is below the exit-sum bound");
    add_window_flags(sim);
    add_ai_flags(sim);

    auto* si = app.add_subcommand("solve-insensitive",
                                  "Exit-graph optimum for undiscounted instances");
    si->add_option("--config", config)->required();
    si->add_option("--out", out_path, "strategy JSON path");
    si->add_flag("--force", force);

    auto* ss = app.add_subcommand("solve-sensitive",
                                  "Exhaustive pause-window plan for discounted instances");
    ss->add_option("--config", config)->required();
    ss->add_option("--out", out_path, "plan JSON path");
    add_window_flags(ss);

    auto* base = app.add_subcommand("baselines", "Run a baseline policy");
    base->add_option("--config", config)->required();
    base->add_option("--strategy", strategy, "greedy|cycle|bt-pull|greedy-delay");
    base->add_option("--out", out_path, "trajectory CSV path");
    base->add_option("--seed", seed);
    base->add_option("--replications", replications, "average bt-pull over seeds");

    auto* gadget = app.add_subcommand("gadget", "Build or verify hardness instances");
    gadget->require_subcommand(1);
    auto* gbuild = gadget->add_subcommand("build", "Write a gadget instance JSON");
    gbuild->add_option("--type", gadget_type,
                       "same-gamma|same-shrinkage|pausing|greedy-trap");
    gbuild->add_option("--delays", delays, "delay bounds, e.g. 2,4,4")->delimiter(',');
    gbuild->add_option("--T", horizon, "horizon (rounds)");
    gbuild->add_option("--out", out_path, "instance JSON path");
    gbuild->add_option("--alpha", alpha, "pausing: required pull frequency");
    gbuild->add_option("--nu", nu, "pausing: rested pull utility");
    gbuild->add_option("--beta", beta, "pausing: penalty scale");
    gbuild->add_option("--eps-gamma", eps_gamma, "pausing: discount offset below 1/2");
    gbuild->add_option("--trap-eps", trap_eps, "greedy-trap: optimality gap");
    auto* gverify = gadget->add_subcommand("verify", "Score a schedule on a gadget");
    gverify->add_option("--type", gadget_type, "same-gamma|same-shrinkage");
    gverify->add_option("--delays", delays)->delimiter(',');
    gverify->add_option("--T", horizon)->required();
    gverify->add_option("--schedule", schedule_path,
                        "1-based arm ids, 0 = opt out (default: canonical)");
    gverify->add_option("--tolerance", tolerance, "allowed payoff slack");

    auto* rep = app.add_subcommand("reproduce", "Re-run the built-in studies");
    rep->add_option("which", which, "all | ts-1..ts-4 | ti-1..ti-3 | deviation");
    rep->add_option("--out", out_path, "summary CSV path (default stdout)");
    rep->add_option("--deviation-out", deviation_out, "deviation sweep CSV path");
    rep->add_option("--replications", replications, "bt-pull seed count");

    auto* plot = app.add_subcommand("plot-data", "Per-round genmeans and running utility");
    plot->add_option("--config", config)->required();
    plot->add_option("--strategy", strategy);
    plot->add_option("--out", out_path, "CSV path (default stdout)");
    plot->add_option("--rounds", rounds, "rows to emit");
    plot->add_option("--seed", seed);
    plot->add_flag("--force", force);
    add_window_flags(plot);
    add_ai_flags(plot);

    CLI11_PARSE(app, argc, argv);

    try {
        cgame::RunOptions opts;
        opts.eps = eps;
        opts.tau_override = tau_override;
        opts.enum_guard = enum_guard;
        opts.force_horizon = force;
        opts.seed = seed;
        opts.ai = ai.build();

        if (*sim) return run_simulate(config, strategy, out_path, opts);
        if (*si) return run_solve_insensitive(config, out_path, force);
        if (*ss) return run_solve_sensitive(config, out_path, eps, tau_override, enum_guard);
        if (*base) return run_baselines(config, strategy, out_path, seed, replications);
        if (*gbuild)
            return run_gadget_build(gadget_type, delays, horizon, out_path, alpha, nu,
                                    beta, eps_gamma, trap_eps);
        if (*gverify)
            return run_gadget_verify(gadget_type, delays, horizon, schedule_path,
                                     tolerance);
        if (*rep) return run_reproduce(which, out_path, deviation_out, replications);
        if (*plot) return run_plot_data(config, strategy, out_path, rounds, opts);
    } catch (const cgame::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cgame::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgame/instance.hpp"
#include "cgame/simulate.hpp"
#include "cgame/window.hpp"

namespace cgame {

struct ExpectedValue {
    std::string strategy;
    double value = 0;
    double tolerance = 0;   // absolute band, or fraction of value when relative
    bool relative = false;  // used for the seed-averaged randomized baseline
};

struct ExperimentSpec {
    std::string name;
    bool time_sensitive = false;
    GameInstance instance;
    double eps = 0.1;                 // pause-window accuracy target (time-sensitive)
    long long enum_guard = 10000000;  // window search budget
    bool force_horizon = false;       // run even if T is below the long-horizon bound
    std::vector<ExpectedValue> expected;
};

// The seven studies shipped with the tool: ts-1..ts-4 (discounted, horizon
// 1000) and ti-1..ti-3 (undiscounted, exit-bounded horizons).
std::vector<ExperimentSpec> built_in_experiments();
ExperimentSpec built_in_experiment(const std::string& name);

struct StrategyRow {
    std::string experiment;
    std::string strategy;
    double value = 0;
    std::optional<double> expected;
    double abs_dev = 0;
    bool pass = true;
};

struct RunOptions {
    double eps = 0.1;
    int tau_override = 0;  // 0 = size the window from the instance constants
    long long enum_guard = 10000000;
    bool force_horizon = false;
    std::uint64_t seed = 1;
    int replications = 1;  // seeds seed..seed+replications-1 for bt-pull
    AiSpec ai = AiSpec::myopic();
};

// Runs one named strategy on an instance and returns its trajectory.
// Strategies: greedy | cycle | bt-pull | greedy-delay | myopic-pause |
// pure-myopic | opt.
Trajectory run_strategy(const GameInstance& inst, const std::string& strategy,
                        const RunOptions& opts);

// All five strategies of a built-in experiment, checked against the recorded
// values. bt-pull is averaged over `bt_replications` seeds starting at 1.
std::vector<StrategyRow> run_experiment(const ExperimentSpec& spec,
                                        int bt_replications = 100);

// which: "all", an experiment name, or "deviation".
std::vector<StrategyRow> reproduce(const std::string& which, int bt_replications = 100);

void write_summary_csv(std::ostream& out, const std::vector<StrategyRow>& rows);

struct DeviationTable {
    std::vector<double> p;          // 1.0 down to 0.0 in steps of 0.1
    std::vector<double> ts3_value;  // pause-window strategy on ts-3
    std::vector<double> ti1_value;  // exit-graph strategy on ti-1
};

// Expectation-mode sweep of the AI deviation probability against the two
// frozen reference strategies.
DeviationTable run_deviation();
void write_deviation_csv(std::ostream& out, const DeviationTable& table);

// First `rounds` rows of a strategy's trajectory as plot-ready CSV
// (round, genmean per arm, cumulative utility).
void write_plot_csv(std::ostream& out, const Trajectory& traj, int rounds);

// Safety net run after every pause-window simulation: at the start of each
// replay-pause cycle every discounted count must sit at or below the pause
// residual, and every fully replayed window must collect at least
// (1 - eps) times the plan value.
struct PauseCertificate {
    int full_windows = 0;
    double min_window_value = 0;
    double max_cycle_start_count = 0;
};

PauseCertificate check_pause_certificate(const GameInstance& inst,
                                         const WindowPlan& plan, double eps);

}  // namespace cgame

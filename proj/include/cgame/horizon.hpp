#pragma once

#include <string>
#include <vector>

#include "cgame/simulate.hpp"

namespace cgame {

// Per-arm exit data for undiscounted (gamma = 1) instances. exit_mean[i] is
// the generative-mean level at which pulling arm i stops being profitable
// (root of sigma(mu_i, x) = c_i); exit_pull[i] is the smallest pull count
// whose generative mean reaches that level (within tolerance).
struct ExitProfile {
    std::vector<double> exit_mean;
    std::vector<int> exit_pull;
};

ExitProfile exit_profile(const GameInstance& inst);

double initial_max_genmean(const GameInstance& inst);

// Largest number of additional pulls of `arm`, starting from `from` total
// pulls, that keeps its generative mean at or below `target` (within
// tolerance). Zero when the arm is already exited, already above the target,
// or the target lies beyond the arm's exit mean (such pulls would be
// unprofitable). Never advances the arm past its exit pull count.
int p_inverse(const GameInstance& inst, const ExitProfile& prof, int arm,
              double target, int from);

// Sum of exit pull counts over the initially profitable arms: the horizon at
// which the reduced-graph strategy provably fits.
long long min_long_horizon(const GameInstance& inst, const ExitProfile& prof);

// Reduced strategy graph. Node 0 is the fresh state after its free
// synchronization; node (arm i, pulls r) represents "arm i was just pulled
// for the r-th time and now holds the max generative mean, everyone else is
// synced up to it". Every edge strictly raises the max generative mean, so
// the graph is acyclic by construction.
struct DagNode {
    int arm = -1;       // -1 for the start node
    int pulls = 0;      // r, in [1, exit_pull[arm]]
    double maxgen = 0;  // genmean(arm, pulls); initial max for the start node
};

struct DagEdge {
    int from = 0, to = 0;
    double weight = 0;  // gain-pull utility plus the follower sync utilities
};

struct ReducedDag {
    std::vector<DagNode> nodes;          // 0 = start, then arm-major, pulls ascending
    std::vector<DagEdge> edges;          // grouped by source, targets by arm ascending
    std::vector<std::vector<int>> counts;  // canonical absolute pull counts per node
    std::vector<int> first_sync;         // pulls per arm in the free initial sync
    double base_value = 0;               // utility of the initial sync block
};

// sync_at_source values follower sync pulls at the max *before* the gain pull
// instead of after it; kept for comparison runs, off in normal use (the
// decoded order is gain first, so the default matches re-simulation).
ReducedDag build_reduced_dag(const GameInstance& inst, const ExitProfile& prof,
                             bool sync_at_source = false);

struct SyncEpoch {
    int gain_arm = -1;            // -1 marks the initial sync block
    std::vector<int> sync_pulls;  // additional pulls per arm within the epoch
};

struct SyncStrategy {
    std::vector<SyncEpoch> epochs;
    std::vector<int> actions;  // length exactly T (opt-out padded / truncated)
    double value = 0;          // equals the simulated utility of `actions`
    bool truncated = false;
    std::string note;
};

// Longest-path optimal strategy for gamma = 1 instances. Requires
// T >= min_long_horizon unless force is set, in which case the decoded
// actions are truncated at T and the value is re-simulated (heuristic, the
// long-horizon optimality guarantee is void).
SyncStrategy solve_optimal(const GameInstance& inst, bool force = false,
                           bool sync_at_source = false);

std::string sync_strategy_to_json(const SyncStrategy& s);

struct BruteForceResult {
    double value = 0;
    std::vector<int> actions;  // length T
};

// Exact optimum by dynamic programming over pull-count vectors (gamma = 1
// makes opt-out rounds position-independent no-ops, so pull counts are the
// whole state). Guards: the count box must have at most cell_guard cells and
// T at most t_guard.
BruteForceResult brute_force_opt(const GameInstance& inst,
                                 long long cell_guard = 1000000, int t_guard = 64);

}  // namespace cgame

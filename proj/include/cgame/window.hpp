#pragma once

#include <string>
#include <vector>

#include "cgame/simulate.hpp"

namespace cgame {

// Constants behind the window sizing: worst-case slopes of the shrinkage
// curves and of the link in its second argument, and the utility u0 of the
// best single pull from the fresh state. n_eps is filled in once the window
// length tau is known (it depends on the accuracy target).
struct LipschitzBounds {
    double l_g = 0;
    double l_sigma = 0;
    double u0 = 0;
    double n_eps = 0;
};

LipschitzBounds lipschitz_bounds(const GameInstance& inst);

// Smallest tau (>= 1) such that after tau opt-out rounds every discounted
// pull count is small enough that replaying an optimal tau-round plan loses
// at most an eps fraction of its value. Throws config_error when u0 <= 0 or
// every gamma is 1 (no decay, pausing cannot reset the state).
int window_size(const GameInstance& inst, const LipschitzBounds& b, double eps);

struct WindowPlan {
    int tau = 0;
    std::vector<int> actions;  // length tau, arm indices or kOptOut
    double value = 0;          // total utility of the plan from the fresh state
};

// Exhaustive search over all (k+1)^tau action sequences for the utility-
// maximal tau-round plan against the myopic AI, starting from the fresh
// state. Deterministic tie-break: the lexicographically smallest optimal
// sequence under the order Pull(0) < ... < Pull(k-1) < OptOut. Throws
// capacity_error when (k+1)^tau exceeds enum_guard.
WindowPlan solve_window(const GameInstance& inst, int tau,
                        long long enum_guard = 10000000);

std::string window_plan_to_json(const WindowPlan& plan);
WindowPlan window_plan_from_json(const std::string& text);

// Full-horizon action sequences built from a plan.
std::vector<int> myopic_then_pause_actions(const WindowPlan& plan, int T);
std::vector<int> pure_myopic_actions(const WindowPlan& plan, int T);

// (1 - eps)/2 * floor(T / 2tau) / (floor(T / 2tau) + 1): the guaranteed
// fraction of the optimal utility that the plan-then-pause schedule attains.
double approx_ratio_bound(double eps, int tau, int T);

// gamma_max/(1 - gamma_max) * gamma_max^tau: largest any discounted pull
// count can be after tau consecutive opt-out rounds (from any reachable
// state). This is the n_eps that backs the window-size choice.
double pause_residual(const GameInstance& inst, int tau);

}  // namespace cgame

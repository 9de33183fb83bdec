#pragma once

#include <string>
#include <vector>

#include "cgame/simulate.hpp"

namespace cgame {

// ----- pull-spacing math shared by the blocking constructions -----

// Steady-state ceiling of a discounted pull count when an arm is pulled once
// every D rounds: gamma / (1 - gamma^D).
double respected_count_bound(double gamma, int D);
// Floor of the count right after a pull that arrives early (within D - 1
// rounds of the previous one): gamma + gamma^D.
double violated_count_bound(double gamma, int D);
// f_D(x) = x^D + x, the map inverted when calibrating per-arm discounts.
double f_delay(double x, int D);

// Bisection solve of f_D(gamma) = phi on [0.2, 0.35]. Runs
// ceil(log2(4 (D+1) R0 / delta)) iterations (R0 = 0.15 bracket width,
// capped at 200), which pins |f_D(result) - phi| <= delta / 4 because f_D
// is (D+1)-Lipschitz on [0, 1/2].
double solve_gamma_for_delay(int D, double delta, double phi = 0.35);

// ----- blocking gadgets -----

// A k+1 arm instance where the only way to sustain the top per-round payoff
// is to pull arm i at most once every delays[i] rounds; the extra decoy arm
// always loses money. theta_high is the per-round pick probability while the
// spacing is respected, theta_low an upper bound on it in the round after
// any violation.
struct BlockingGadget {
    GameInstance instance;
    std::vector<int> delays;
    double theta_high = 0;
    double theta_low = 0;
    double cost = 0;                // shared pull cost
    double respected_payoff = 0;    // theta_high - cost, earned exactly per round
    double delta = 0;               // calibration slack (same-shrinkage only)
    std::vector<double> gamma_hat;  // calibrated discounts (same-shrinkage only)
};

// All arms share gamma = 1/2; the delays are enforced through per-arm
// argument scaling of one common shrinkage shape.
BlockingGadget build_same_gamma_gadget(const std::vector<int>& delays, int horizon);

// All arms share one linear shrinkage; the delays are enforced through
// per-arm discounts calibrated by solve_gamma_for_delay.
BlockingGadget build_same_shrinkage_gadget(const std::vector<int>& delays, int horizon);

struct ScheduleReport {
    double utility = 0;
    int delay_violations = 0;  // pulls of a delay arm that arrive too early
    int decoy_pulls = 0;
    int optouts = 0;
};

ScheduleReport evaluate_schedule(const BlockingGadget& g, const std::vector<int>& actions);

// Violation-free full-pull schedule (earliest-eligible greedy, shortest delay
// first). Throws config_error when the delay set cannot fill every round.
std::vector<int> canonical_schedule(const std::vector<int>& delays, int horizon);

// Schedule files: whitespace-separated entries, one per round, 1-based arm
// indices with 0 meaning opt-out.
std::vector<int> load_schedule(const std::string& path);
std::string schedule_to_string(const std::vector<int>& actions);

// ----- pausing gadget -----

// A two-arm instance with a utility override under which any strategy that
// pulls on at least alpha * T rounds ends strictly negative, while pulling
// once every kappa + 1 rounds earns nu per pull.
struct PausingGadget {
    GameInstance instance;
    int kappa = 0;
    double alpha = 0;
    double nu = 0;
    double nu_prime = 0;
    double n_low = 0;
    double n_high = 0;
};

PausingGadget build_pausing_gadget(double alpha = 0.1, double eps_gamma = 0.05,
                                   double nu = 0.1, double beta = 2.0, int T = 200);

// Pull arm 0 on rounds 1, kappa+2, 2(kappa+1)+1, ...; opt out otherwise.
std::vector<int> pull_then_pause_actions(int kappa, int T);

// ----- greedy trap -----

// A two-arm undiscounted instance on which the delay-greedy baseline banks
// small early gains and finishes with 0.3 - eps while the optimum is 0.3.
GameInstance build_greedy_trap(double eps = 0.03);

}  // namespace cgame

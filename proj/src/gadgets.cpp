#include "cgame/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cgame/common.hpp"

namespace cgame {

double respected_count_bound(double gamma, int D) {
    return gamma / (1.0 - std::pow(gamma, D));
}

double violated_count_bound(double gamma, int D) {
    return gamma + std::pow(gamma, D);
}

double f_delay(double x, int D) { return std::pow(x, D) + x; }

double solve_gamma_for_delay(int D, double delta, double phi) {
    if (D < 2) throw config_error("delays must be at least 2");
    if (!(delta > 0)) throw config_error("calibration slack must be positive");
    const double r0 = 0.15;  // width of the [0.2, 0.35] bracket
    int iters = static_cast<int>(std::ceil(std::log2(4.0 * (D + 1) * r0 / delta)));
    iters = std::clamp(iters, 1, 200);
    double lo = 0.2, hi = 0.35;
    for (int it = 0; it < iters; ++it) {
        double mid = 0.5 * (lo + hi);
        (f_delay(mid, D) < phi ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

void check_delays(const std::vector<int>& delays) {
    if (delays.empty()) throw config_error("need at least one delay arm");
    for (int d : delays)
        if (d < 2 || d > 10000) throw config_error("delays must lie in [2, 10000]");
}

}  // namespace

BlockingGadget build_same_gamma_gadget(const std::vector<int>& delays, int horizon) {
    check_delays(delays);
    const double gamma = 0.5, p_star = 0.5, cost = 0.6;
    const double mu_hi = 0.9, mu_lo = 0.1;

    BlockingGadget g;
    g.delays = delays;
    g.cost = cost;

    double worst_respected = 0;  // max_i lambda_i * gamma / (1 - gamma^D_i)
    for (int d : delays) {
        double lambda = p_star / violated_count_bound(gamma, d);
        worst_respected = std::max(worst_respected, lambda * respected_count_bound(gamma, d));
        g.instance.arms.push_back({mu_hi, cost, gamma,
                                   ShrinkageFn::scaled(lambda, ShrinkageFn::linear(0.7, 0.35))});
    }
    // Any early pull drives its scaled count to at least p_star, any
    // respected schedule keeps every scaled count at most worst_respected,
    // and worst_respected < p_star by the spacing bound. The link's knee at
    // the respected genmean ceiling turns that gap into a flat payoff for
    // respected play and a strictly lower one after violations.
    double gen_upper = mu_hi - (0.7 - 0.35 * p_star);          // 0.375
    double gen_lower = mu_hi - (0.7 - 0.35 * worst_respected);  // the knee
    g.instance.arms.push_back({mu_lo, cost, gamma, ShrinkageFn::linear(0.1, 0.1)});
    g.instance.T = horizon;
    g.instance.link = LinkFn::piecewise_gadget(mu_lo, mu_hi, gen_lower);
    g.instance.validate();

    g.theta_high = (1.0 + mu_hi - gen_lower) / 2.0;
    g.theta_low = (1.0 + mu_hi - gen_upper) / 2.0;
    g.respected_payoff = g.theta_high - cost;
    return g;
}

BlockingGadget build_same_shrinkage_gadget(const std::vector<int>& delays, int horizon) {
    check_delays(delays);
    const double phi = 0.35, cost = 0.77;
    const double mu_hi = 1.0, mu_lo = 0.6;
    int d_max = *std::max_element(delays.begin(), delays.end());
    double delta = (5.0 / 6.0) * std::pow(0.2, d_max);

    BlockingGadget g;
    g.delays = delays;
    g.cost = cost;
    g.delta = delta;

    for (int d : delays) {
        double gh = solve_gamma_for_delay(d, delta, phi);
        g.gamma_hat.push_back(gh);
        g.instance.arms.push_back({mu_hi, cost, gh, ShrinkageFn::linear(0.6, 0.15)});
    }
    g.instance.arms.push_back({mu_lo, cost, 0.5, ShrinkageFn::linear(0.6, 0.15)});
    g.instance.T = horizon;

    // Post-pull counts: an early pull lands at f_D(gamma_hat) or above, a
    // respected schedule stays at or below the steady-state bound; the
    // calibration keeps those on opposite sides of phi with delta/4 and
    // 3 delta/4 of room. Counts map to genmeans via the shared 0.15 slope.
    double gen_upper = mu_hi - 0.6 + 0.15 * (phi - delta / 4.0);
    double gen_lower = mu_hi - 0.6 + 0.15 * (phi - 3.0 * delta / 4.0);
    g.instance.link = LinkFn::piecewise_gadget(mu_lo, mu_hi, gen_lower);
    g.instance.validate();

    g.theta_high = (1.0 + mu_hi - gen_lower) / 2.0;
    g.theta_low = (1.0 + mu_hi - gen_upper) / 2.0;
    g.respected_payoff = g.theta_high - cost;
    return g;
}

ScheduleReport evaluate_schedule(const BlockingGadget& g, const std::vector<int>& actions) {
    const GameInstance& inst = g.instance;
    if (static_cast<int>(actions.size()) != inst.T)
        throw config_error("schedule length must equal the instance horizon");
    int k_delay = static_cast<int>(g.delays.size());

    ScheduleReport rep;
    std::vector<int> last_pull(k_delay, -1);
    for (int t = 1; t <= inst.T; ++t) {
        int a = actions[t - 1];
        if (a == kOptOut) {
            ++rep.optouts;
        } else if (a >= k_delay) {
            ++rep.decoy_pulls;
        } else {
            if (last_pull[a] >= 0 && t - last_pull[a] < g.delays[a]) ++rep.delay_violations;
            last_pull[a] = t;
        }
    }
    rep.utility = simulate_actions(inst, actions).human_total;
    return rep;
}

std::vector<int> canonical_schedule(const std::vector<int>& delays, int horizon) {
    check_delays(delays);
    int k = static_cast<int>(delays.size());
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return delays[a] < delays[b]; });

    std::vector<int> last(k, -1), out;
    for (int t = 1; t <= horizon; ++t) {
        int pick = -1;
        for (int i : order) {
            if (last[i] < 0 || t - last[i] >= delays[i]) {
                pick = i;
                break;
            }
        }
        if (pick < 0)
            throw config_error("delays cannot fill round " + std::to_string(t) +
                               " without a violation (sum of 1/D must be at least 1)");
        last[pick] = t;
        out.push_back(pick);
    }
    return out;
}

std::vector<int> load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open schedule file: " + path);
    std::vector<int> actions;
    long long v;
    while (in >> v) {
        if (v < 0) throw config_error("schedule entries must be nonnegative");
        actions.push_back(v == 0 ? kOptOut : static_cast<int>(v - 1));
    }
    if (!in.eof()) throw config_error("schedule file has a non-integer entry: " + path);
    if (actions.empty()) throw config_error("schedule file is empty: " + path);
    return actions;
}

std::string schedule_to_string(const std::vector<int>& actions) {
    std::ostringstream out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (i) out << ' ';
        out << (actions[i] == kOptOut ? 0 : actions[i] + 1);
    }
    out << '\n';
    return out.str();
}

PausingGadget build_pausing_gadget(double alpha, double eps_gamma, double nu,
                                   double beta, int T) {
    if (!(alpha > 0 && alpha < 1)) throw config_error("alpha must lie in (0, 1)");
    if (!(eps_gamma > 0 && eps_gamma < 0.5))
        throw config_error("eps_gamma must lie in (0, 1/2)");
    if (!(nu > 0)) throw config_error("nu must be positive");
    if (!(beta > 1)) throw config_error("beta must exceed 1");

    PausingGadget p;
    p.alpha = alpha;
    p.nu = nu;
    int kappa = 1;
    while (1.0 / (kappa + 1) >= alpha) ++kappa;
    p.kappa = kappa;
    p.nu_prime = -beta * nu / (alpha * (kappa + 1) - 1.0);

    double gamma = 0.5 - eps_gamma;
    // Pulled within the last kappa rounds: some count is at least
    // gamma^kappa. No pull in the last kappa rounds: every count is at most
    // gamma^{kappa+1}/(1-gamma). gamma < 1/2 keeps the two bands apart.
    p.n_high = std::pow(gamma, kappa);
    p.n_low = std::pow(gamma, kappa + 1) / (1.0 - gamma);

    for (int i = 0; i < 2; ++i)
        p.instance.arms.push_back({0.5, 0.5, gamma, ShrinkageFn::sqrt_decay(0.5, 0.25)});
    p.instance.T = T;
    p.instance.link = LinkFn::bradley_terry();
    p.instance.utility_override =
        PauseThresholdOverride{nu, p.nu_prime, p.n_low, p.n_high};
    p.instance.validate();
    return p;
}

std::vector<int> pull_then_pause_actions(int kappa, int T) {
    std::vector<int> out(T, kOptOut);
    for (int t = 0; t < T; t += kappa + 1) out[t] = 0;
    return out;
}

GameInstance build_greedy_trap(double eps) {
    if (!(eps > 0 && eps <= 0.15))
        throw config_error("trap eps must lie in (0, 0.15] to keep the link monotone");
    double e3 = eps / 3.0;

    GameInstance inst;
    inst.arms.push_back(
        {0.9, 0.6, 1.0, ShrinkageFn::table({{0, 0.7}, {1, 0.3}})});
    inst.arms.push_back(
        {0.8, 0.6, 1.0, ShrinkageFn::table({{0, 0.6}, {1, 0.5}, {2, 0.4}, {3, 0.15}})});
    inst.T = 6;
    // Both arms stop paying exactly at max genmean 0.6. The second arm's
    // slow-rising genmean makes the delay-greedy baseline milk it first,
    // spending the budget on eps-discounted rounds before the first arm's
    // single fat pull is gone.
    inst.link = LinkFn::table(
        {0.8, 0.9}, {0.2, 0.3, 0.4, 0.6, 0.65, 0.7},
        {{0.7 - e3, 0.7 - e3, 0.65, 0.6, 0.54, 0.49},
         {0.9, 0.7 - e3, 0.7 - e3, 0.6, 0.55, 0.5}});
    inst.validate();
    return inst;
}

}  // namespace cgame

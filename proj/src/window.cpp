#include "cgame/window.hpp"

#include <cmath>

#include <json.hpp>

#include "cgame/common.hpp"

namespace cgame {

LipschitzBounds lipschitz_bounds(const GameInstance& inst) {
    LipschitzBounds b;
    for (const auto& a : inst.arms) b.l_g = std::max(b.l_g, a.shrink.lipschitz());
    b.l_sigma = inst.link.lipschitz_second();
    GameState fresh(inst.k());
    std::vector<double> g = genmeans_now(inst, fresh);
    double m = g[argmax_genmean(g)];
    double u0 = -1e300;
    for (int i = 0; i < inst.k(); ++i)
        u0 = std::max(u0, inst.link.eval(inst.arms[i].mu, m) - inst.arms[i].c);
    b.u0 = u0;
    return b;
}

int window_size(const GameInstance& inst, const LipschitzBounds& b, double eps) {
    if (!(eps > 0) || !(eps < 1)) throw config_error("eps must lie in (0, 1)");
    if (!(b.u0 > 0))
        throw config_error("window sizing needs a profitable first pull (u0 > 0)");
    double gmax = inst.gamma_max();
    if (gmax >= 1.0)
        throw config_error("window sizing needs every gamma < 1 (pausing must decay state)");
    if (gmax == 0.0) return 1;  // state resets instantly
    double arg = gmax / ((1 - gmax) * (1 - gmax)) * (b.l_g * b.l_sigma / b.u0) / eps;
    int tau = static_cast<int>(std::ceil(std::log(arg) / std::log(1.0 / gmax)));
    return std::max(tau, 1);
}

namespace {

struct WindowSearch {
    const GameInstance& inst;
    int k, tau;
    std::vector<double> state;  // (tau + 1) rows of k discounted counts
    std::vector<int> cur, best;
    double best_value = 0;
    bool have_best = false;

    WindowSearch(const GameInstance& i, int t)
        : inst(i), k(i.k()), tau(t), state((t + 1) * k, 0.0), cur(t), best(t) {}

    void run() { descend(0, 0.0); }

    void descend(int depth, double acc) {
        if (depth == tau) {
            // Strict improvement keeps the first optimum found, and the
            // child order below visits sequences in lexicographic order
            // (arms ascending, then opt-out), so ties resolve to the
            // lexicographically smallest plan.
            if (!have_best || acc > best_value) {
                have_best = true;
                best_value = acc;
                best = cur;
            }
            return;
        }
        const double* n = &state[depth * k];
        double* child = &state[(depth + 1) * k];
        double m = inst.genmean(0, n[0]);
        for (int i = 1; i < k; ++i) m = std::max(m, inst.genmean(i, n[i]));
        for (int a = 0; a < k; ++a) {
            double u = inst.link.eval(inst.arms[a].mu, m) - inst.arms[a].c;
            for (int j = 0; j < k; ++j)
                child[j] = inst.arms[j].gamma * (n[j] + (j == a ? 1.0 : 0.0));
            cur[depth] = a;
            descend(depth + 1, acc + u);
        }
        for (int j = 0; j < k; ++j) child[j] = inst.arms[j].gamma * n[j];
        cur[depth] = kOptOut;
        descend(depth + 1, acc);
    }
};

}  // namespace

WindowPlan solve_window(const GameInstance& inst, int tau, long long enum_guard) {
    if (tau < 1) throw config_error("window length must be at least 1");
    double count = std::pow(static_cast<double>(inst.k() + 1), tau);
    if (count > static_cast<double>(enum_guard))
        throw capacity_error("window search would enumerate (k+1)^tau = " +
                             format_double(count) + " sequences (guard " +
                             std::to_string(enum_guard) + ")");
    WindowSearch search(inst, tau);
    search.run();
    return {tau, search.best, search.best_value};
}

std::string window_plan_to_json(const WindowPlan& plan) {
    nlohmann::json j;
    j["tau"] = plan.tau;
    j["actions"] = plan.actions;
    j["value"] = plan.value;
    return j.dump(2);
}

WindowPlan window_plan_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        WindowPlan p;
        p.tau = j.at("tau").get<int>();
        p.actions = j.at("actions").get<std::vector<int>>();
        p.value = j.at("value").get<double>();
        if (static_cast<int>(p.actions.size()) != p.tau)
            throw config_error("window plan actions must have length tau");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("bad window plan JSON: ") + e.what());
    }
}

std::vector<int> myopic_then_pause_actions(const WindowPlan& plan, int T) {
    std::vector<int> out;
    out.reserve(T);
    while (static_cast<int>(out.size()) < T) {
        for (int j = 0; j < plan.tau && static_cast<int>(out.size()) < T; ++j)
            out.push_back(plan.actions[j]);
        for (int j = 0; j < plan.tau && static_cast<int>(out.size()) < T; ++j)
            out.push_back(kOptOut);
    }
    return out;
}

std::vector<int> pure_myopic_actions(const WindowPlan& plan, int T) {
    std::vector<int> out;
    out.reserve(T);
    while (static_cast<int>(out.size()) < T)
        out.push_back(plan.actions[out.size() % plan.tau]);
    return out;
}

double approx_ratio_bound(double eps, int tau, int T) {
    double cycles = std::floor(static_cast<double>(T) / (2.0 * tau));
    return (1.0 - eps) / 2.0 * cycles / (cycles + 1.0);
}

double pause_residual(const GameInstance& inst, int tau) {
    double g = inst.gamma_max();
    return g / (1.0 - g) * std::pow(g, tau);
}

}  // namespace cgame

#include "cgame/simulate.hpp"

#include <cmath>
#include <ostream>

#include "cgame/common.hpp"

namespace cgame {

std::vector<double> genmeans_now(const GameInstance& inst, const GameState& s) {
    std::vector<double> g(inst.k());
    for (int i = 0; i < inst.k(); ++i) g[i] = inst.genmean(i, s.n[i]);
    return g;
}

int argmax_genmean(const std::vector<double>& g) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(g.size()); ++i)
        if (g[i] > g[best]) best = i;
    return best;
}

double round_utility(const GameInstance& inst, int action, double ai_mean) {
    if (action == kOptOut) return 0.0;
    const ArmSpec& a = inst.arms[action];
    return inst.link.eval(a.mu, ai_mean) - a.c;
}

namespace {

double override_utility(const PauseThresholdOverride& o, const GameState& s) {
    for (double n : s.n)
        if (n >= o.n_high - kTol) return o.nu_prime;
    for (double n : s.n)
        if (n > o.n_low + kTol) return o.nu_prime;  // between the thresholds
    return o.nu;
}

}  // namespace

Trajectory simulate(const GameInstance& inst, HumanPolicy& human, const AiSpec& ai) {
    const int k = inst.k();
    if (ai.mode == AiSpec::Mode::Fixed &&
        static_cast<int>(ai.sequence.size()) != inst.T)
        throw config_error("fixed AI sequence length must equal T");

    human.reset(inst);
    GameState state(k);
    Trajectory traj;
    traj.rows.reserve(inst.T);

    for (int t = 1; t <= inst.T; ++t) {
        std::vector<double> g = genmeans_now(inst, state);
        int my = argmax_genmean(g);

        int ai_arm = my;
        switch (ai.mode) {
            case AiSpec::Mode::Myopic:
            case AiSpec::Mode::DeviatingExpectation:
                break;
            case AiSpec::Mode::DeviatingSampled:
                if (uniform01(ai.seed, t, 1) >= ai.p)
                    ai_arm = static_cast<int>(uniform01(ai.seed, t, 2) * k);
                break;
            case AiSpec::Mode::Fixed:
                ai_arm = ai.sequence[t - 1];
                if (ai_arm < 0 || ai_arm >= k)
                    throw config_error("fixed AI sequence contains a bad arm index");
                break;
        }

        int b = human.act(inst, state, g, t);
        if (b != kOptOut && (b < 0 || b >= k))
            throw config_error("human policy returned a bad arm index");

        double u, ai_prob;
        if (b == kOptOut) {
            u = 0.0;
            ai_prob = 1.0;
        } else if (ai.mode == AiSpec::Mode::DeviatingExpectation) {
            double mu_b = inst.arms[b].mu;
            inst.link.assert_in_domain(mu_b, g[my]);
            double pick_my = inst.link.eval(mu_b, g[my]);
            double pick_avg = 0;
            for (int j = 0; j < k; ++j) pick_avg += inst.link.eval(mu_b, g[j]);
            pick_avg /= k;
            double pick = ai.p * pick_my + (1 - ai.p) * pick_avg;
            u = pick - inst.arms[b].c;
            ai_prob = 1.0 - pick;
        } else {
            inst.link.assert_in_domain(inst.arms[b].mu, g[ai_arm]);
            double pick = inst.link.eval(inst.arms[b].mu, g[ai_arm]);
            u = pick - inst.arms[b].c;
            ai_prob = 1.0 - pick;
        }
        if (b != kOptOut && inst.utility_override)
            u = override_utility(*inst.utility_override, state);

        traj.human_total += u;
        traj.ai_total += ai_prob;
        traj.rows.push_back({t, b, ai_arm, g[my], u, traj.human_total, ai_prob, g});

        state.advance(inst, b);
    }
    return traj;
}

Trajectory simulate_actions(const GameInstance& inst, const std::vector<int>& actions,
                            const AiSpec& ai) {
    if (static_cast<int>(actions.size()) != inst.T)
        throw config_error("action sequence length must equal T");
    FixedHuman h(actions);
    return simulate(inst, h, ai);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "round,human_action,ai_arm,max_genmean,round_utility,cum_utility,ai_prob";
    int k = traj.rows.empty() ? 0 : static_cast<int>(traj.rows.front().genmeans.size());
    for (int i = 0; i < k; ++i) out << ",genmean_" << i;
    out << "\n";
    for (const auto& r : traj.rows) {
        out << r.round << "," << r.human_action << "," << r.ai_arm << ","
            << format_double(r.max_genmean) << "," << format_double(r.round_utility)
            << "," << format_double(r.cum_utility) << "," << format_double(r.ai_prob);
        for (double g : r.genmeans) out << "," << format_double(g);
        out << "\n";
    }
}

double ai_utility_of_sequence(const GameInstance& inst, const std::vector<int>& human,
                              const std::vector<int>& ai_seq) {
    if (human.size() != ai_seq.size())
        throw config_error("human and AI sequences must have equal length");
    GameState state(inst.k());
    double total = 0;
    for (std::size_t t = 0; t < human.size(); ++t) {
        int b = human[t];
        if (b == kOptOut) {
            total += 1.0;
        } else {
            double g = inst.genmean(ai_seq[t], state.n[ai_seq[t]]);
            total += 1.0 - inst.link.eval(inst.arms[b].mu, g);
        }
        state.advance(inst, b);
    }
    return total;
}

bool myopic_is_ai_optimal(const GameInstance& inst, const std::vector<int>& human,
                          long long guard) {
    const int k = inst.k();
    const int T = static_cast<int>(human.size());
    double count = std::pow(static_cast<double>(k), T);
    if (count > static_cast<double>(guard))
        throw capacity_error("AI best-response enumeration would need " +
                             format_double(count) + " sequences (guard " +
                             std::to_string(guard) + ")");

    // The state evolves from human pulls only, so the per-round generative
    // means are the same for every AI sequence; precompute them once.
    GameState state(k);
    std::vector<std::vector<double>> g(T);
    for (int t = 0; t < T; ++t) {
        g[t] = genmeans_now(inst, state);
        state.advance(inst, human[t]);
    }

    auto ai_value = [&](const std::vector<int>& seq) {
        double total = 0;
        for (int t = 0; t < T; ++t)
            total += human[t] == kOptOut
                         ? 1.0
                         : 1.0 - inst.link.eval(inst.arms[human[t]].mu, g[t][seq[t]]);
        return total;
    };

    std::vector<int> myo(T);
    for (int t = 0; t < T; ++t) myo[t] = argmax_genmean(g[t]);
    double myo_value = ai_value(myo);

    std::vector<int> seq(T, 0);
    while (true) {
        if (ai_value(seq) > myo_value + kTol) return false;
        int pos = T - 1;
        while (pos >= 0 && seq[pos] == k - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    return true;
}

}  // namespace cgame

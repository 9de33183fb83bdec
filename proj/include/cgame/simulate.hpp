#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cgame/instance.hpp"

namespace cgame {

// Human action encoding used everywhere in memory and in trajectory CSVs:
// 0-based arm index, or kOptOut. (Schedule *files* for the blocking gadgets
// use the 1-based convention with 0 = opt-out; the loader converts.)
constexpr int kOptOut = -1;

struct GameState {
    std::vector<double> n;  // discounted pull count per arm

    explicit GameState(int k) : n(k, 0.0) {}
    // n_i' = gamma_i * (n_i + [i pulled]); opt-out decays every arm.
    void advance(const GameInstance& inst, int action) {
        for (int i = 0; i < inst.k(); ++i)
            n[i] = inst.arms[i].gamma * (n[i] + (action == i ? 1.0 : 0.0));
    }
};

// Generative means the round-t players see (state as of the end of t-1).
std::vector<double> genmeans_now(const GameInstance& inst, const GameState& s);
int argmax_genmean(const std::vector<double>& g);  // ties: lowest index

// Utility of a human action against AI content of generative mean ai_mean.
// Opt-out pays 0. Ignores any utility override (simulate applies that).
double round_utility(const GameInstance& inst, int action, double ai_mean);

struct HumanPolicy {
    virtual ~HumanPolicy() = default;
    virtual void reset(const GameInstance& inst) {}
    // genmeans/state describe the start of `round` (1-based).
    virtual int act(const GameInstance& inst, const GameState& s,
                    const std::vector<double>& genmeans, int round) = 0;
};

struct FixedHuman : HumanPolicy {
    std::vector<int> actions;
    explicit FixedHuman(std::vector<int> a) : actions(std::move(a)) {}
    int act(const GameInstance&, const GameState&, const std::vector<double>&,
            int round) override {
        return actions.at(round - 1);
    }
};

struct AiSpec {
    enum class Mode {
        Myopic,                // argmax generative mean, ties to lowest index
        DeviatingSampled,      // myopic w.p. p, else uniform arm; counter RNG
        DeviatingExpectation,  // deterministic p-average of the two behaviors
        Fixed,                 // scripted arm sequence of length T
    };
    Mode mode = Mode::Myopic;
    double p = 1.0;
    std::uint64_t seed = 0;
    std::vector<int> sequence;

    static AiSpec myopic() { return {}; }
    static AiSpec deviating_sampled(double p, std::uint64_t seed) {
        return {Mode::DeviatingSampled, p, seed, {}};
    }
    static AiSpec deviating_expectation(double p) {
        return {Mode::DeviatingExpectation, p, 0, {}};
    }
    static AiSpec fixed(std::vector<int> seq) {
        return {Mode::Fixed, 1.0, 0, std::move(seq)};
    }
};

struct TrajectoryRow {
    int round;         // 1-based
    int human_action;  // arm index or kOptOut
    int ai_arm;        // realized arm (myopic arm in expectation mode)
    double max_genmean;
    double round_utility;
    double cum_utility;
    double ai_prob;  // chance the AI content is picked this round
    std::vector<double> genmeans;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    double human_total = 0;
    double ai_total = 0;  // sum of ai_prob
};

Trajectory simulate(const GameInstance& inst, HumanPolicy& human,
                    const AiSpec& ai = AiSpec::myopic());

// Convenience for scripted humans (baseline comparisons, decoded strategies).
Trajectory simulate_actions(const GameInstance& inst, const std::vector<int>& actions,
                            const AiSpec& ai = AiSpec::myopic());

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// AI-side total utility (sum of per-round pick probabilities) of a scripted
// AI sequence against a fixed human action sequence.
double ai_utility_of_sequence(const GameInstance& inst, const std::vector<int>& human,
                              const std::vector<int>& ai_seq);

// Exhaustively checks that the myopic AI maximizes the AI's total utility
// against the given human action sequence, over all k^T scripted sequences.
// Throws capacity_error if k^T exceeds `guard`.
bool myopic_is_ai_optimal(const GameInstance& inst, const std::vector<int>& human,
                          long long guard = 1000000);

}  // namespace cgame

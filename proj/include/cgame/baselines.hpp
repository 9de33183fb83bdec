#pragma once

#include <cstdint>

#include "cgame/simulate.hpp"

namespace cgame {

// Pull the utility-argmax arm; opt out when every arm is strictly negative.
// A utility within tolerance of zero counts as zero and is still pulled.
struct GreedyHuman : HumanPolicy {
    int act(const GameInstance&, const GameState&, const std::vector<double>&,
            int) override;
};

// Round-robin cursor over the arms, skipping arms whose utility is negative
// this round; opts out (cursor unchanged) when no arm qualifies.
struct CycleHuman : HumanPolicy {
    int cursor = 0;
    void reset(const GameInstance&) override { cursor = 0; }
    int act(const GameInstance&, const GameState&, const std::vector<double>&,
            int) override;
};

// Pulls arm i with probability proportional to mu_i among the arms with
// nonnegative utility this round; opts out when none qualify. One uniform
// draw per round from the counter RNG, so runs replay exactly by seed.
struct BtPullHuman : HumanPolicy {
    std::uint64_t seed = 0;
    explicit BtPullHuman(std::uint64_t s) : seed(s) {}
    int act(const GameInstance&, const GameState&, const std::vector<double>&,
            int round) override;
};

// Among arms with strictly positive utility, pull the one whose pull would
// raise the max generative mean the least; opt out when none qualify.
struct GreedyDelayHuman : HumanPolicy {
    int act(const GameInstance&, const GameState&, const std::vector<double>&,
            int) override;
};

}  // namespace cgame

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgame/link.hpp"
#include "cgame/shrinkage.hpp"

namespace cgame {

struct ArmSpec {
    double mu;     // true mean quality, in [0, 1]
    double c;      // per-pull cost, in [0, 1]
    double gamma;  // pull-count discount, in [0, 1]; 1 = plain counting
    ShrinkageFn shrink;
};

// Replaces the sigma-based pull utility with a two-level schedule driven by
// the discounted pull counts: nu while every count is at most n_low, nu_prime
// as soon as any count reaches n_high. Opt-out rounds still pay 0.
struct PauseThresholdOverride {
    double nu;
    double nu_prime;
    double n_low;
    double n_high;
};

struct GameInstance {
    std::vector<ArmSpec> arms;
    int T = 1;
    LinkFn link = LinkFn::bradley_terry();
    std::optional<PauseThresholdOverride> utility_override;

    int k() const { return static_cast<int>(arms.size()); }
    // Generative mean of arm i after n discounted pulls.
    double genmean(int i, double n) const { return arms[i].mu - arms[i].shrink.eval(n); }
    bool all_gamma_one() const;
    double gamma_max() const;
    void validate() const;
};

GameInstance instance_from_json(const std::string& text);
GameInstance load_instance(const std::string& path);
std::string instance_to_json(const GameInstance& inst);

}  // namespace cgame

#include "cgame/baselines.hpp"

#include <algorithm>

#include "cgame/common.hpp"

namespace cgame {

namespace {

double pull_utility(const GameInstance& inst, int i, double max_gen) {
    return inst.link.eval(inst.arms[i].mu, max_gen) - inst.arms[i].c;
}

}  // namespace

int GreedyHuman::act(const GameInstance& inst, const GameState&,
                     const std::vector<double>& g, int) {
    double m = g[argmax_genmean(g)];
    int best = kOptOut;
    double best_u = 0;
    for (int i = 0; i < inst.k(); ++i) {
        double u = pull_utility(inst, i, m);
        if (best == kOptOut ? u >= -kTol : u > best_u) {
            best = i;
            best_u = u;
        }
    }
    return best;
}

int CycleHuman::act(const GameInstance& inst, const GameState&,
                    const std::vector<double>& g, int) {
    double m = g[argmax_genmean(g)];
    for (int off = 0; off < inst.k(); ++off) {
        int i = (cursor + off) % inst.k();
        if (pull_utility(inst, i, m) >= -kTol) {
            cursor = (i + 1) % inst.k();
            return i;
        }
    }
    return kOptOut;
}

int BtPullHuman::act(const GameInstance& inst, const GameState&,
                     const std::vector<double>& g, int round) {
    double m = g[argmax_genmean(g)];
    std::vector<double> w(inst.k(), 0.0);
    double total = 0;
    for (int i = 0; i < inst.k(); ++i) {
        if (pull_utility(inst, i, m) >= -kTol) {
            w[i] = inst.arms[i].mu;
            total += w[i];
        }
    }
    if (total <= 0) return kOptOut;
    double u = uniform01(seed, round) * total;
    double acc = 0;
    for (int i = 0; i < inst.k(); ++i) {
        acc += w[i];
        if (u < acc && w[i] > 0) return i;
    }
    for (int i = inst.k() - 1; i >= 0; --i)  // u == total up to rounding
        if (w[i] > 0) return i;
    return kOptOut;
}

int GreedyDelayHuman::act(const GameInstance& inst, const GameState& s,
                          const std::vector<double>& g, int) {
    double m = g[argmax_genmean(g)];
    int best = kOptOut;
    double best_rise = 0;
    for (int i = 0; i < inst.k(); ++i) {
        if (pull_utility(inst, i, m) <= kTol) continue;  // strict membership
        double next = inst.genmean(i, inst.arms[i].gamma * (s.n[i] + 1.0));
        double rise = std::max(m, next) - m;
        if (best == kOptOut || rise < best_rise - kTol) {
            best = i;
            best_rise = rise;
        }
    }
    return best;
}

}  // namespace cgame

#include "cgame/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <json.hpp>

#include "cgame/common.hpp"

namespace cgame {

namespace {

void require_gamma_one(const GameInstance& inst) {
    if (!inst.all_gamma_one())
        throw config_error("this solver handles undiscounted instances only (every gamma must be 1)");
}

}  // namespace

double initial_max_genmean(const GameInstance& inst) {
    double m = inst.genmean(0, 0);
    for (int i = 1; i < inst.k(); ++i) m = std::max(m, inst.genmean(i, 0));
    return m;
}

ExitProfile exit_profile(const GameInstance& inst) {
    require_gamma_one(inst);
    double lo0 = inst.genmean(0, 0), hi0 = inst.arms[0].mu;
    for (int i = 1; i < inst.k(); ++i) {
        lo0 = std::min(lo0, inst.genmean(i, 0));
        hi0 = std::max(hi0, inst.arms[i].mu);
    }

    ExitProfile prof;
    for (int i = 0; i < inst.k(); ++i) {
        const ArmSpec& a = inst.arms[i];
        auto util = [&](double x) { return inst.link.eval(a.mu, x) - a.c; };
        double exit;
        if (util(lo0) <= kTol) {
            exit = lo0;  // unprofitable from the start; the arm is inert
        } else if (util(hi0) > kTol) {
            throw config_error("arm " + std::to_string(i) +
                               " never exits: its pull utility stays positive at every "
                               "reachable mean (is its cost above 1/2?)");
        } else {
            double lo = lo0, hi = hi0;
            for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
                double mid = 0.5 * (lo + hi);
                (util(mid) > 0 ? lo : hi) = mid;
            }
            exit = 0.5 * (lo + hi);
        }
        prof.exit_mean.push_back(exit);

        int pull = 0;
        if (inst.genmean(i, 0) < exit - kTol) {
            long long hi_n = 1;
            while (inst.genmean(i, static_cast<double>(hi_n)) < exit - kTol) {
                hi_n *= 2;
                if (hi_n > (1LL << 30))
                    throw config_error("arm " + std::to_string(i) +
                                       " cannot reach its exit mean (shrinkage plateaus below it)");
            }
            long long lo_n = hi_n / 2;  // genmean(lo_n) < exit - kTol <= genmean(hi_n)
            while (lo_n + 1 < hi_n) {
                long long mid = (lo_n + hi_n) / 2;
                (inst.genmean(i, static_cast<double>(mid)) < exit - kTol ? lo_n : hi_n) = mid;
            }
            pull = static_cast<int>(hi_n);
        }
        prof.exit_pull.push_back(pull);
    }
    return prof;
}

int p_inverse(const GameInstance& inst, const ExitProfile& prof, int arm,
              double target, int from) {
    if (inst.genmean(arm, from) >= prof.exit_mean[arm] - kTol) return 0;
    if (target > prof.exit_mean[arm] + kTol) return 0;
    if (inst.genmean(arm, from) > target + kTol) return 0;
    int lo = 0, hi = prof.exit_pull[arm] - from;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (inst.genmean(arm, static_cast<double>(from + mid)) <= target + kTol)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

long long min_long_horizon(const GameInstance& inst, const ExitProfile& prof) {
    double m0 = initial_max_genmean(inst);
    long long total = 0;
    for (int i = 0; i < inst.k(); ++i)
        if (prof.exit_mean[i] > m0 + kTol) total += prof.exit_pull[i];
    return total;
}

ReducedDag build_reduced_dag(const GameInstance& inst, const ExitProfile& prof,
                             bool sync_at_source) {
    require_gamma_one(inst);
    const int k = inst.k();
    ReducedDag dag;

    double m0 = initial_max_genmean(inst);
    dag.nodes.push_back({-1, 0, m0});
    std::vector<int> node_at_offset(k, 0);  // index of (arm i, pulls 1)
    for (int i = 0; i < k; ++i) {
        node_at_offset[i] = static_cast<int>(dag.nodes.size());
        for (int r = 1; r <= prof.exit_pull[i]; ++r)
            dag.nodes.push_back({i, r, inst.genmean(i, static_cast<double>(r))});
    }
    auto node_index = [&](int arm, int pulls) { return node_at_offset[arm] + pulls - 1; };

    dag.first_sync.assign(k, 0);
    for (int i = 0; i < k; ++i) {
        dag.first_sync[i] = p_inverse(inst, prof, i, m0, 0);
        dag.base_value += dag.first_sync[i] *
                          (inst.link.eval(inst.arms[i].mu, m0) - inst.arms[i].c);
    }

    // Canonical absolute pull counts at each node: the node's own arm holds
    // its r pulls; every other arm is synced as far up toward the node's max
    // as stays profitable.
    dag.counts.resize(dag.nodes.size());
    dag.counts[0] = dag.first_sync;
    for (std::size_t v = 1; v < dag.nodes.size(); ++v) {
        const DagNode& nd = dag.nodes[v];
        std::vector<int> cnt(k);
        for (int j = 0; j < k; ++j)
            cnt[j] = (j == nd.arm) ? nd.pulls : p_inverse(inst, prof, j, nd.maxgen, 0);
        dag.counts[v] = std::move(cnt);
    }

    for (std::size_t v = 0; v < dag.nodes.size(); ++v) {
        double m = dag.nodes[v].maxgen;
        for (int j = 0; j < k; ++j) {
            if (!(prof.exit_mean[j] > m + kTol)) continue;  // strict membership in P
            int rj = dag.counts[v][j] + 1;
            if (rj > prof.exit_pull[j]) continue;  // already at its exit boundary
            double m2 = inst.genmean(j, static_cast<double>(rj));
            double w = inst.link.eval(inst.arms[j].mu, m) - inst.arms[j].c;
            for (int l = 0; l < k; ++l) {
                if (l == j) continue;
                int delta = p_inverse(inst, prof, l, m2, dag.counts[v][l]);
                double at = sync_at_source ? m : m2;
                w += delta * (inst.link.eval(inst.arms[l].mu, at) - inst.arms[l].c);
            }
            dag.edges.push_back(
                {static_cast<int>(v), node_index(j, rj), w});
        }
    }
    return dag;
}

namespace {

struct LongestPath {
    std::vector<double> value;
    std::vector<int> length;
    std::vector<int> pred;       // node predecessor, -1 for none
    std::vector<int> pred_edge;  // edge used to reach the node
    int best = 0;
};

LongestPath longest_path(const ReducedDag& dag) {
    const int n = static_cast<int>(dag.nodes.size());
    std::vector<std::vector<int>> out(n);
    std::vector<int> indeg(n, 0);
    for (int e = 0; e < static_cast<int>(dag.edges.size()); ++e) {
        out[dag.edges[e].from].push_back(e);
        ++indeg[dag.edges[e].to];
    }

    std::deque<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);

    LongestPath lp;
    lp.value.assign(n, -std::numeric_limits<double>::infinity());
    lp.length.assign(n, 0);
    lp.pred.assign(n, -1);
    lp.pred_edge.assign(n, -1);
    lp.value[0] = 0.0;

    int seen = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        ++seen;
        for (int e : out[u]) {
            const DagEdge& ed = dag.edges[e];
            if (lp.value[u] != -std::numeric_limits<double>::infinity()) {
                double cand = lp.value[u] + ed.weight;
                int cand_len = lp.length[u] + 1;
                bool take = cand > lp.value[ed.to];
                if (!take && cand == lp.value[ed.to]) {
                    if (cand_len < lp.length[ed.to])
                        take = true;
                    else if (cand_len == lp.length[ed.to] && u < lp.pred[ed.to])
                        take = true;
                }
                if (take) {
                    lp.value[ed.to] = cand;
                    lp.length[ed.to] = cand_len;
                    lp.pred[ed.to] = u;
                    lp.pred_edge[ed.to] = e;
                }
            }
            if (--indeg[ed.to] == 0) queue.push_back(ed.to);
        }
    }
    if (seen != n)
        throw std::logic_error("internal error: reduced strategy graph contains a cycle");

    for (int v = 1; v < n; ++v) {
        if (lp.value[v] == -std::numeric_limits<double>::infinity()) continue;
        bool take = lp.value[v] > lp.value[lp.best];
        if (!take && lp.value[v] == lp.value[lp.best])
            take = lp.length[v] < lp.length[lp.best];
        if (take) lp.best = v;
    }
    return lp;
}

}  // namespace

SyncStrategy solve_optimal(const GameInstance& inst, bool force, bool sync_at_source) {
    require_gamma_one(inst);
    const int k = inst.k();
    ExitProfile prof = exit_profile(inst);
    long long need = min_long_horizon(inst, prof);
    if (inst.T < need && !force)
        throw config_error(
            "horizon T=" + std::to_string(inst.T) + " is " +
            std::to_string(need - inst.T) + " rounds short of the long-horizon bound " +
            std::to_string(need) + "; enable force to truncate at T");

    ReducedDag dag = build_reduced_dag(inst, prof, sync_at_source);
    LongestPath lp = longest_path(dag);

    std::vector<int> path;  // node sequence, excluding the start node
    for (int v = lp.best; v != 0; v = lp.pred[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());

    SyncStrategy s;
    SyncEpoch first;
    first.gain_arm = -1;
    first.sync_pulls = dag.first_sync;
    for (int i = 0; i < k; ++i)
        for (int r = 0; r < dag.first_sync[i]; ++r) s.actions.push_back(i);
    s.epochs.push_back(std::move(first));

    std::vector<int> counts = dag.first_sync;
    for (int v : path) {
        const DagNode& nd = dag.nodes[v];
        SyncEpoch ep;
        ep.gain_arm = nd.arm;
        ep.sync_pulls.assign(k, 0);
        s.actions.push_back(nd.arm);
        counts[nd.arm] = nd.pulls;
        for (int l = 0; l < k; ++l) {
            if (l == nd.arm) continue;
            int delta = p_inverse(inst, prof, l, nd.maxgen, counts[l]);
            ep.sync_pulls[l] = delta;
            for (int r = 0; r < delta; ++r) s.actions.push_back(l);
            counts[l] += delta;
        }
        s.epochs.push_back(std::move(ep));
    }

    if (static_cast<int>(s.actions.size()) > inst.T) {
        s.actions.resize(inst.T);
        s.truncated = true;
        s.note = "heuristic (long-horizon guarantee void)";
    } else {
        s.actions.resize(inst.T, kOptOut);
    }
    // the graph value equals this by construction in the default weighting;
    // re-simulating keeps the contract exact in the comparison mode too
    s.value = simulate_actions(inst, s.actions).human_total;
    return s;
}

std::string sync_strategy_to_json(const SyncStrategy& s) {
    nlohmann::json j;
    j["epochs"] = nlohmann::json::array();
    for (const auto& ep : s.epochs) {
        nlohmann::json je;
        je["gain"] = ep.gain_arm < 0 ? nlohmann::json(nullptr) : nlohmann::json(ep.gain_arm);
        nlohmann::json sync = nlohmann::json::object();
        for (std::size_t i = 0; i < ep.sync_pulls.size(); ++i)
            if (ep.sync_pulls[i] > 0) sync[std::to_string(i)] = ep.sync_pulls[i];
        je["sync"] = sync;
        j["epochs"].push_back(je);
    }
    j["actions"] = s.actions;
    j["value"] = s.value;
    j["truncated"] = s.truncated;
    if (!s.note.empty()) j["note"] = s.note;
    return j.dump(2);
}

BruteForceResult brute_force_opt(const GameInstance& inst, long long cell_guard,
                                 int t_guard) {
    require_gamma_one(inst);
    const int k = inst.k();
    if (inst.T > t_guard)
        throw capacity_error("brute force optimum supports T <= " +
                             std::to_string(t_guard) + ", got T=" + std::to_string(inst.T));
    ExitProfile prof = exit_profile(inst);

    std::vector<long long> radix(k), stride(k);
    long long cells = 1;
    for (int i = 0; i < k; ++i) {
        radix[i] = prof.exit_pull[i] + 1;
        stride[i] = cells;
        cells *= radix[i];
        if (cells > cell_guard)
            throw capacity_error("brute force optimum needs more than " +
                                 std::to_string(cell_guard) + " pull-count cells");
    }

    // value[idx] = best achievable remaining utility from the pull-count
    // vector encoded by idx. Pulling past an arm's exit pull count never
    // helps (its utility is nonpositive and higher counts only weaken every
    // later pull), so counts are capped at the exit pulls.
    std::vector<double> value(cells, 0.0);
    std::vector<int> digits(k);
    for (long long idx = cells - 1; idx >= 0; --idx) {
        long long sum = 0;
        for (int i = 0; i < k; ++i) {
            digits[i] = static_cast<int>((idx / stride[i]) % radix[i]);
            sum += digits[i];
        }
        if (sum >= inst.T) continue;  // pull budget spent; only opt-outs remain
        double m = inst.genmean(0, digits[0]);
        for (int i = 1; i < k; ++i) m = std::max(m, inst.genmean(i, digits[i]));
        double best = 0.0;
        for (int i = 0; i < k; ++i) {
            if (digits[i] + 1 >= radix[i]) continue;
            double u = inst.link.eval(inst.arms[i].mu, m) - inst.arms[i].c +
                       value[idx + stride[i]];
            if (u > best) best = u;
        }
        value[idx] = best;
    }

    BruteForceResult res;
    res.value = value[0];
    long long idx = 0;
    while (static_cast<int>(res.actions.size()) < inst.T) {
        if (value[idx] <= 0.0) break;
        long long sum = 0;
        for (int i = 0; i < k; ++i) {
            digits[i] = static_cast<int>((idx / stride[i]) % radix[i]);
            sum += digits[i];
        }
        if (sum >= inst.T) break;
        double m = inst.genmean(0, digits[0]);
        for (int i = 1; i < k; ++i) m = std::max(m, inst.genmean(i, digits[i]));
        int pick = -1;
        for (int i = 0; i < k; ++i) {
            if (digits[i] + 1 >= radix[i]) continue;
            double u = inst.link.eval(inst.arms[i].mu, m) - inst.arms[i].c +
                       value[idx + stride[i]];
            if (u == value[idx]) {
                pick = i;
                break;
            }
        }
        if (pick < 0)
            throw std::logic_error("internal error: brute force reconstruction lost its value");
        res.actions.push_back(pick);
        idx += stride[pick];
    }
    res.actions.resize(inst.T, kOptOut);
    return res;
}

}  // namespace cgame

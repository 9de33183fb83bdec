// Independent computations of the reference values that the unit tests pin
// down as literals. Everything here is written from the closed forms or by
// plain brute force, without calling the library, so a later regression in
// the library cannot silently shift the expectations. Run it once and copy
// the printed numbers into the tests.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

namespace {

void print(const char* label, double v) { std::printf("%-34s %.17g\n", label, v); }

double bt(double x, double y) { return 1.0 / (1.0 + std::exp(y - x)); }

// --- small discounted instance used for the simulation golden -------------
// one arm: mu=0.8 c=0.55 gamma=0.5 sqrt(q=0.2,h=0.4); actions pull,pull
void simulation_example() {
    double mu = 0.8, c = 0.55, q = 0.2, h = 0.4, gamma = 0.5;
    double n = 0, cum = 0;
    for (int t = 0; t < 2; ++t) {
        double g = mu - q / std::sqrt(n + (q / h) * (q / h));
        double u = bt(mu, g) - c;
        cum += u;
        char label[64];
        std::snprintf(label, sizeof label, "sim2.round%d.genmean", t + 1);
        print(label, g);
        std::snprintf(label, sizeof label, "sim2.round%d.utility", t + 1);
        print(label, u);
        n = gamma * (n + 1);
    }
    print("sim2.total", cum);
}

// --- window search oracle: depth-first over all action strings ------------
struct WindowOracle {
    // two arms, tau 4
    std::vector<double> mu{0.7, 0.85}, c{0.53, 0.56}, gamma{0.5, 0.48};
    std::vector<double> q{0.1, 0.15}, h{0.4, 0.45};
    int tau = 4;
    double best = -1e100;
    std::vector<int> best_actions, actions;

    double genmean(int i, double n) const {
        return mu[i] - q[i] / std::sqrt(n + (q[i] / h[i]) * (q[i] / h[i]));
    }
    void rec(std::vector<double> n, double value) {
        if (static_cast<int>(actions.size()) == tau) {
            if (value > best) {
                best = value;
                best_actions = actions;
            }
            return;
        }
        double m = std::max(genmean(0, n[0]), genmean(1, n[1]));
        for (int a = 0; a < 2; ++a) {
            auto next = n;
            next[a] = gamma[a] * (n[a] + 1);
            next[1 - a] = gamma[1 - a] * n[1 - a];
            actions.push_back(a);
            rec(next, value + bt(mu[a], m) - c[a]);
            actions.pop_back();
        }
        auto next = n;
        next[0] *= gamma[0];
        next[1] *= gamma[1];
        actions.push_back(-1);
        rec(next, value);
        actions.pop_back();
    }
};

void window_example() {
    WindowOracle o;
    o.rec({0, 0}, 0);
    print("window4.value", o.best);
    std::printf("%-34s ", "window4.actions");
    for (int a : o.best_actions) std::printf("%d ", a);
    std::printf("\n");
}

// --- undiscounted optimum oracle: exhaustive over (k+1)^T -----------------
struct HorizonOracle {
    // two arms, gamma = 1, T = 8
    std::vector<double> mu{0.86, 0.95}, c{0.56, 0.54};
    std::vector<double> q{1.4, 0.3}, h{0.75, 0.76};
    int T = 8;
    double best = -1e100;

    double genmean(int i, double n) const {
        return mu[i] - q[i] / std::sqrt(n + (q[i] / h[i]) * (q[i] / h[i]));
    }
    void rec(int t, std::vector<double> n, double value) {
        if (value > best) best = value;
        if (t == T) return;
        double m = std::max(genmean(0, n[0]), genmean(1, n[1]));
        for (int a = 0; a < 2; ++a) {
            auto next = n;
            next[a] += 1;
            rec(t + 1, next, value + bt(mu[a], m) - c[a]);
        }
        // opting out never raises future genmeans when gamma = 1, so it
        // only matters as "stop"; value is tracked at every prefix above.
    }
};

void horizon_example() {
    HorizonOracle o;
    o.rec(0, {0, 0}, 0);
    print("horizon8.value", o.best);
}

}  // namespace

int main() {
    // generative mean after one discounted pull: mu=0.73 sqrt(q=0.1,h=0.3), N=1
    print("genmean.example", 0.73 - 0.1 / std::sqrt(1 + (0.1 / 0.3) * (0.1 / 0.3)));

    // Bradley-Terry exit means mu + ln((1-c)/c) and pull counts
    // ceil((q/d)^2 - (q/h)^2) with d = ln(c/(1-c)), for the ti-1 arms.
    std::vector<double> mu{0.86, 0.95, 0.87, 0.95}, c{0.56, 0.52, 0.55, 0.53};
    std::vector<double> q{1.4, 1.3, 1.5, 1.8}, h{0.75, 0.8, 0.6, 0.78};
    for (int i = 0; i < 4; ++i) {
        char label[64];
        std::snprintf(label, sizeof label, "ti1.exit_mean.%d", i);
        print(label, mu[i] + std::log((1 - c[i]) / c[i]));
        double d = std::log(c[i] / (1 - c[i]));
        std::snprintf(label, sizeof label, "ti1.exit_pull.%d", i);
        print(label, std::ceil((q[i] / d) * (q[i] / d) - (q[i] / h[i]) * (q[i] / h[i])));
    }

    // exit mean under the piecewise link top row (1 + hi - y)/2 with hi=0.9:
    // sigma = c at y = 1 + hi - 2c.
    print("gadget.exit_mean", 1 + 0.9 - 2 * 0.6);

    // linear-shrinkage exit pull: mu=1, g(n)=0.6-0.3n, exit mean 0.7.
    print("linear.exit_pull", std::ceil((1 - 0.7 - 0.6) / -0.3));

    // window length: ceil(log_{1/gmax}(gmax/(1-gmax)^2 * LgLs/(u0*eps)))
    {
        double gmax = 0.5, ratio = 2, eps = 0.5;
        double arg = gmax / ((1 - gmax) * (1 - gmax)) * ratio / eps;
        print("window_size.example", std::ceil(std::log(arg) / std::log(1 / gmax)));
    }

    // replay-pause competitive ratio (1-eps)/2 * m/(m+1), m = floor(T/2tau)
    {
        double eps = 0.1;
        double m = std::floor(100.0 / 10.0);
        print("approx_ratio.example", (1 - eps) / 2 * m / (m + 1));
    }

    // same-shrinkage calibration for D=2: x + x^2 = 0.35 has the positive
    // root (-1 + sqrt(2.4))/2.
    print("gamma_hat.D2", (-1 + std::sqrt(2.4)) / 2);

    // same-gamma knee for delays (2,4,4): 0.2 + 0.35 * max_i lambda_i * 1/2
    // / (1 - (1/2)^{D_i}) with lambda_i = (1/2)/((1/2) + (1/2)^{D_i}).
    {
        double best = 0;
        for (int D : {2, 4, 4}) {
            double lam = 0.5 / (0.5 + std::pow(0.5, D));
            best = std::max(best, lam * 0.5 / (1 - std::pow(0.5, D)));
        }
        double knee = 0.2 + 0.35 * best;
        print("same_gamma.knee", knee);
        print("same_gamma.theta_high", (1 + 0.9 - knee) / 2);
        print("same_gamma.theta_low", (1 + 0.9 - 0.375) / 2);
    }

    // pausing gadget constants for alpha=0.1, beta=2, nu=0.1, gamma=0.45.
    {
        int kappa = 0;
        while (!(1.0 / (kappa + 1) < 0.1)) ++kappa;
        print("pausing.kappa", kappa);
        print("pausing.nu_prime", -2.0 * 0.1 / (0.1 * (kappa + 1) - 1));
        print("pausing.n_high", std::pow(0.45, kappa));
        print("pausing.n_low", std::pow(0.45, kappa + 1) / 0.55);
    }

    // ts experiment window constants (gamma_max, max shrinkage slope,
    // best first-round margin) feeding the window-length formula.
    {
        struct Ts {
            const char* name;
            std::vector<double> mu, gamma, c, q, h;
        };
        std::vector<Ts> ts = {
            {"ts1", {0.7, 0.85, 0.95}, {0.5, 0.48, 0.44}, {0.53, 0.56, 0.6},
             {0.1, 0.15, 0.5}, {0.4, 0.45, 0.6}},
            {"ts2", {0.75, 0.8, 0.85}, {0.5, 0.55, 0.6}, {0.55, 0.55, 0.55},
             {0.15, 0.125, 0.1}, {0.4, 0.4, 0.4}},
            {"ts3", {0.73, 0.85, 0.9, 0.95}, {0.5, 0.48, 0.47, 0.45},
             {0.53, 0.56, 0.59, 0.58}, {0.1, 0.2, 0.5, 0.2}, {0.3, 0.45, 0.6, 0.6}},
            {"ts4", {0.64, 0.95, 0.8, 0.88}, {0.5, 0.47, 0.5, 0.4},
             {0.53, 0.57, 0.54, 0.56}, {0.16, 0.15, 0.125, 0.1}, {0.4, 0.5, 0.4, 0.4}},
        };
        for (const auto& e : ts) {
            double gmax = 0, lg = 0, gm1 = -1e100, u0 = -1e100;
            for (std::size_t i = 0; i < e.mu.size(); ++i) {
                gmax = std::max(gmax, e.gamma[i]);
                lg = std::max(lg, e.h[i] * e.h[i] * e.h[i] / (2 * e.q[i] * e.q[i]));
                gm1 = std::max(gm1, e.mu[i] - e.h[i]);
            }
            for (std::size_t i = 0; i < e.mu.size(); ++i) {
                u0 = std::max(u0, bt(e.mu[i], gm1) - e.c[i]);
            }
            double arg = gmax / ((1 - gmax) * (1 - gmax)) * (lg * 0.25) / (u0 * 0.1);
            char label[64];
            std::snprintf(label, sizeof label, "%s.u0", e.name);
            print(label, u0);
            std::snprintf(label, sizeof label, "%s.tau", e.name);
            print(label, std::ceil(std::log(arg) / std::log(1 / gmax)));
        }
    }

    simulation_example();
    window_example();
    horizon_example();
    return 0;
}

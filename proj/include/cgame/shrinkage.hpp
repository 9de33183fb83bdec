#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace cgame {

// Shrinkage curve g(n): how far an arm's generative mean sits below its true
// mean after n (possibly fractional, discounted) pulls. Non-increasing in n.
class ShrinkageFn {
  public:
    enum class Kind { SqrtDecay, Linear, Scaled, Table };

    // g(n) = q / sqrt(n + (q/h)^2); g(0) = h, steepest slope h^3/(2 q^2).
    static ShrinkageFn sqrt_decay(double q, double h);
    // g(n) = intercept - slope * n (no clamping; callers stay in range).
    static ShrinkageFn linear(double intercept, double slope);
    // g(n) = inner(lambda * n): argument-scaled wrapper.
    static ShrinkageFn scaled(double lambda, ShrinkageFn inner);
    // Piecewise-linear through (n, g) points; constant after the last point.
    // First n must be 0, n strictly increasing, g non-increasing.
    static ShrinkageFn table(std::vector<std::pair<double, double>> points);

    double eval(double n) const;
    // Upper bound on |g'| over n >= 0 (exact for all four kinds).
    double lipschitz() const;

    Kind kind() const { return kind_; }
    double q() const { return a_; }
    double h() const { return b_; }
    double intercept() const { return a_; }
    double slope() const { return b_; }
    double lambda() const { return a_; }
    const ShrinkageFn& inner() const { return *inner_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

  private:
    ShrinkageFn() = default;
    Kind kind_ = Kind::SqrtDecay;
    double a_ = 0, b_ = 0;  // (q,h) | (intercept,slope) | (lambda,-)
    std::shared_ptr<const ShrinkageFn> inner_;
    std::vector<std::pair<double, double>> points_;
};

}  // namespace cgame

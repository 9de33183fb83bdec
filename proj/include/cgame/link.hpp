#pragma once

#include <vector>

namespace cgame {

// Choice link sigma(x, y): probability that content of quality x is picked
// over content of quality y. Monotone up in x, down in y, sigma(x,x) = 1/2.
class LinkFn {
  public:
    enum class Kind { BradleyTerry, PiecewiseGadget, Table };

    // sigma(x, y) = 1 / (1 + exp(y - x)).
    static LinkFn bradley_terry();

    // Piecewise-linear link used by the blocking constructions, defined for
    // x in [lo, hi] (the two content-quality levels) and y in [0, hi]. The
    // two rows that those instances actually query are
    //   sigma(lo, y) = (1 + lo - y) / 2
    //   sigma(hi, y) = (1 + hi - max(y, knee)) / 2   (flat below the knee)
    // Interior x interpolates between the diagonal value 1/2 and the
    // boundary rows so the function is total and continuous. Arguments are
    // clamped to the domain; simulation separately asserts that queried
    // points never actually leave it.
    static LinkFn piecewise_gadget(double lo, double hi, double knee);

    // Bilinear interpolation over a grid, clamped at the edges. Values must
    // be in [0, 1], non-decreasing along x and non-increasing along y.
    static LinkFn table(std::vector<double> xs, std::vector<double> ys,
                        std::vector<std::vector<double>> values);

    double eval(double x, double y) const;

    // Throws if (x, y) lies outside the link's declared domain by more than
    // the global tolerance. No-op for Bradley-Terry (defined everywhere) and
    // for table links (edge clamping is part of their definition).
    void assert_in_domain(double x, double y) const;

    // Upper bound on |d sigma / d y|. Exact 1/4 for Bradley-Terry; for the
    // other kinds a sampled finite-difference estimate over the domain, which
    // is exact here too because both are piecewise (bi)linear.
    double lipschitz_second() const;

    Kind kind() const { return kind_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double knee() const { return knee_; }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    const std::vector<std::vector<double>>& values() const { return values_; }

  private:
    LinkFn() = default;
    Kind kind_ = Kind::BradleyTerry;
    double lo_ = 0, hi_ = 1, knee_ = 0;
    std::vector<double> xs_, ys_;
    std::vector<std::vector<double>> values_;
};

}  // namespace cgame

#include "cgame/link.hpp"

#include <algorithm>
#include <cmath>

#include "cgame/common.hpp"

namespace cgame {

LinkFn LinkFn::bradley_terry() {
    LinkFn f;
    f.kind_ = Kind::BradleyTerry;
    return f;
}

LinkFn LinkFn::piecewise_gadget(double lo, double hi, double knee) {
    if (!(lo < hi)) throw config_error("gadget link needs lo < hi");
    if (!(lo >= 0.0) || !(hi <= 1.0))
        throw config_error("gadget link needs 0 <= lo < hi <= 1");
    if (!(knee >= 0.0) || !(knee <= hi))
        throw config_error("gadget link knee must lie in [0, hi]");
    LinkFn f;
    f.kind_ = Kind::PiecewiseGadget;
    f.lo_ = lo;
    f.hi_ = hi;
    f.knee_ = knee;
    return f;
}

LinkFn LinkFn::table(std::vector<double> xs, std::vector<double> ys,
                     std::vector<std::vector<double>> values) {
    if (xs.size() < 2 || ys.size() < 2)
        throw config_error("table link needs at least a 2x2 grid");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw config_error("table link x grid must increase");
    for (std::size_t j = 1; j < ys.size(); ++j)
        if (!(ys[j] > ys[j - 1])) throw config_error("table link y grid must increase");
    if (values.size() != xs.size()) throw config_error("table link needs one row per x");
    for (auto& row : values)
        if (row.size() != ys.size()) throw config_error("table link row length mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            double v = values[i][j];
            if (!(v >= 0.0 && v <= 1.0)) throw config_error("table link values must be in [0,1]");
            if (i > 0 && values[i][j] < values[i - 1][j] - kTol)
                throw config_error("table link must be non-decreasing in x");
            if (j > 0 && values[i][j] > values[i][j - 1] + kTol)
                throw config_error("table link must be non-increasing in y");
        }
    LinkFn f;
    f.kind_ = Kind::Table;
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    f.values_ = std::move(values);
    return f;
}

namespace {

// Index i with grid[i] <= v <= grid[i+1], clamping outside the grid.
std::size_t cell(const std::vector<double>& grid, double v) {
    if (v <= grid.front()) return 0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (v <= grid[i]) return i - 1;
    return grid.size() - 2;
}

}  // namespace

double LinkFn::eval(double x, double y) const {
    switch (kind_) {
        case Kind::BradleyTerry:
            return 1.0 / (1.0 + std::exp(y - x));
        case Kind::PiecewiseGadget: {
            x = std::clamp(x, lo_, hi_);
            y = std::clamp(y, 0.0, hi_);
            double row_hi = (1.0 + hi_ - std::max(y, knee_)) / 2.0;
            double row_lo = (1.0 + lo_ - y) / 2.0;
            if (x >= hi_) return row_hi;
            if (x <= lo_) return row_lo;
            if (x <= y)  // rise at slope 1/2 from the lo row toward 1/2 at x = y
                return 0.5 * (x - lo_) + row_lo;
            // x above y: interpolate from the diagonal (or from the lo row
            // when y sits below it) up to the hi row.
            double x0 = std::max(y, lo_);
            double v0 = y >= lo_ ? 0.5 : row_lo;
            return v0 + (row_hi - v0) * (x - x0) / (hi_ - x0);
        }
        case Kind::Table: {
            x = std::clamp(x, xs_.front(), xs_.back());
            y = std::clamp(y, ys_.front(), ys_.back());
            std::size_t i = cell(xs_, x), j = cell(ys_, y);
            double tx = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
            double ty = (y - ys_[j]) / (ys_[j + 1] - ys_[j]);
            double a = values_[i][j] * (1 - ty) + values_[i][j + 1] * ty;
            double b = values_[i + 1][j] * (1 - ty) + values_[i + 1][j + 1] * ty;
            return a * (1 - tx) + b * tx;
        }
    }
    return 0.5;
}

void LinkFn::assert_in_domain(double x, double y) const {
    if (kind_ != Kind::PiecewiseGadget) return;
    if (x < lo_ - kTol || x > hi_ + kTol || y < -kTol || y > hi_ + kTol)
        throw std::logic_error("gadget link queried outside its declared domain");
}

double LinkFn::lipschitz_second() const {
    if (kind_ == Kind::BradleyTerry) return 0.25;
    // Piecewise-(bi)linear kinds: the max slope is attained on the sample
    // grid, so a fine finite-difference sweep recovers it exactly (up to the
    // step used), which is all the window sizing needs.
    double ylo, yhi;
    std::vector<double> xprobe;
    if (kind_ == Kind::PiecewiseGadget) {
        ylo = 0.0;
        yhi = hi_;
        for (int i = 0; i <= 40; ++i) xprobe.push_back(lo_ + (hi_ - lo_) * i / 40.0);
    } else {
        ylo = ys_.front();
        yhi = ys_.back();
        xprobe = xs_;
    }
    const int steps = 2000;
    double dy = (yhi - ylo) / steps, worst = 0;
    for (double x : xprobe)
        for (int j = 0; j < steps; ++j) {
            double y = ylo + j * dy;
            double s = std::abs(eval(x, y + dy) - eval(x, y)) / dy;
            if (s > worst) worst = s;
        }
    return worst;
}

}  // namespace cgame

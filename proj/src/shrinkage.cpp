#include "cgame/shrinkage.hpp"

#include <cmath>

#include "cgame/common.hpp"

namespace cgame {

ShrinkageFn ShrinkageFn::sqrt_decay(double q, double h) {
    if (!(q > 0) || !(h > 0))
        throw config_error("sqrt shrinkage needs q > 0 and h > 0");
    ShrinkageFn f;
    f.kind_ = Kind::SqrtDecay;
    f.a_ = q;
    f.b_ = h;
    return f;
}

ShrinkageFn ShrinkageFn::linear(double intercept, double slope) {
    if (!(intercept > 0) || !(slope >= 0))
        throw config_error("linear shrinkage needs intercept > 0 and slope >= 0");
    ShrinkageFn f;
    f.kind_ = Kind::Linear;
    f.a_ = intercept;
    f.b_ = slope;
    return f;
}

ShrinkageFn ShrinkageFn::scaled(double lambda, ShrinkageFn inner) {
    if (!(lambda > 0)) throw config_error("scaled shrinkage needs lambda > 0");
    if (inner.kind_ == Kind::Scaled)
        throw config_error("scaled shrinkage cannot nest another scaled shrinkage");
    ShrinkageFn f;
    f.kind_ = Kind::Scaled;
    f.a_ = lambda;
    f.inner_ = std::make_shared<const ShrinkageFn>(std::move(inner));
    return f;
}

ShrinkageFn ShrinkageFn::table(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw config_error("table shrinkage needs at least one point");
    if (points.front().first != 0.0)
        throw config_error("table shrinkage must start at n = 0");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i].first > points[i - 1].first))
            throw config_error("table shrinkage points must have strictly increasing n");
        if (points[i].second > points[i - 1].second + kTol)
            throw config_error("table shrinkage values must be non-increasing");
    }
    ShrinkageFn f;
    f.kind_ = Kind::Table;
    f.points_ = std::move(points);
    return f;
}

double ShrinkageFn::eval(double n) const {
    switch (kind_) {
        case Kind::SqrtDecay: {
            double r = a_ / b_;
            return a_ / std::sqrt(n + r * r);
        }
        case Kind::Linear:
            return a_ - b_ * n;
        case Kind::Scaled:
            return inner_->eval(a_ * n);
        case Kind::Table: {
            if (n <= points_.front().first) return points_.front().second;
            for (std::size_t i = 1; i < points_.size(); ++i) {
                if (n <= points_[i].first) {
                    double n0 = points_[i - 1].first, v0 = points_[i - 1].second;
                    double n1 = points_[i].first, v1 = points_[i].second;
                    return v0 + (v1 - v0) * (n - n0) / (n1 - n0);
                }
            }
            return points_.back().second;
        }
    }
    return 0;
}

double ShrinkageFn::lipschitz() const {
    switch (kind_) {
        case Kind::SqrtDecay:
            // |g'(n)| = q/2 (n + (q/h)^2)^{-3/2}, maximal at n = 0.
            return b_ * b_ * b_ / (2 * a_ * a_);
        case Kind::Linear:
            return b_;
        case Kind::Scaled:
            return a_ * inner_->lipschitz();
        case Kind::Table: {
            double worst = 0;
            for (std::size_t i = 1; i < points_.size(); ++i) {
                double s = (points_[i - 1].second - points_[i].second) /
                           (points_[i].first - points_[i - 1].first);
                if (s > worst) worst = s;
            }
            return worst;
        }
    }
    return 0;
}

}  // namespace cgame

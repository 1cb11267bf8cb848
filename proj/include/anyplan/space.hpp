#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "anyplan/random.hpp"

namespace anyplan {

/// A point in d-dimensional configuration space. Coordinates are radians for
/// arm joints and world units for the point robot; both are treated as plain
/// reals under the Euclidean metric.
using Config = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

Config make_config(std::initializer_list<double> coords);

/// Axis-aligned sampling domain; lower[i] < upper[i] for all i.
struct SpaceBounds {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    SpaceBounds() = default;
    SpaceBounds(Eigen::VectorXd lo, Eigen::VectorXd hi);

    int dimension() const { return static_cast<int>(lower.size()); }
    bool contains(const Config& q) const;
    /// Lebesgue measure of the box.
    double measure() const;
};

double distance(const Config& a, const Config& b);
Config interpolate(const Config& a, const Config& b, double t);
Config sample_uniform(const SpaceBounds& bounds, RandomStream& rng);

double path_length(std::span<const Config> configs);

/// Ordered configuration sequence with its cached Euclidean length.
struct PathSolution {
    std::vector<Config> configs;
    double length = 0.0;

    static PathSolution from_configs(std::vector<Config> configs);
};

/// Ellipsoidal region {x : d(start,x) + d(x,goal) <= c_best} that can contain
/// a path shorter than c_best.
struct InformedRegion {
    Config start;
    Config goal;
    double c_best = kInf;
};

/// Direct sampler for the informed region: draws a point in the unit ball,
/// scales it to the prolate hyperspheroid axes and rotates/translates it into
/// world frame. Rejection is applied only against the space bounds; if the
/// bounds keep rejecting (the region is numerically degenerate) the sampler
/// falls back to a uniform point on the start-goal segment, which always
/// satisfies the region inequality and lies inside the bounds.
class InformedSampler {
public:
    InformedSampler(Config start, Config goal);

    /// c_best = infinity degenerates to uniform sampling over the bounds.
    /// c_best below the start-goal distance is clamped up to it.
    Config sample(double c_best, const SpaceBounds& bounds, RandomStream& rng) const;

    double min_cost() const { return c_min_; }

private:
    Config start_;
    Config goal_;
    Config center_;
    double c_min_;
    Eigen::MatrixXd rotation_;  // ellipse frame -> world frame
};

Config sample_informed(const InformedRegion& region, const SpaceBounds& bounds,
                       RandomStream& rng);

}  // namespace anyplan

#include "anyplan/space.hpp"

#include <cmath>

#include "anyplan/errors.hpp"

namespace anyplan {

Config make_config(std::initializer_list<double> coords) {
    Config q(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) q[i++] = c;
    return q;
}

SpaceBounds::SpaceBounds(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    require(lower.size() == upper.size(), "SpaceBounds: dimension mismatch");
    require(lower.size() >= 1, "SpaceBounds: dimension must be >= 1");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        require(lower[i] < upper[i], "SpaceBounds: lower[i] must be < upper[i]");
    }
}

bool SpaceBounds::contains(const Config& q) const {
    if (q.size() != lower.size()) return false;
    return (q.array() >= lower.array()).all() && (q.array() <= upper.array()).all();
}

double SpaceBounds::measure() const {
    return (upper - lower).prod();
}

double distance(const Config& a, const Config& b) {
    require(a.size() == b.size(), "distance: dimension mismatch");
    return (a - b).norm();
}

Config interpolate(const Config& a, const Config& b, double t) {
    require(a.size() == b.size(), "interpolate: dimension mismatch");
    require(t >= 0.0 && t <= 1.0, "interpolate: t must lie in [0,1]");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return a + t * (b - a);
}

Config sample_uniform(const SpaceBounds& bounds, RandomStream& rng) {
    Config q(bounds.lower.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        q[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
    }
    return q;
}

double path_length(std::span<const Config> configs) {
    require(configs.size() >= 2, "path_length: path needs at least 2 vertices");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < configs.size(); ++i) {
        total += distance(configs[i], configs[i + 1]);
    }
    return total;
}

PathSolution PathSolution::from_configs(std::vector<Config> configs) {
    PathSolution p;
    p.length = path_length(configs);
    p.configs = std::move(configs);
    return p;
}

InformedSampler::InformedSampler(Config start, Config goal)
    : start_(std::move(start)), goal_(std::move(goal)) {
    require(start_.size() == goal_.size(), "InformedSampler: dimension mismatch");
    const Eigen::Index d = start_.size();
    center_ = 0.5 * (start_ + goal_);
    c_min_ = (goal_ - start_).norm();

    if (c_min_ < 1e-15) {
        rotation_ = Eigen::MatrixXd::Identity(d, d);
        return;
    }
    // Rotation whose first column is the transverse axis, via the SVD of the
    // rank-1 outer product a1 * e1^T (Householder-free and dimension-generic).
    Eigen::VectorXd a1 = (goal_ - start_) / c_min_;
    Eigen::MatrixXd m = a1 * Eigen::MatrixXd::Identity(d, d).col(0).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(d);
    diag[d - 1] = svd.matrixU().determinant() * svd.matrixV().determinant();
    rotation_ = svd.matrixU() * diag.asDiagonal() * svd.matrixV().transpose();
}

namespace {

Config sample_unit_ball(Eigen::Index d, RandomStream& rng) {
    Config g(d);
    double norm2;
    do {
        for (Eigen::Index i = 0; i < d; ++i) g[i] = rng.gaussian();
        norm2 = g.squaredNorm();
    } while (norm2 < 1e-300);
    const double radius = std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
    return g * (radius / std::sqrt(norm2));
}

}  // namespace

Config InformedSampler::sample(double c_best, const SpaceBounds& bounds,
                               RandomStream& rng) const {
    require(bounds.lower.size() == start_.size(),
            "InformedSampler: bounds dimension mismatch");
    if (std::isinf(c_best)) return sample_uniform(bounds, rng);

    const Eigen::Index d = start_.size();
    const double c = std::max(c_best, c_min_);  // clamp transient numeric noise
    const double r1 = c / 2.0;
    const double ri = std::sqrt(std::max(0.0, c * c - c_min_ * c_min_)) / 2.0;
    Eigen::VectorXd radii = Eigen::VectorXd::Constant(d, ri);
    radii[0] = r1;

    constexpr int kMaxAttempts = 100;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Config x = center_ + rotation_ * (radii.asDiagonal() * sample_unit_ball(d, rng));
        if (bounds.contains(x)) return x;
    }
    // The segment between the foci is inside both the region and the bounds.
    return interpolate(start_, goal_, rng.uniform01());
}

Config sample_informed(const InformedRegion& region, const SpaceBounds& bounds,
                       RandomStream& rng) {
    require(region.c_best >= 0.0, "sample_informed: c_best must be nonnegative");
    return InformedSampler(region.start, region.goal).sample(region.c_best, bounds, rng);
}

}  // namespace anyplan

#include "anyplan/shortcut.hpp"

#include <algorithm>
#include <cmath>

#include "anyplan/errors.hpp"

namespace anyplan {

int shortcut_iterations(double scf, std::size_t n_vertices) {
    require(scf > 0.0, "shortcut_iterations: scf must be > 0");
    require(n_vertices >= 2, "shortcut_iterations: path needs at least 2 vertices");
    const long long rounded = std::llround(scf * static_cast<double>(n_vertices));
    return static_cast<int>(std::max(1LL, rounded));
}

namespace {

constexpr double kSpliceEps = 1e-12;

struct ArcPoint {
    std::size_t segment;  // index of the segment containing the point
    double offset;        // arc length into that segment
    Config config;
};

ArcPoint locate(const std::vector<Config>& configs, const std::vector<double>& cum,
                double s) {
    // cum[i] = arc length up to vertex i; s in [0, cum.back()]
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t seg = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
    seg = std::min(seg, configs.size() - 2);
    const double seg_len = cum[seg + 1] - cum[seg];
    const double offset = std::clamp(s - cum[seg], 0.0, seg_len);
    const double t = seg_len > 0.0 ? offset / seg_len : 0.0;
    return {seg, offset, interpolate(configs[seg], configs[seg + 1], t)};
}

std::vector<double> cumulative_lengths(const std::vector<Config>& configs) {
    std::vector<double> cum(configs.size(), 0.0);
    for (std::size_t i = 1; i < configs.size(); ++i) {
        cum[i] = cum[i - 1] + distance(configs[i - 1], configs[i]);
    }
    return cum;
}

// Remove interior vertices lying within kSpliceEps of the segment joining
// their neighbors, keeping the merged segment only when it stays motion-valid.
void collinear_cleanup(std::vector<Config>& configs, const Scenario& scenario) {
    std::size_t i = 1;
    while (i + 1 < configs.size()) {
        const Config& prev = configs[i - 1];
        const Config& next = configs[i + 1];
        const double chord = distance(prev, next);
        double off_segment = kInf;
        if (chord > 0.0) {
            const double t = std::clamp(
                (configs[i] - prev).dot(next - prev) / (chord * chord), 0.0, 1.0);
            off_segment = distance(configs[i], prev + t * (next - prev));
        } else {
            off_segment = distance(configs[i], prev);
        }
        if (off_segment < kSpliceEps && motion_valid(scenario, prev, next)) {
            configs.erase(configs.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
}

}  // namespace

PathSolution shortcut(const PathSolution& p, const Scenario& scenario,
                      const ShortcutBudget& budget, RandomStream& rng) {
    require(p.configs.size() >= 2, "shortcut: path needs at least 2 vertices");
    const int iterations = shortcut_iterations(budget.scf, p.configs.size());

    std::vector<Config> configs = p.configs;
    for (int iter = 0; iter < iterations; ++iter) {
        const std::vector<double> cum = cumulative_lengths(configs);
        const double total = cum.back();
        if (total <= kSpliceEps) break;

        double s1 = rng.uniform(0.0, total);
        double s2 = rng.uniform(0.0, total);
        if (s1 > s2) std::swap(s1, s2);
        const ArcPoint a = locate(configs, cum, s1);
        const ArcPoint b = locate(configs, cum, s2);
        if (a.segment == b.segment) continue;  // chord along one straight segment

        const double sub_len = s2 - s1;
        const double chord = distance(a.config, b.config);
        if (chord >= sub_len - kSpliceEps) continue;
        if (!motion_valid(scenario, a.config, b.config)) continue;

        std::vector<Config> next;
        next.reserve(a.segment + 2 + configs.size() - b.segment);
        next.assign(configs.begin(), configs.begin() + static_cast<std::ptrdiff_t>(a.segment) + 1);
        next.push_back(a.config);
        next.push_back(b.config);
        next.insert(next.end(), configs.begin() + static_cast<std::ptrdiff_t>(b.segment) + 1,
                    configs.end());
        configs = std::move(next);
    }

    collinear_cleanup(configs, scenario);
    return PathSolution::from_configs(std::move(configs));
}

}  // namespace anyplan

#pragma once

// Attractor samplers (chaos game, deterministic depth expansion, randomized
// translations) and the empirical box-counting dimension.
//
// All randomness flows through SplitMix64 with an explicit 64-bit seed, so
// identical seeds give identical clouds on every platform. The counting grid
// is anchored at the origin with half-open cells [m*delta, (m+1)*delta); the
// anchor is fixed for reproducibility and affects counts only by a bounded
// factor, not the fitted slope.

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "affdim/errors.hpp"
#include "affdim/ifs.hpp"
#include "affdim/rng.hpp"

namespace affdim {

struct PointCloud {
    std::vector<Vec> points;
    std::uint64_t seed = 0;
    std::string generator;
};

inline constexpr int kDefaultBurnIn = 100;

/// Random-iteration sampler: from x = 0, repeatedly apply a uniformly chosen
/// map, discarding the first burn_in iterates.
inline PointCloud chaos_game(const Ifs& ifs, int n_points, std::uint64_t seed,
                             int burn_in = kDefaultBurnIn) {
    require_valid(ifs, "chaos_game");
    if (n_points < 1) throw invalid_input("chaos_game: need at least one point");
    if (burn_in < 0) throw invalid_input("chaos_game: negative burn-in");

    SplitMix64 rng(seed);
    const auto k = static_cast<std::uint64_t>(ifs.size());
    Vec x = Vec::zero(ifs.dim());
    for (int i = 0; i < burn_in; ++i) x = ifs.map(static_cast<int>(rng.next_below(k)))(x);

    PointCloud cloud;
    cloud.seed = seed;
    cloud.generator = "chaos_game";
    cloud.points.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        x = ifs.map(static_cast<int>(rng.next_below(k)))(x);
        cloud.points.push_back(x);
    }
    return cloud;
}

namespace detail {

// Shared level-n expansion. Every edge of the word tree perturbs the
// translation by an independent uniform draw in [-sigma, sigma]^d; sigma = 0
// skips the draws entirely, which makes the noiseless run bit-identical to
// the plain expansion.
inline void expand_level(const Ifs& ifs, int depth, double sigma, SplitMix64* rng,
                         std::vector<Vec>& out) {
    const int k = ifs.size();
    const int d = ifs.dim();
    auto rec = [&](auto&& self, const Mat& prefix, const Vec& offset, int level) -> void {
        if (level == depth) {
            out.push_back(offset);
            return;
        }
        for (int i = 0; i < k; ++i) {
            Vec a = ifs.map(i).translation;
            if (sigma > 0.0)
                for (int j = 0; j < d; ++j) a[j] += sigma * rng->next_in(-1.0, 1.0);
            self(self, prefix * ifs.map(i).linear, offset + prefix * a, level + 1);
        }
    };
    rec(rec, Mat::identity(d), Vec::zero(d), 0);
}

} // namespace detail

/// The level-n images f_w(0) for all k^depth words, in lexicographic order.
inline PointCloud deterministic_points(const Ifs& ifs, int depth,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
    require_valid(ifs, "deterministic_points");
    if (depth < 0 || depth > kDefaultWordCap)
        throw invalid_input("deterministic_points: depth must be in [0," +
                            std::to_string(kDefaultWordCap) + "]");
    std::uint64_t leaves = 1;
    for (int i = 0; i < depth; ++i) {
        leaves *= static_cast<std::uint64_t>(ifs.size());
        if (leaves > budget)
            throw resource_limit("deterministic_points: k^depth exceeds the budget of " +
                                 std::to_string(budget) + " points");
    }

    PointCloud cloud;
    cloud.generator = "deterministic_points";
    cloud.points.reserve(leaves);
    detail::expand_level(ifs, depth, 0.0, nullptr, cloud.points);
    return cloud;
}

/// Level-n expansion where every map application adds an independent uniform
/// error in [-sigma, sigma]^d to its translation (a random self-affine set in
/// the sense of Jordan, Pollicott and Simon). sigma = 0 reduces exactly to
/// deterministic_points.
inline PointCloud randomized_attractor(const Ifs& ifs, int depth, double sigma,
                                       std::uint64_t seed,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
    require_valid(ifs, "randomized_attractor");
    if (sigma < 0.0) throw invalid_input("randomized_attractor: sigma must be >= 0");
    if (depth < 0 || depth > kDefaultWordCap)
        throw invalid_input("randomized_attractor: depth must be in [0," +
                            std::to_string(kDefaultWordCap) + "]");
    std::uint64_t leaves = 1;
    for (int i = 0; i < depth; ++i) {
        leaves *= static_cast<std::uint64_t>(ifs.size());
        if (leaves > budget)
            throw resource_limit("randomized_attractor: k^depth exceeds the budget of " +
                                 std::to_string(budget) + " points");
    }

    SplitMix64 rng(seed);
    PointCloud cloud;
    cloud.seed = seed;
    cloud.generator = "randomized_attractor";
    cloud.points.reserve(leaves);
    detail::expand_level(ifs, depth, sigma, &rng, cloud.points);
    return cloud;
}

struct BoxCountSeries {
    std::vector<double> scales;        // descending
    std::vector<std::size_t> counts;   // occupied cells per scale
};

namespace detail {

struct CellKey {
    std::array<std::int64_t, kMaxDim> c{};
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::int64_t v : k.c) {
            std::uint64_t z = h ^ static_cast<std::uint64_t>(v);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            h = z ^ (z >> 31);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

/// Occupied-cell counts N(delta) on the origin-anchored half-open grid, one
/// count per requested scale. Scales must be in (0,1] and descending.
inline BoxCountSeries box_count(const PointCloud& cloud, const std::vector<double>& scales) {
    if (cloud.points.empty()) throw invalid_input("box_count: empty point cloud");
    if (scales.empty()) throw invalid_input("box_count: no scales");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0 && scales[i] <= 1.0))
            throw invalid_input("box_count: scales must lie in (0,1]");
        if (i > 0 && scales[i] >= scales[i - 1])
            throw invalid_input("box_count: scales must be strictly descending");
    }

    const int d = cloud.points.front().dim();
    BoxCountSeries series;
    series.scales = scales;
    std::unordered_set<detail::CellKey, detail::CellKeyHash> cells;
    for (double delta : scales) {
        cells.clear();
        cells.reserve(cloud.points.size() * 2);
        for (const Vec& p : cloud.points) {
            detail::CellKey key;
            for (int j = 0; j < d; ++j)
                key.c[static_cast<std::size_t>(j)] =
                    static_cast<std::int64_t>(std::floor(p[j] / delta));
            cells.insert(key);
        }
        series.counts.push_back(cells.size());
    }
    return series;
}

struct BoxDimFit {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
};

/// Least-squares slope of log N(delta) against log(1/delta); the slope is the
/// empirical Minkowski dimension, the largest absolute residual a quality
/// signal for how straight the log-log series actually is.
inline BoxDimFit boxdim_estimate(const BoxCountSeries& series) {
    const std::size_t n = series.scales.size();
    if (n < 3) throw invalid_input("boxdim_estimate: need at least 3 scales");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(1.0 / series.scales[i]);
        const double y = std::log(static_cast<double>(series.counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw invalid_input("boxdim_estimate: degenerate scale set");

    BoxDimFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(1.0 / series.scales[i]);
        const double y = std::log(static_cast<double>(series.counts[i]));
        fit.max_residual = std::max(fit.max_residual, std::abs(y - (fit.slope * x + fit.intercept)));
    }
    return fit;
}

/// Dyadic scales 2^-j0 >= ... >= 2^-j1.
inline std::vector<double> dyadic_scales(int j0, int j1) {
    if (j0 > j1) throw invalid_input("dyadic_scales: need j0 <= j1");
    std::vector<double> s;
    for (int j = j0; j <= j1; ++j) s.push_back(std::ldexp(1.0, -j));
    return s;
}

} // namespace affdim

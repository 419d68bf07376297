#include <catch2/catch.hpp>

#include <cmath>
#include <unordered_map>

#include "affdim/estimators.hpp"
#include "fixtures.hpp"

using namespace affdim;

namespace {

bool clouds_identical(const PointCloud& a, const PointCloud& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        for (int j = 0; j < a.points[i].dim(); ++j)
            if (a.points[i][j] != b.points[i][j]) return false;
    return true;
}

// bucket grid for "is there a cloud point within eps of p" queries
class NearQuery {
public:
    NearQuery(const std::vector<Vec>& pts, double eps) : eps_(eps) {
        for (std::size_t i = 0; i < pts.size(); ++i) buckets_[key(pts[i])].push_back(i);
        pts_ = &pts;
    }
    bool any_within(const Vec& p) const {
        const auto [cx, cy] = key(p);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                const auto it = buckets_.find({cx + dx, cy + dy});
                if (it == buckets_.end()) continue;
                for (std::size_t i : it->second)
                    if (((*pts_)[i] - p).norm() < eps_) return true;
            }
        return false;
    }

private:
    using Key = std::pair<long long, long long>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<long long>()(k.first * 1000003LL + k.second);
        }
    };
    Key key(const Vec& p) const {
        return {static_cast<long long>(std::floor(p[0] / eps_)),
                static_cast<long long>(std::floor(p[1] / eps_))};
    }
    double eps_;
    const std::vector<Vec>* pts_;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

} // namespace

TEST_CASE("chaos game converges to the unique fixed point of a single map", "[estimators]") {
    const Ifs one({{Mat::diagonal({0.5, 0.5}), Vec{0.5, 0.0}}}, 2);
    const PointCloud cloud = chaos_game(one, 50, 123);
    for (const Vec& p : cloud.points) {
        REQUIRE(std::abs(p[0] - 1.0) < 1e-6);
        REQUIRE(std::abs(p[1]) < 1e-6);
    }
}

TEST_CASE("chaos game stays inside the convex hull of the map fixed points", "[estimators]") {
    // fixed points of the equilateral gasket maps: (0,0), (1,0), (1/2, sqrt(3)/2)
    const Ifs sier = fixtures::sierpinski_equilateral();
    const PointCloud cloud = chaos_game(sier, 10000, 7);
    const double h = 0.5 * std::sqrt(3.0);
    for (const Vec& p : cloud.points) {
        REQUIRE(p[1] >= -1e-9);                              // above y = 0
        REQUIRE(h * p[0] - 0.5 * p[1] >= -1e-9);             // right of edge (0,0)-(1/2,h)
        REQUIRE(h * (1.0 - p[0]) - 0.5 * p[1] >= -1e-9);     // left of edge (1,0)-(1/2,h)
    }
}

TEST_CASE("chaos game is deterministic in the seed", "[estimators]") {
    const Ifs sier = fixtures::sierpinski_right();
    CHECK(clouds_identical(chaos_game(sier, 5000, 99), chaos_game(sier, 5000, 99)));
    CHECK_FALSE(clouds_identical(chaos_game(sier, 5000, 99), chaos_game(sier, 5000, 100)));
    CHECK_THROWS_AS(chaos_game(sier, 0, 1), invalid_input);
}

TEST_CASE("deterministic points at small depths", "[estimators]") {
    const Ifs sier = fixtures::sierpinski_right();

    const PointCloud d0 = deterministic_points(sier, 0);
    REQUIRE(d0.points.size() == 1);
    CHECK(d0.points[0].norm() == 0.0);

    const PointCloud d1 = deterministic_points(sier, 1);
    REQUIRE(d1.points.size() == 3);
    CHECK(d1.points[0].norm() == 0.0);
    CHECK(d1.points[1][0] == 0.5);
    CHECK(d1.points[2][1] == 0.5);

    CHECK_THROWS_AS(deterministic_points(sier, 20, 1000), resource_limit);
}

TEST_CASE("deterministic points agree with an independent chaos cloud", "[estimators]") {
    const Ifs sier = fixtures::sierpinski_right();
    const PointCloud det = deterministic_points(sier, 8);
    REQUIRE(det.points.size() == 6561);

    const PointCloud chaos = chaos_game(sier, 100000, 4242);
    const double bound = 2.0 * std::pow(0.5, 8);
    const NearQuery q(chaos.points, bound);
    for (const Vec& p : det.points) REQUIRE(q.any_within(p));
}

TEST_CASE("randomized attractor reduces bit-exactly to the deterministic expansion",
          "[estimators]") {
    const Ifs sier = fixtures::sierpinski_equilateral();
    const PointCloud det = deterministic_points(sier, 6);
    const PointCloud rnd = randomized_attractor(sier, 6, 0.0, 555);
    CHECK(clouds_identical(det, rnd));

    CHECK(clouds_identical(randomized_attractor(sier, 5, 0.01, 9),
                           randomized_attractor(sier, 5, 0.01, 9)));
    CHECK_THROWS_AS(randomized_attractor(sier, 5, -0.1, 9), invalid_input);
}

TEST_CASE("randomized attractor obeys the geometric error envelope", "[estimators]") {
    const Ifs sier = fixtures::sierpinski_right();
    const int depth = 8;
    const double sigma = 0.01;
    const PointCloud det = deterministic_points(sier, depth);
    const PointCloud rnd = randomized_attractor(sier, depth, sigma, 31337);
    REQUIRE(det.points.size() == rnd.points.size());

    double envelope = 0; // sigma * sqrt(2) * sum_{j<depth} lambda^j
    for (int j = 0; j < depth; ++j) envelope += sigma * std::sqrt(2.0) * std::pow(0.5, j);
    for (std::size_t i = 0; i < det.points.size(); ++i)
        REQUIRE((det.points[i] - rnd.points[i]).norm() <= envelope + 1e-12);
}

TEST_CASE("box count of a single point is one cell at every scale", "[estimators]") {
    PointCloud cloud;
    cloud.points.push_back(Vec{0.3, 0.4});
    const BoxCountSeries s = box_count(cloud, dyadic_scales(1, 6));
    for (std::size_t c : s.counts) REQUIRE(c == 1);
}

TEST_CASE("box count of a uniform segment doubles per scale halving", "[estimators]") {
    SplitMix64 rng(2718);
    PointCloud cloud;
    for (int i = 0; i < 10000; ++i) cloud.points.push_back(Vec{rng.next_double(), 0.0});
    const BoxCountSeries s = box_count(cloud, dyadic_scales(2, 7));
    for (std::size_t i = 0; i < s.scales.size(); ++i) {
        const double inv = 1.0 / s.scales[i];
        REQUIRE(static_cast<double>(s.counts[i]) >= 0.95 * inv);
        REQUIRE(static_cast<double>(s.counts[i]) <= inv + 1.0);
    }
    const BoxDimFit fit = boxdim_estimate(s);
    CHECK(fit.slope == Approx(1.0).margin(0.03));
}

TEST_CASE("box count of the uniform square fills the grid", "[estimators]") {
    SplitMix64 rng(314159);
    PointCloud cloud;
    for (int i = 0; i < 1000000; ++i)
        cloud.points.push_back(Vec{rng.next_double(), rng.next_double()});
    const BoxCountSeries s = box_count(cloud, dyadic_scales(2, 7));
    for (std::size_t i = 0; i < s.scales.size(); ++i) {
        const double inv2 = 1.0 / (s.scales[i] * s.scales[i]);
        REQUIRE(static_cast<double>(s.counts[i]) >= 0.95 * inv2);
        REQUIRE(static_cast<double>(s.counts[i]) <= inv2 + 1.0);
    }
    const BoxDimFit fit = boxdim_estimate(s);
    CHECK(fit.slope == Approx(2.0).margin(0.03));
}

TEST_CASE("constant counts fit slope zero", "[estimators]") {
    BoxCountSeries s;
    s.scales = dyadic_scales(2, 5);
    s.counts = {1, 1, 1, 1};
    const BoxDimFit fit = boxdim_estimate(s);
    CHECK(fit.slope == Approx(0.0).margin(1e-12));
    CHECK(fit.max_residual == Approx(0.0).margin(1e-12));
}

TEST_CASE("box counts are monotone under scale halving", "[estimators]") {
    const PointCloud cloud = chaos_game(fixtures::sierpinski_right(), 50000, 8);
    const BoxCountSeries s = box_count(cloud, dyadic_scales(1, 8));
    for (std::size_t i = 1; i < s.counts.size(); ++i) REQUIRE(s.counts[i] >= s.counts[i - 1]);
}

TEST_CASE("box counts are invariant under exact whole-cell translations", "[estimators]") {
    const PointCloud cloud = chaos_game(fixtures::carpet_2x3(), 20000, 21);
    PointCloud shifted = cloud;
    for (Vec& p : shifted.points) {
        p[0] += 3.0; // integer offsets are multiples of every dyadic scale
        p[1] += 7.0;
    }
    const auto scales = dyadic_scales(2, 7);
    const BoxCountSeries a = box_count(cloud, scales);
    const BoxCountSeries b = box_count(shifted, scales);
    for (std::size_t i = 0; i < a.counts.size(); ++i) REQUIRE(a.counts[i] == b.counts[i]);
}

TEST_CASE("gasket box dimension is consistent with the similarity dimension", "[estimators]") {
    const PointCloud cloud = chaos_game(fixtures::sierpinski_right(), 100000, 12);
    const BoxDimFit fit = boxdim_estimate(box_count(cloud, dyadic_scales(3, 8)));
    CHECK(fit.slope == Approx(std::log(3.0) / std::log(2.0)).margin(0.05));
    CHECK(fit.slope <= 2.05);
}

TEST_CASE("box count input validation", "[estimators]") {
    PointCloud empty;
    CHECK_THROWS_AS(box_count(empty, dyadic_scales(1, 3)), invalid_input);

    PointCloud one;
    one.points.push_back(Vec{0.0, 0.0});
    CHECK_THROWS_AS(box_count(one, {}), invalid_input);
    CHECK_THROWS_AS(box_count(one, {0.5, 0.5}), invalid_input);
    CHECK_THROWS_AS(box_count(one, {2.0, 0.5}), invalid_input);

    BoxCountSeries two;
    two.scales = {0.5, 0.25};
    two.counts = {1, 2};
    CHECK_THROWS_AS(boxdim_estimate(two), invalid_input);
}

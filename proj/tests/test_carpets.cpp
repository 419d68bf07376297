#include <catch2/catch.hpp>

#include <cmath>
#include <numeric>
#include <set>

#include "affdim/carpets.hpp"
#include "affdim/dimension.hpp"
#include "affdim/estimators.hpp"
#include "fixtures.hpp"

using namespace affdim;

namespace {

const CarpetSpec kWorked = CarpetSpec::make(2, 3, {{0, 0}, {0, 1}, {1, 0}});
const CarpetSpec kOneColumn = CarpetSpec::make(2, 3, {{0, 0}, {0, 2}});

} // namespace

TEST_CASE("carpet spec validation and canonicalization", "[carpets]") {
    CHECK_THROWS_AS(CarpetSpec::make(1, 3, {{0, 0}}), invalid_input);
    CHECK_THROWS_AS(CarpetSpec::make(2, 3, {}), invalid_input);
    CHECK_THROWS_AS(CarpetSpec::make(2, 3, {{2, 0}}), invalid_input);
    CHECK_THROWS_AS(CarpetSpec::make(2, 3, {{0, 3}}), invalid_input);

    // p > q inputs are transposed to the canonical wide orientation
    const CarpetSpec t = CarpetSpec::make(3, 2, {{2, 1}, {0, 0}});
    CHECK(t.transposed);
    CHECK(t.p == 2);
    CHECK(t.q == 3);
    CHECK(t.cells == std::vector<std::pair<int, int>>{{0, 0}, {1, 2}});
}

TEST_CASE("carpet_to_ifs produces the grid maps", "[carpets]") {
    const Ifs ifs = carpet_to_ifs(kWorked);
    REQUIRE(ifs.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(ifs.map(i).linear(0, 0) == Approx(0.5).margin(1e-15));
        CHECK(ifs.map(i).linear(1, 1) == Approx(1.0 / 3.0).margin(1e-15));
    }
    CHECK(ifs.map(0).translation[0] == 0.0);
    CHECK(ifs.map(0).translation[1] == 0.0);
    CHECK(ifs.map(1).translation[0] == 0.0);
    CHECK(ifs.map(1).translation[1] == Approx(1.0 / 3.0).margin(1e-15));
    CHECK(ifs.map(2).translation[0] == 0.5);
    CHECK(ifs.map(2).translation[1] == 0.0);
    CHECK(validate_ifs(ifs).pass);
}

TEST_CASE("space-filling and conformal carpets have the expected affinity dimension",
          "[carpets]") {
    const CarpetSpec full = CarpetSpec::make(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(affinity_dimension(carpet_to_ifs(full), 3).zero == Approx(2.0).margin(1e-9));
    CHECK(carpet_box_dimension(full) == Approx(2.0).margin(1e-12));
    CHECK(carpet_hausdorff_dimension(full) == Approx(2.0).margin(1e-12));

    const CarpetSpec gasket = CarpetSpec::make(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    const double d = std::log(3.0) / std::log(2.0);
    CHECK(affinity_dimension(carpet_to_ifs(gasket), 3).zero == Approx(d).margin(1e-9));
    CHECK(carpet_box_dimension(gasket) == Approx(d).margin(1e-12));
    CHECK(carpet_hausdorff_dimension(gasket) == Approx(d).margin(1e-12));
}

TEST_CASE("closed-form dimensions of the worked 2x3 carpet", "[carpets]") {
    const double box = carpet_box_dimension(kWorked);
    const double haus = carpet_hausdorff_dimension(kWorked);
    CHECK(box == Approx(1.0 + std::log(1.5) / std::log(3.0)).margin(1e-10)); // 1.3690702
    const double gamma = std::log(2.0) / std::log(3.0);
    CHECK(haus == Approx(std::log2(std::pow(2.0, gamma) + 1.0)).margin(1e-10)); // 1.3499
    CHECK(haus < box);
}

TEST_CASE("single-column carpet shows the dimension gap", "[carpets]") {
    const double box = carpet_box_dimension(kOneColumn);
    CHECK(box == Approx(std::log(2.0) / std::log(3.0)).margin(1e-10)); // 0.6309
    CHECK(carpet_hausdorff_dimension(kOneColumn) == Approx(box).margin(1e-10));

    const double s = affinity_dimension(carpet_to_ifs(kOneColumn), 4).zero;
    CHECK(s == Approx(1.0).margin(1e-9));
    CHECK(s - box > 0.3);
}

TEST_CASE("uniform column counts collapse Hausdorff to box dimension", "[carpets]") {
    SplitMix64 rng(271);
    for (int t = 0; t < 20; ++t) {
        const int p = 2 + static_cast<int>(rng.next_below(3));
        const int q = p + static_cast<int>(rng.next_below(3));
        const int per_col = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(q)));
        const int ncols = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p)));
        std::vector<std::pair<int, int>> cells;
        for (int j = 0; j < ncols; ++j) {
            // pick per_col distinct rows for this column
            std::set<int> rows;
            while (static_cast<int>(rows.size()) < per_col)
                rows.insert(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(q))));
            for (int i : rows) cells.emplace_back(j, i);
        }
        const CarpetSpec spec = CarpetSpec::make(p, q, cells);
        REQUIRE(carpet_hausdorff_dimension(spec) ==
                Approx(carpet_box_dimension(spec)).margin(1e-10));
    }
}

TEST_CASE("dimension chain hausdorff <= box <= affinity holds on random carpets", "[carpets]") {
    SplitMix64 rng(277);
    for (int t = 0; t < 15; ++t) {
        const int p = 2 + static_cast<int>(rng.next_below(2));
        const int q = p + static_cast<int>(rng.next_below(3));
        std::set<std::pair<int, int>> cells;
        const int n = 2 + static_cast<int>(rng.next_below(4));
        while (static_cast<int>(cells.size()) < n)
            cells.insert({static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p))),
                          static_cast<int>(rng.next_below(static_cast<std::uint64_t>(q)))});
        const CarpetSpec spec =
            CarpetSpec::make(p, q, std::vector<std::pair<int, int>>(cells.begin(), cells.end()));

        const double haus = carpet_hausdorff_dimension(spec);
        const double box = carpet_box_dimension(spec);
        const double aff = affinity_dimension(carpet_to_ifs(spec), 6).zero;
        REQUIRE(haus <= box + 1e-10);
        REQUIRE(box <= aff + 1e-6);
    }
}

TEST_CASE("empirical box dimension of the worked carpet matches the formula", "[carpets]") {
    const PointCloud cloud = chaos_game(carpet_to_ifs(kWorked), 1000000, 99);
    const BoxDimFit fit = boxdim_estimate(box_count(cloud, dyadic_scales(3, 8)));
    CHECK(fit.slope == Approx(carpet_box_dimension(kWorked)).margin(0.08));
}

TEST_CASE("transpose consistency of the dimension formulas", "[carpets]") {
    SplitMix64 rng(281);
    for (int t = 0; t < 20; ++t) {
        const int p = 2 + static_cast<int>(rng.next_below(3));
        const int q = 2 + static_cast<int>(rng.next_below(3));
        std::set<std::pair<int, int>> cells;
        const int n = 1 + static_cast<int>(rng.next_below(4));
        while (static_cast<int>(cells.size()) < n)
            cells.insert({static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p))),
                          static_cast<int>(rng.next_below(static_cast<std::uint64_t>(q)))});

        std::vector<std::pair<int, int>> fwd(cells.begin(), cells.end());
        std::vector<std::pair<int, int>> rev;
        for (const auto& [j, i] : fwd) rev.emplace_back(i, j);

        const CarpetSpec a = CarpetSpec::make(p, q, fwd);
        const CarpetSpec b = CarpetSpec::make(q, p, rev);
        REQUIRE(carpet_box_dimension(a) == Approx(carpet_box_dimension(b)).margin(1e-12));
        REQUIRE(carpet_hausdorff_dimension(a) ==
                Approx(carpet_hausdorff_dimension(b)).margin(1e-12));
    }
}

TEST_CASE("ascii sketch puts the origin cell bottom-left", "[carpets]") {
    const std::string art = carpet_ascii(kWorked);
    CHECK(art == "..\n#.\n##\n");
}

TEST_CASE("grid spec generalizes the carpet construction", "[carpets]") {
    // equal subdivision reduces to carpet_to_ifs
    const GridSpec even = GridSpec::make({0.5, 0.5}, {1.0 / 3, 1.0 / 3, 1.0 / 3},
                                         {{0, 0}, {0, 1}, {1, 0}});
    const Ifs a = grid_to_ifs(even);
    const Ifs b = carpet_to_ifs(kWorked);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.map(i).linear(0, 0) == Approx(b.map(i).linear(0, 0)).margin(1e-15));
        CHECK(a.map(i).translation[0] == Approx(b.map(i).translation[0]).margin(1e-15));
        CHECK(a.map(i).translation[1] == Approx(b.map(i).translation[1]).margin(1e-15));
    }

    const GridSpec uneven = GridSpec::make({0.5, 0.5}, {0.7, 0.3}, {{0, 0}, {1, 1}});
    const Ifs c = grid_to_ifs(uneven);
    CHECK(c.map(0).linear(1, 1) == Approx(0.7).margin(1e-15));
    CHECK(c.map(1).linear(1, 1) == Approx(0.3).margin(1e-15));
    CHECK(c.map(1).translation[0] == Approx(0.5).margin(1e-15));
    CHECK(c.map(1).translation[1] == Approx(0.7).margin(1e-15));

    CHECK_THROWS_AS(GridSpec::make({1.0}, {0.5, 0.5}, {{0, 0}}), invalid_input);
    CHECK_THROWS_AS(GridSpec::make({0.6, 0.6}, {0.5, 0.5}, {{0, 0}}), invalid_input);
}

TEST_CASE("every grid system passes validation", "[carpets]") {
    SplitMix64 rng(283);
    for (int t = 0; t < 30; ++t) {
        const int nc = 2 + static_cast<int>(rng.next_below(3));
        const int nr = 2 + static_cast<int>(rng.next_below(3));
        std::vector<double> w(static_cast<std::size_t>(nc)), h(static_cast<std::size_t>(nr));
        double ws = 0, hs = 0;
        for (double& x : w) ws += (x = rng.next_in(0.1, 1.0));
        for (double& x : h) hs += (x = rng.next_in(0.1, 1.0));
        for (double& x : w) x /= ws;
        for (double& x : h) x /= hs;
        // renormalize the tail element so the sums are exactly enough
        w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
        h.back() = 1.0 - std::accumulate(h.begin(), h.end() - 1, 0.0);

        std::vector<std::pair<int, int>> cells{
            {static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nc))),
             static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nr)))}};
        const GridSpec spec = GridSpec::make(w, h, cells);
        const Ifs ifs = grid_to_ifs(spec);
        REQUIRE(validate_ifs(ifs).pass);
        const double expect =
            std::max(spec.widths[static_cast<std::size_t>(cells[0].first)],
                     spec.heights[static_cast<std::size_t>(cells[0].second)]);
        REQUIRE(operator_norm(ifs.map(0).linear) == Approx(expect).margin(1e-12));
    }
}

#pragma once

// Shared test systems and generators.

#include <cmath>

#include "affdim/ifs.hpp"
#include "affdim/rng.hpp"

namespace fixtures {

using namespace affdim;

/// Right-angle Sierpinski gasket: three half-scale maps with translations
/// (0,0), (1/2,0), (0,1/2). Attractor sits in the unit square and the open
/// unit square is a valid open set for the OSC.
inline Ifs sierpinski_right() {
    const Mat a = Mat::diagonal({0.5, 0.5});
    return Ifs({{a, Vec{0.0, 0.0}}, {a, Vec{0.5, 0.0}}, {a, Vec{0.0, 0.5}}}, 2);
}

/// Equilateral Sierpinski triangle: translations (0,0), (1/2,0),
/// (1/4, sqrt(3)/4).
inline Ifs sierpinski_equilateral() {
    const Mat a = Mat::diagonal({0.5, 0.5});
    const double h = 0.25 * std::sqrt(3.0);
    return Ifs({{a, Vec{0.0, 0.0}}, {a, Vec{0.5, 0.0}}, {a, Vec{0.25, h}}}, 2);
}

/// The worked Bedford-McMullen system: p=2 columns, q=3 rows, cells
/// {(0,0),(0,1),(1,0)}; three copies of diag(1/2,1/3).
inline Ifs carpet_2x3() {
    const Mat a = Mat::diagonal({0.5, 1.0 / 3.0});
    return Ifs({{a, Vec{0.0, 0.0}}, {a, Vec{0.0, 1.0 / 3.0}}, {a, Vec{0.5, 0.0}}}, 2);
}

/// Random similarity system: k maps r_i * R(theta_i) + a_i with ratios in
/// [lo, hi].
inline Ifs random_similarity_ifs(SplitMix64& rng, int k, double lo = 0.3, double hi = 0.55) {
    std::vector<AffineMap> maps;
    for (int i = 0; i < k; ++i) {
        const double r = rng.next_in(lo, hi);
        const Mat a = Mat::rotation2(rng.next_in(0.0, 6.2831853)) * r;
        maps.push_back({a, Vec{rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)}});
    }
    return Ifs(std::move(maps), 2);
}

/// Random invertible affine contraction system with operator norms <= cap.
inline Ifs random_affine_ifs(SplitMix64& rng, int k, double norm_cap = 0.6) {
    std::vector<AffineMap> maps;
    while (static_cast<int>(maps.size()) < k) {
        Mat m(2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m(r, c) = rng.next_in(-1.0, 1.0);
        const double n = operator_norm(m);
        if (n < 1e-3) continue;
        const double scale = rng.next_in(0.3, 1.0) * norm_cap / n;
        m = m * scale;
        if (std::abs(m.det()) < 1e-6) continue;
        maps.push_back({m, Vec{rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)}});
    }
    return Ifs(std::move(maps), 2);
}

} // namespace fixtures

#pragma once

// Covering machinery: stopping-time word sets Z(delta), cylinder ellipse
// covers f_w(B(0,R)), and covering a plane ellipse by equal balls.
//
// Z(delta) collects exactly the words whose contraction-ratio product first
// drops below delta; the products accumulate in log space so deep words do
// not underflow. Covers are computed in the R = 1 normalization and scaled
// back, which for affine maps is simply: center f_w(0), axis directions the
// left singular vectors of A_w, semi-lengths R * alpha_j(A_w).

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "affdim/errors.hpp"
#include "affdim/ifs.hpp"
#include "affdim/linalg.hpp"

namespace affdim {

/// Prefix-free, complete set of words with
/// lambda_w < delta <= lambda_{parent of w}.
struct StoppingSet {
    double delta = 0;
    std::vector<Word> words;
};

inline StoppingSet stopping_set(const Ifs& ifs, double delta, int word_cap = kDefaultWordCap) {
    require_valid(ifs, "stopping_set");
    if (!(delta > 0.0 && delta < 1.0))
        throw invalid_input("stopping_set: delta must lie in (0,1)");

    const int k = ifs.size();
    std::vector<double> log_lambda;
    for (int i = 0; i < k; ++i) log_lambda.push_back(std::log(operator_norm(ifs.map(i).linear)));
    const double log_delta = std::log(delta);

    StoppingSet out;
    out.delta = delta;
    Word word;
    auto rec = [&](auto&& self, double log_prod) -> void {
        // invariant: log_prod >= log_delta (the parent product is still large)
        for (int i = 0; i < k; ++i) {
            const double lp = log_prod + log_lambda[static_cast<std::size_t>(i)];
            word.push_back(i);
            if (lp < log_delta) {
                out.words.push_back(word);
            } else {
                if (static_cast<int>(word.size()) >= word_cap)
                    throw resource_limit(
                        "stopping_set: delta = " + std::to_string(delta) +
                        " needs words longer than the cap of " + std::to_string(word_cap));
                self(self, lp);
            }
            word.pop_back();
        }
    };
    rec(rec, 0.0);
    return out;
}

/// Solid ellipsoid: center, orthonormal axis directions (columns of `axes`,
/// ordered by descending semi-length).
struct Ellipse {
    Vec center;
    Mat axes;
    SingularValues semi_lengths;

    int dim() const { return center.dim(); }

    /// Closed membership with relative slack on the normalized radius.
    bool contains(const Vec& p, double tol = 1e-9) const {
        const int d = dim();
        double q = 0;
        for (int j = 0; j < d; ++j) {
            const double yj = axes.col(j).dot(p - center);
            const double lj = semi_lengths[j];
            if (lj <= 0.0) return false;
            q += (yj / lj) * (yj / lj);
        }
        return q <= 1.0 + tol;
    }

    /// Angle of the major axis against e1, in (-pi, pi] (d = 2).
    double angle() const { return std::atan2(axes(1, 0), axes(0, 0)); }
};

/// One ellipse per word: the image f_w(B(0,R)).
inline std::vector<Ellipse> cylinder_cover(const Ifs& ifs, const std::vector<Word>& words,
                                           double R) {
    require_valid(ifs, "cylinder_cover");
    if (!(R > 0.0)) throw invalid_input("cylinder_cover: R must be positive");
    if (R < bounding_radius(ifs) - 1e-12)
        throw invalid_input("cylinder_cover: R smaller than the bounding radius");

    const int d = ifs.dim();
    std::vector<Ellipse> out;
    out.reserve(words.size());
    for (const Word& w : words) {
        const AffineMap fw = compose(ifs, w);
        Ellipse e;
        e.center = fw.translation; // f_w(0)
        if (w.empty()) {
            e.axes = Mat::identity(d);
            e.semi_lengths.dim = d;
            for (int j = 0; j < d; ++j) e.semi_lengths.values[j] = R;
        } else {
            const Svd f = svd(fw.linear);
            e.axes = f.u;
            e.semi_lengths = f.sigma;
            for (int j = 0; j < d; ++j) e.semi_lengths.values[j] *= R;
        }
        out.push_back(e);
    }
    return out;
}

namespace detail {

// Ball at (x0, 0) in the ellipse frame covers the full vertical slab of the
// solid ellipse over t in [t_lo, t_hi] where
//   g(t) = (t - x0)^2 + yhat(t)^2 <= r^2,  yhat(t)^2 = a2^2 (1 - t^2/a1^2),
// an upward parabola in t (a2 < a1). Returns the smaller root given that x0
// was chosen to make the frontier X a root.
inline double slab_lower_root(double a1, double a2, double r, double x0) {
    const double beta = 1.0 - (a2 * a2) / (a1 * a1);
    const double c0 = x0 * x0 + a2 * a2 - r * r;
    if (beta <= 1e-15) {
        // circle: g is linear in t
        return (x0 > 0) ? c0 / (2 * x0) : -std::numeric_limits<double>::infinity();
    }
    const double disc = x0 * x0 - beta * c0;
    if (disc <= 0.0) return std::numeric_limits<double>::infinity(); // signals a stall
    return (x0 - std::sqrt(disc)) / beta;
}

} // namespace detail

/// Centers of radius-r balls covering the solid plane ellipse `e`.
///
/// Construction, by chord geometry throughout. If the ellipse fits in one
/// ball, done. Tail sections near the tips, where the local height is small,
/// are covered outside-in by balls on the major axis: a ball at (x0, 0)
/// covers the full-height slab where (t - x0)^2 + yhat(t)^2 <= r^2. When r
/// clears the minor semi-axis comfortably this single row runs all the way
/// across. Otherwise the middle is covered by column pairs at heights
/// +-a2/2 (full-height slabs of half-width sqrt(r^2 - a2^2/4)), and when
/// even pairs cannot reach (r <= a2/2) by a rows-by-columns grid. Every
/// placement satisfies the covering inequality, so the output provably
/// covers the ellipse with O(a1/min(r, a2) * max(1, a2/r)) balls.
inline std::vector<Vec> ball_cover_from_ellipse(const Ellipse& e, double r) {
    if (e.dim() != 2)
        throw unsupported_dimension("ball_cover_from_ellipse: only d = 2 is supported");
    if (!(r > 0.0)) throw invalid_input("ball_cover_from_ellipse: radius must be positive");

    const double a1 = e.semi_lengths[0];
    const double a2 = e.semi_lengths[1];
    const Vec u = e.axes.col(0);
    const Vec v = e.axes.col(1);
    const auto place = [&](double x, double y) { return e.center + u * x + v * y; };

    std::vector<Vec> out;
    if (a1 <= r) {
        out.push_back(e.center);
        return out;
    }

    // A single on-axis row beats paired rows once r is comfortably above a2
    // (count ~ a1/sqrt(r^2-a2^2) vs 2*a1/sqrt(r^2-a2^2/4), crossover at
    // r ~ 1.118*a2).
    const bool single_row = r >= 1.12 * a2;
    const double w_pair = (2 * r > a2) ? std::sqrt(r * r - 0.25 * a2 * a2) : 0.0;
    // tails run while the local height stays below h_cut, which keeps the
    // per-ball progress at least sqrt(r^2 - h_cut^2)
    const double h_cut = single_row ? a2 : std::min(0.5 * a2, 0.8660254037844386 * r);
    const double x_tail =
        single_row ? 0.0 : a1 * std::sqrt(std::max(0.0, 1.0 - (h_cut / a2) * (h_cut / a2)));

    std::vector<double> axis_positions;
    double frontier = a1;
    bool center_done = false;
    for (int guard = 0; guard < 100000; ++guard) {
        if (!single_row && frontier <= x_tail) break;
        const double yx_sq = a2 * a2 * std::max(0.0, 1.0 - (frontier * frontier) / (a1 * a1));
        if (r * r <= yx_sq) break; // apex taller than the ball: stall
        const double x0 = frontier - std::sqrt(r * r - yx_sq);
        const double lo = detail::slab_lower_root(a1, a2, r, x0);
        if (lo >= frontier - 1e-12 * a1) break; // no progress: stall
        axis_positions.push_back(x0);
        if (lo <= 0.0) {
            // coverage crossed the center; the mirrored copies close the gap
            center_done = true;
            break;
        }
        frontier = lo;
    }

    for (double x : axis_positions) {
        out.push_back(place(x, 0.0));
        if (x > 1e-12 * a1) out.push_back(place(-x, 0.0));
    }

    if (!center_done) {
        if (w_pair > 0.0) {
            // column pairs at heights +-a2/2 across [-frontier, frontier]
            const int cols = (frontier > w_pair)
                                 ? static_cast<int>(std::ceil((frontier - w_pair) / (2 * w_pair)))
                                 : 0;
            for (int j = 0; j <= cols; ++j) {
                const double x = j * 2 * w_pair;
                out.push_back(place(x, 0.5 * a2));
                out.push_back(place(x, -0.5 * a2));
                if (j > 0) {
                    out.push_back(place(-x, 0.5 * a2));
                    out.push_back(place(-x, -0.5 * a2));
                }
            }
        } else {
            // r <= a2/2: rows-by-columns grid over the central slab
            const int rows = std::max(1, static_cast<int>(std::ceil(a2 / (r * std::sqrt(2.0)))));
            const double va = a2 / (2.0 * rows);
            const double wa = std::sqrt(r * r - va * va);
            for (int m = 1; m <= rows; ++m) {
                const double y = (2 * m - 1) * va;
                const double y_in = (2 * m - 2) * va;
                const double x_ext = std::min(
                    frontier, a1 * std::sqrt(std::max(0.0, 1.0 - (y_in / a2) * (y_in / a2))));
                const int cols = (x_ext > wa)
                                     ? static_cast<int>(std::ceil((x_ext - wa) / (2 * wa)))
                                     : 0;
                for (int j = -cols; j <= cols; ++j) {
                    out.push_back(place(j * 2 * wa, y));
                    out.push_back(place(j * 2 * wa, -y));
                }
            }
        }
    }
    return out;
}

} // namespace affdim

#pragma once

// Sufficient-condition checkers for planar systems: the open set condition on
// a user-supplied open rectangle, and the Hueter-Lalley hypotheses (bounded
// ellipse shape, first-quadrant cone separation).
//
// The OSC checker decides the condition for THIS candidate V only; a fail
// verdict never claims that no valid open set exists. Containment and
// disjointness there are closed conditions: images may touch the boundary of
// V or each other (grid carpets do), so margins of exactly zero pass. The
// Hueter-Lalley cone conditions are the opposite: the hypotheses need strict
// positivity and strictly separated cones, so ties within 1e-12 come back
// inconclusive rather than pass.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "affdim/errors.hpp"
#include "affdim/ifs.hpp"
#include "affdim/linalg.hpp"

namespace affdim {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
    }
}

struct Finding {
    std::string check;
    int map_a = -1;
    int map_b = -1; // -1 for per-map findings
    double margin = 0;
    bool ok = false;
    std::string note;
};

struct ConditionReport {
    std::string title;
    Verdict verdict = Verdict::inconclusive;
    std::string caveat;
    std::vector<Finding> findings;

    std::string to_text() const {
        std::ostringstream os;
        os << title << ": " << to_string(verdict) << "\n";
        if (!caveat.empty()) os << "  note: " << caveat << "\n";
        for (const Finding& f : findings) {
            os << "  [" << (f.ok ? " ok " : "FAIL") << "] " << f.check << " map " << f.map_a;
            if (f.map_b >= 0) os << " vs " << f.map_b;
            os << ", margin " << f.margin;
            if (!f.note.empty()) os << " (" << f.note << ")";
            os << "\n";
        }
        return os.str();
    }
};

/// Open axis-aligned rectangle (x0,x1) x (y0,y1).
struct Rect {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
};

namespace detail {

using Quad = std::array<Vec, 4>;

inline Quad image_of_rect(const AffineMap& f, const Rect& r) {
    return {f(Vec{r.x0, r.y0}), f(Vec{r.x1, r.y0}), f(Vec{r.x1, r.y1}), f(Vec{r.x0, r.y1})};
}

/// Signed separation of two convex quadrilaterals by the separating-axis
/// test over their edge normals (two distinct normals each for
/// parallelograms, all four checked). Positive: a separating gap that wide
/// exists. Zero: touching. Negative: every axis overlaps, i.e. the interiors
/// intersect; the value is the smallest projected overlap.
inline double sat_separation(const Quad& a, const Quad& b) {
    double best = -std::numeric_limits<double>::infinity();
    const auto project = [](const Quad& q, const Vec& axis, double& lo, double& hi) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (const Vec& p : q) {
            const double t = p.dot(axis);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    };
    for (const Quad* q : {&a, &b}) {
        for (int e = 0; e < 4; ++e) {
            const Vec edge = (*q)[static_cast<std::size_t>((e + 1) % 4)] -
                             (*q)[static_cast<std::size_t>(e)];
            const double len = edge.norm();
            if (len < 1e-300) continue;
            const Vec axis{-edge[1] / len, edge[0] / len};
            double alo, ahi, blo, bhi;
            project(a, axis, alo, ahi);
            project(b, axis, blo, bhi);
            best = std::max(best, std::max(blo - ahi, alo - bhi));
        }
    }
    return best;
}

} // namespace detail

/// Open set condition on the candidate rectangle V: every image f_i(V) must
/// stay inside V (closed containment of the image parallelogram) and the open
/// images must be pairwise disjoint (separating-axis separation >= 0).
inline ConditionReport check_osc_rectangle(const Ifs& ifs, const Rect& rect) {
    if (ifs.dim() != 2)
        throw unsupported_dimension("check_osc_rectangle: only d = 2 is supported");
    if (!(rect.x0 < rect.x1 && rect.y0 < rect.y1))
        throw invalid_input("check_osc_rectangle: degenerate rectangle");
    require_valid(ifs, "check_osc_rectangle");

    constexpr double kTol = 1e-12;
    ConditionReport rep;
    rep.title = "open set condition on the candidate rectangle";
    rep.caveat = "verdict applies to this candidate V only; fail does not prove "
                 "that no valid open set exists";

    std::vector<detail::Quad> images;
    for (int i = 0; i < ifs.size(); ++i)
        images.push_back(detail::image_of_rect(ifs.map(i), rect));

    bool all_ok = true;
    for (int i = 0; i < ifs.size(); ++i) {
        double margin = std::numeric_limits<double>::infinity();
        for (const Vec& p : images[static_cast<std::size_t>(i)]) {
            margin = std::min(margin, p[0] - rect.x0);
            margin = std::min(margin, rect.x1 - p[0]);
            margin = std::min(margin, p[1] - rect.y0);
            margin = std::min(margin, rect.y1 - p[1]);
        }
        Finding f{"containment", i, -1, margin, margin >= -kTol, ""};
        all_ok = all_ok && f.ok;
        rep.findings.push_back(std::move(f));
    }
    for (int i = 0; i < ifs.size(); ++i)
        for (int j = i + 1; j < ifs.size(); ++j) {
            const double sep = detail::sat_separation(images[static_cast<std::size_t>(i)],
                                                      images[static_cast<std::size_t>(j)]);
            Finding f{"disjointness", i, j, sep, sep >= -kTol,
                      sep >= -kTol && sep <= kTol ? "touching" : ""};
            all_ok = all_ok && f.ok;
            rep.findings.push_back(std::move(f));
        }

    rep.verdict = all_ok ? Verdict::pass : Verdict::fail;
    return rep;
}

/// Hueter-Lalley hypotheses, as formalized: (a) covering-ellipse shape bound
/// alpha_1(A_i)^2 < alpha_2(A_i); (b) each A_i maps the closed first quadrant
/// into the open first quadrant (both image basis vectors strictly positive);
/// (c) the image cones are pairwise disjoint in angle. Ties within 1e-12
/// cannot be decided robustly and yield an inconclusive verdict.
inline ConditionReport check_hueter_lalley(const Ifs& ifs) {
    if (ifs.dim() != 2)
        throw unsupported_dimension("check_hueter_lalley: only d = 2 is supported");
    require_valid(ifs, "check_hueter_lalley");

    constexpr double kTol = 1e-12;
    ConditionReport rep;
    rep.title = "Hueter-Lalley hypotheses (as formalized)";
    rep.caveat = "checks the shape bound and the cone separation only; the "
                 "theorem's 'sufficiently separated ellipses' is not quantified";

    bool any_fail = false, any_tie = false;
    const auto record = [&](Finding f) {
        any_fail = any_fail || f.margin < -kTol;
        any_tie = any_tie || (f.margin >= -kTol && f.margin <= kTol);
        f.ok = f.margin > kTol;
        rep.findings.push_back(std::move(f));
    };

    struct ConeInterval {
        double lo = 0, hi = 0;
        bool representable = false;
    };
    std::vector<ConeInterval> cones;
    for (int i = 0; i < ifs.size(); ++i) {
        const Mat& a = ifs.map(i).linear;
        const SingularValues sv = singular_values(a);
        record({"shape alpha1^2 < alpha2", i, -1, sv[1] - sv[0] * sv[0], false, ""});

        double pos = std::numeric_limits<double>::infinity();
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) pos = std::min(pos, a(r, c));
        record({"cone positivity", i, -1, pos, false,
                pos <= kTol ? "an image basis vector leaves the open quadrant" : ""});

        // A(Q2) is the cone spanned by the two image basis vectors
        const double t1 = std::atan2(a(1, 0), a(0, 0));
        const double t2 = std::atan2(a(1, 1), a(0, 1));
        ConeInterval ci{std::min(t1, t2), std::max(t1, t2), true};
        // spread beyond pi means the short arc wraps; that only happens when
        // positivity already failed, so the pair stage may skip it
        ci.representable = (ci.hi - ci.lo) <= 3.141592653589793;
        cones.push_back(ci);
    }

    for (int i = 0; i < ifs.size(); ++i)
        for (int j = i + 1; j < ifs.size(); ++j) {
            const auto& ci = cones[static_cast<std::size_t>(i)];
            const auto& cj = cones[static_cast<std::size_t>(j)];
            if (!ci.representable || !cj.representable) continue;
            const double gap = std::max(cj.lo - ci.hi, ci.lo - cj.hi);
            record({"cone disjointness", i, j, gap, false,
                    gap < -kTol ? "image cones overlap in angle" : ""});
        }

    rep.verdict = any_fail ? Verdict::fail : (any_tie ? Verdict::inconclusive : Verdict::pass);
    return rep;
}

} // namespace affdim

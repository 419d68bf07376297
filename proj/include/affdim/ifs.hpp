#pragma once

// Iterated function systems of affine contractions f_i(x) = A_i x + a_i.
// Contraction ratios are always derived from the matrices themselves
// (lambda_i = ||A_i||), never supplied by the caller, so the declared and the
// actual Lipschitz constants cannot drift apart.

#include <string>
#include <vector>

#include "affdim/errors.hpp"
#include "affdim/linalg.hpp"

namespace affdim {

/// Words longer than this are rejected: for typical contraction ratios the
/// smallest singular value of the composed map underflows beyond it.
inline constexpr int kDefaultWordCap = 30;

/// Word-tree enumerations refuse to visit more than this many leaves.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

struct AffineMap {
    Mat linear;
    Vec translation;

    int dim() const { return linear.dim(); }
    Vec operator()(const Vec& x) const { return linear * x + translation; }

    static AffineMap identity(int d) { return {Mat::identity(d), Vec::zero(d)}; }
};

/// Composition g after h: (g * h)(x) = g(h(x)).
inline AffineMap operator*(const AffineMap& g, const AffineMap& h) {
    return {g.linear * h.linear, g.linear * h.translation + g.translation};
}

/// Finite index sequence addressing a cylinder; indices are 0-based
/// positions into Ifs::map().
using Word = std::vector<int>;

class Ifs {
public:
    Ifs(std::vector<AffineMap> maps, int dim) : maps_(std::move(maps)), dim_(dim) {
        detail::check_dim(dim_, "Ifs");
        if (maps_.empty()) throw invalid_input("Ifs: needs at least one map");
        for (std::size_t i = 0; i < maps_.size(); ++i)
            if (maps_[i].dim() != dim_ || maps_[i].translation.dim() != dim_)
                throw invalid_input("Ifs: map " + std::to_string(i) +
                                    " has mismatched ambient dimension");
    }

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(maps_.size()); }
    const AffineMap& map(int i) const { return maps_[static_cast<std::size_t>(i)]; }
    const std::vector<AffineMap>& maps() const { return maps_; }

private:
    std::vector<AffineMap> maps_;
    int dim_;
};

struct MapDiagnostics {
    int index = 0;
    double norm = 0;      // lambda_i = ||A_i||
    double det = 0;
    bool contractive = false;
    bool invertible = false;
};

struct ValidationReport {
    std::vector<MapDiagnostics> maps;
    bool pass = false;
    double max_norm = 0;

    /// Determinants below this magnitude count as non-invertible.
    static constexpr double kDetFloor = 1e-12;
};

/// Per-map contraction/invertibility diagnostics. Overall pass iff every
/// ||A_i|| < 1 and every |det A_i| >= 1e-12.
inline ValidationReport validate_ifs(const Ifs& ifs) {
    ValidationReport rep;
    rep.pass = true;
    for (int i = 0; i < ifs.size(); ++i) {
        const AffineMap& f = ifs.map(i);
        if (!f.linear.finite() || !f.translation.finite())
            throw invalid_input("validate_ifs: map " + std::to_string(i) +
                                " has non-finite entries");
        MapDiagnostics d;
        d.index = i;
        d.norm = operator_norm(f.linear);
        d.det = f.linear.det();
        d.contractive = d.norm < 1.0;
        d.invertible = std::abs(d.det) >= ValidationReport::kDetFloor;
        rep.max_norm = std::max(rep.max_norm, d.norm);
        rep.pass = rep.pass && d.contractive && d.invertible;
        rep.maps.push_back(d);
    }
    return rep;
}

inline void require_valid(const Ifs& ifs, const char* who) {
    const ValidationReport rep = validate_ifs(ifs);
    if (rep.pass) return;
    for (const MapDiagnostics& d : rep.maps) {
        if (!d.contractive)
            throw invalid_input(std::string(who) + ": map " + std::to_string(d.index) +
                                " is not contractive (||A|| = " + std::to_string(d.norm) + ")");
        if (!d.invertible)
            throw invalid_input(std::string(who) + ": map " + std::to_string(d.index) +
                                " is numerically singular (|det| < 1e-12)");
    }
}

/// The composed map f_w = f_{w_0} o f_{w_1} o ... o f_{w_{n-1}}; the empty
/// word gives the identity. Matrices multiply left to right without
/// re-orthogonalization, hence the word-length cap.
inline AffineMap compose(const Ifs& ifs, const Word& w, int word_cap = kDefaultWordCap) {
    if (static_cast<int>(w.size()) > word_cap)
        throw resource_limit("compose: word length " + std::to_string(w.size()) +
                             " exceeds cap " + std::to_string(word_cap));
    AffineMap acc = AffineMap::identity(ifs.dim());
    for (int idx : w) {
        if (idx < 0 || idx >= ifs.size())
            throw invalid_input("compose: index " + std::to_string(idx) + " out of range [0," +
                                std::to_string(ifs.size() - 1) + "]");
        acc = acc * ifs.map(idx);
    }
    return acc;
}

/// Radius R with f_i(B(0,R)) inside B(0,R) for every map:
/// R = max_i |a_i| / (1 - max_i ||A_i||), floored at 1e-9 so degenerate
/// all-translations-zero systems still get a positive ball.
inline double bounding_radius(const Ifs& ifs) {
    require_valid(ifs, "bounding_radius");
    double max_t = 0, max_norm = 0;
    for (int i = 0; i < ifs.size(); ++i) {
        max_t = std::max(max_t, ifs.map(i).translation.norm());
        max_norm = std::max(max_norm, operator_norm(ifs.map(i).linear));
    }
    return std::max(max_t / (1.0 - max_norm), 1e-9);
}

} // namespace affdim

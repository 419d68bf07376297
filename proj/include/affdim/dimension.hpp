#pragma once

// Dimension theory for affine systems: the similarity dimension (the s with
// sum lambda_i^s = 1), the singular value function phi^s, finite-level
// subadditive pressure P_n(s) = (1/n) log sum_{|w|=n} phi^s(A_w), and the
// affinity dimension as the zero of P_n.
//
// P_n is piecewise smooth with kinks at integer s, so root finding is plain
// bisection: unconditionally convergent and monotone-safe. Sums of phi values
// are accumulated in log space (running-max log-sum-exp with compensated
// summation) so deep words cannot underflow.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "affdim/errors.hpp"
#include "affdim/ifs.hpp"
#include "affdim/linalg.hpp"

namespace affdim {

/// Unique s >= 0 with sum_i ratios[i]^s = 1. Each ratio must lie in (0,1);
/// a single ratio gives 0. Bisection refines until the residual
/// |sum - 1| < 1e-12 (the interval also collapses to ~machine width).
inline double similarity_dimension(const std::vector<double>& ratios) {
    if (ratios.empty()) throw invalid_input("similarity_dimension: no ratios");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0))
            throw invalid_input("similarity_dimension: ratio outside (0,1)");
    if (ratios.size() == 1) return 0.0;

    const auto f = [&](double s) {
        double sum = 0;
        for (double r : ratios) sum += std::pow(r, s);
        return sum - 1.0;
    };

    double hi = 1.0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw invalid_input("similarity_dimension: ratios too close to 1");
    }
    double lo = 0.0;
    double mid = 0.5 * hi;
    for (int it = 0; it < 300; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) < 1e-13) break;
        (fm > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    return mid;
}

/// Contraction ratios lambda_i = ||A_i|| of a validated system.
inline std::vector<double> contraction_ratios(const Ifs& ifs) {
    std::vector<double> r;
    r.reserve(static_cast<std::size_t>(ifs.size()));
    for (int i = 0; i < ifs.size(); ++i) r.push_back(operator_norm(ifs.map(i).linear));
    return r;
}

namespace detail {

/// log phi^s from the log singular values (descending). For 0 <= s < d the
/// definition alpha_1...alpha_l * alpha_{l+1}^{s-l} with l = floor(s); from
/// s = d on, the determinant continuation |det|^{s/d} keeps the function
/// positive and strictly decreasing.
inline double log_svf_from_logs(const std::array<double, kMaxDim>& la, int d, double s) {
    if (s <= 0.0) return 0.0;
    if (s >= static_cast<double>(d)) {
        double full = 0;
        for (int j = 0; j < d; ++j) full += la[j];
        return full * (s / d);
    }
    const int l = static_cast<int>(std::floor(s));
    double acc = 0;
    for (int j = 0; j < l; ++j) acc += la[j];
    return acc + (s - l) * la[l];
}

/// Running-max log-sum-exp with Kahan-compensated mantissa sum; deterministic
/// in insertion order.
class LogSumExp {
public:
    void add(double l) {
        if (empty_) {
            max_ = l;
            sum_ = 1.0;
            comp_ = 0.0;
            empty_ = false;
            return;
        }
        if (l <= max_) {
            kahan_add(std::exp(l - max_));
        } else {
            const double scale = std::exp(max_ - l);
            sum_ *= scale;
            comp_ *= scale;
            max_ = l;
            kahan_add(1.0);
        }
    }
    double log_total() const {
        if (empty_) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

private:
    void kahan_add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    double max_ = 0, sum_ = 0, comp_ = 0;
    bool empty_ = true;
};

inline std::uint64_t checked_pow(int k, int n, std::uint64_t budget, const char* who) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(k);
        if (total > budget)
            throw resource_limit(std::string(who) + ": k^n exceeds the enumeration budget of " +
                                 std::to_string(budget) + " words");
    }
    return total;
}

/// Depth-first visit of every length-n product A_{w_0}...A_{w_{n-1}},
/// reusing the parent product, in lexicographic word order. log|det| is
/// accumulated alongside (determinants multiply exactly in log space),
/// because the determinant of a deep product computed from its entries
/// cancels catastrophically once it falls below the entry scale squared.
template <typename Leaf>
void for_each_word_product(const Ifs& ifs, int n, Leaf&& leaf) {
    const int k = ifs.size();
    std::vector<double> log_dets;
    for (int i = 0; i < k; ++i)
        log_dets.push_back(std::log(std::abs(ifs.map(i).linear.det())));
    auto rec = [&](auto&& self, const Mat& prod, double log_det, int depth) -> void {
        if (depth == n) {
            leaf(prod, log_det);
            return;
        }
        for (int i = 0; i < k; ++i)
            self(self, prod * ifs.map(i).linear, log_det + log_dets[static_cast<std::size_t>(i)],
                 depth + 1);
    };
    rec(rec, Mat::identity(ifs.dim()), 0.0, 0);
}

/// Log singular values of a word product. All but the smallest come from the
/// product entries (well conditioned); the smallest is recovered from the
/// accumulated log|det|, which stays accurate at any depth. For d >= 3 the
/// middle values are still entry-based and lose accuracy for extremely deep,
/// ill-conditioned products; the plane, where the pressure work happens, is
/// exact up to the usual epsilon.
inline std::array<double, kMaxDim> product_log_alphas(const Mat& prod, double log_abs_det,
                                                      const char* who) {
    const int d = prod.dim();
    const SingularValues sv = singular_values(prod);
    std::array<double, kMaxDim> la{};
    double partial = 0;
    for (int j = 0; j + 1 < d; ++j) {
        if (sv.values[j] <= 0.0)
            throw invalid_input(std::string(who) + ": singular word product");
        la[j] = std::log(sv.values[j]);
        partial += la[j];
    }
    la[d - 1] = std::min(log_abs_det - partial, la[d - 2]); // keep the ordering
    return la;
}

} // namespace detail

/// Singular value function phi^s(M). Rejects non-invertible input.
inline double svf(const Mat& m, double s) {
    if (s < 0) throw invalid_input("svf: s must be >= 0");
    const SingularValues sv = singular_values(m);
    std::array<double, kMaxDim> la{};
    for (int j = 0; j < sv.dim; ++j) {
        if (sv.values[j] <= 0.0) throw invalid_input("svf: zero singular value (non-invertible)");
        la[j] = std::log(sv.values[j]);
    }
    return std::exp(detail::log_svf_from_logs(la, sv.dim, s));
}

/// Finite-level pressure P_n(s) = (1/n) log sum_{|w|=n} phi^s(A_w).
inline double pressure_approx(const Ifs& ifs, double s, int n,
                              std::uint64_t budget = kDefaultEnumerationBudget) {
    require_valid(ifs, "pressure_approx");
    if (n < 1 || n > kDefaultWordCap)
        throw invalid_input("pressure_approx: depth must be in [1," +
                            std::to_string(kDefaultWordCap) + "]");
    if (s < 0) throw invalid_input("pressure_approx: s must be >= 0");
    detail::checked_pow(ifs.size(), n, budget, "pressure_approx");

    const int d = ifs.dim();
    detail::LogSumExp lse;
    detail::for_each_word_product(ifs, n, [&](const Mat& prod, double log_det) {
        lse.add(detail::log_svf_from_logs(detail::product_log_alphas(prod, log_det, "pressure_approx"),
                                          d, s));
    });
    return lse.log_total() / n;
}

/// Finite-level pressure curve: the evaluations made while locating the zero
/// of s -> P_n(s), the zero s_n itself, and flags for the two boundary
/// situations (zero clamped at 2d; zero beyond the ambient dimension, where
/// the determinant continuation of phi is in effect).
struct PressureCurve {
    int depth = 0;
    std::vector<std::pair<double, double>> samples; // (s, P_n(s)), ascending in s
    double zero = 0;
    double zero_value = 0; // P_n at the reported zero
    bool clamped_at_upper = false;
    bool exceeds_ambient_dim = false;
};

namespace detail {

// Words this small get their log singular values cached so bisection does not
// re-enumerate the product tree per evaluation.
inline constexpr std::uint64_t kPressureCacheLimit = 2'000'000;

} // namespace detail

/// Zero of the finite-level pressure on [0, 2d] by bisection; tol is the
/// final s-interval width (floored at 1e-12).
inline PressureCurve affinity_dimension(const Ifs& ifs, int n, double tol = 1e-10,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
    require_valid(ifs, "affinity_dimension");
    if (n < 1 || n > kDefaultWordCap)
        throw invalid_input("affinity_dimension: depth must be in [1," +
                            std::to_string(kDefaultWordCap) + "]");
    tol = std::max(tol, 1e-12);
    const std::uint64_t leaves = detail::checked_pow(ifs.size(), n, budget, "affinity_dimension");
    const int d = ifs.dim();

    // cache per-word log singular values when the tree is small enough
    std::vector<std::array<double, kMaxDim>> cache;
    const bool cached = leaves <= detail::kPressureCacheLimit;
    if (cached) {
        cache.reserve(leaves);
        detail::for_each_word_product(ifs, n, [&](const Mat& prod, double log_det) {
            cache.push_back(detail::product_log_alphas(prod, log_det, "affinity_dimension"));
        });
    }

    PressureCurve curve;
    curve.depth = n;
    const auto pressure = [&](double s) {
        double p;
        if (cached) {
            detail::LogSumExp lse;
            for (const auto& la : cache) lse.add(detail::log_svf_from_logs(la, d, s));
            p = lse.log_total() / n;
        } else {
            p = pressure_approx(ifs, s, n, budget);
        }
        curve.samples.emplace_back(s, p);
        return p;
    };

    const double s_hi = 2.0 * d;
    const double p0 = pressure(0.0);
    double zero;
    if (p0 <= 0.0) {
        zero = 0.0; // single-map systems: P_n(0) = 0 is already the zero
        curve.zero_value = p0;
    } else if (pressure(s_hi) > 0.0) {
        curve.clamped_at_upper = true;
        zero = s_hi;
        curve.zero_value = curve.samples.back().second;
    } else {
        double lo = 0.0, hi = s_hi;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            (pressure(mid) > 0.0 ? lo : hi) = mid;
        }
        zero = 0.5 * (lo + hi);
        curve.zero_value = pressure(zero);
    }
    curve.zero = zero;
    curve.exceeds_ambient_dim = zero > static_cast<double>(d);
    std::sort(curve.samples.begin(), curve.samples.end());
    return curve;
}

} // namespace affdim

#pragma once

// Dense linear algebra for small ambient dimensions (2 <= d <= 4, the plane
// being the main case). Everything is a value type with inline storage; no
// heap, no external BLAS. Singular values for d = 2 come from the closed-form
// eigendecomposition of M^T M; d = 3,4 use cyclic Jacobi sweeps.

#include <array>
#include <cmath>
#include <initializer_list>
#include <string>

#include "affdim/errors.hpp"

namespace affdim {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 4;

namespace detail {
inline void check_dim(int d, const char* who) {
    if (d < kMinDim || d > kMaxDim)
        throw invalid_input(std::string(who) + ": ambient dimension must be in [2,4], got " +
                            std::to_string(d));
}
} // namespace detail

/// Fixed-capacity vector in R^d, d in [2,4].
class Vec {
public:
    Vec() = default;
    explicit Vec(int dim) : dim_(dim) { detail::check_dim(dim, "Vec"); }
    Vec(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
        detail::check_dim(dim_, "Vec");
        int i = 0;
        for (double x : xs) v_[i++] = x;
    }

    static Vec zero(int dim) { return Vec(dim); }

    int dim() const { return dim_; }
    double operator[](int i) const { return v_[i]; }
    double& operator[](int i) { return v_[i]; }

    Vec operator+(const Vec& o) const {
        Vec r(dim_);
        for (int i = 0; i < dim_; ++i) r.v_[i] = v_[i] + o.v_[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r(dim_);
        for (int i = 0; i < dim_; ++i) r.v_[i] = v_[i] - o.v_[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r(dim_);
        for (int i = 0; i < dim_; ++i) r.v_[i] = v_[i] * s;
        return r;
    }
    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) v_[i] += o.v_[i];
        return *this;
    }

    double dot(const Vec& o) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += v_[i] * o.v_[i];
        return s;
    }
    double norm() const { return std::sqrt(dot(*this)); }

    bool finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(v_[i])) return false;
        return true;
    }

private:
    std::array<double, kMaxDim> v_{};
    int dim_ = 2;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

/// Square d x d matrix, d in [2,4]. Row-major inline storage.
class Mat {
public:
    Mat() = default;
    explicit Mat(int dim) : dim_(dim) { detail::check_dim(dim, "Mat"); }
    Mat(std::initializer_list<std::initializer_list<double>> rows)
        : dim_(static_cast<int>(rows.size())) {
        detail::check_dim(dim_, "Mat");
        int r = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != dim_)
                throw invalid_input("Mat: ragged initializer");
            int c = 0;
            for (double x : row) (*this)(r, c++) = x;
            ++r;
        }
    }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat diagonal(std::initializer_list<double> d) {
        Mat m(static_cast<int>(d.size()));
        int i = 0;
        for (double x : d) m(i, i) = x, ++i;
        return m;
    }
    /// Plane rotation by angle t (d = 2).
    static Mat rotation2(double t) {
        const double c = std::cos(t), s = std::sin(t);
        return Mat{{c, -s}, {s, c}};
    }

    int dim() const { return dim_; }
    double operator()(int r, int c) const { return m_[r * kMaxDim + c]; }
    double& operator()(int r, int c) { return m_[r * kMaxDim + c]; }

    Mat operator*(const Mat& o) const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                double s = 0;
                for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Vec operator*(const Vec& v) const {
        Vec r(dim_);
        for (int i = 0; i < dim_; ++i) {
            double s = 0;
            for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * v[k];
            r[i] = s;
        }
        return r;
    }
    Mat operator*(double s) const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(i, j) * s;
        return r;
    }

    Mat transposed() const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Vec col(int j) const {
        Vec c(dim_);
        for (int i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_col(int j, const Vec& c) {
        for (int i = 0; i < dim_; ++i) (*this)(i, j) = c[i];
    }

    double det() const {
        const Mat& m = *this;
        switch (dim_) {
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: { // d = 4: cofactor expansion along the first row
            double s = 0;
            for (int j = 0; j < 4; ++j) {
                Mat sub(3);
                for (int r = 1; r < 4; ++r) {
                    int cc = 0;
                    for (int c = 0; c < 4; ++c) {
                        if (c == j) continue;
                        sub(r - 1, cc++) = m(r, c);
                    }
                }
                s += ((j % 2) ? -1.0 : 1.0) * m(0, j) * sub.det();
            }
            return s;
        }
        }
    }

    bool finite() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (!std::isfinite((*this)(i, j))) return false;
        return true;
    }

private:
    std::array<double, kMaxDim * kMaxDim> m_{};
    int dim_ = 2;
};

/// Semi-axis lengths of the image ellipsoid M(B(0,1)), sorted descending.
struct SingularValues {
    std::array<double, kMaxDim> values{};
    int dim = 0;

    double operator[](int i) const { return values[i]; }
    double max() const { return values[0]; }
    double min() const { return values[dim - 1]; }
    double product() const {
        double p = 1;
        for (int i = 0; i < dim; ++i) p *= values[i];
        return p;
    }
};

/// Full decomposition M = U diag(sigma) V^T with orthogonal U, V and
/// sigma sorted descending. Requires M invertible.
struct Svd {
    Mat u;
    SingularValues sigma;
    Mat v;
};

namespace detail {

// Values below this (as squared lengths) are flushed to zero so round-off
// cannot produce sqrt of a negative number.
inline constexpr double kSingularClampSq = 1e-30;

inline double clamped_sqrt(double x) { return x < kSingularClampSq ? 0.0 : std::sqrt(x); }

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues land on the diagonal of `s`; the accumulated rotations in `v`
/// (columns are eigenvectors). Converges to off-diagonal mass below 1e-14 of
/// the Frobenius norm, capped at 100 sweeps.
inline void jacobi_symmetric(Mat& s, Mat& v) {
    const int d = s.dim();
    v = Mat::identity(d);
    double fro = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) fro += s(i, j) * s(i, j);
    const double tol = 1e-14 * std::sqrt(std::max(fro, 1e-300));

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off += 2 * s(i, j) * s(i, j);
        if (std::sqrt(off) < tol) break;

        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                if (s(p, q) == 0.0) continue;
                const double theta = (s(q, q) - s(p, p)) / (2 * s(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < d; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < d; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
                for (int k = 0; k < d; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
    }
}

} // namespace detail

/// Singular values of M: square roots of the eigenvalues of M^T M, sorted
/// descending. d = 2 is closed-form (quadratic in trace/determinant); the
/// smaller value is recovered as |det M| / sigma_1, which keeps the product
/// of the values exactly |det M|.
inline SingularValues singular_values(const Mat& m) {
    if (!m.finite()) throw invalid_input("singular_values: matrix has non-finite entries");
    const int d = m.dim();
    SingularValues sv;
    sv.dim = d;

    if (d == 2) {
        const double a = m(0, 0) * m(0, 0) + m(1, 0) * m(1, 0);
        const double b = m(0, 1) * m(0, 1) + m(1, 1) * m(1, 1);
        const double c = m(0, 0) * m(0, 1) + m(1, 0) * m(1, 1);
        const double disc = std::sqrt(std::max((a - b) * (a - b) + 4 * c * c, 0.0));
        const double lam1 = 0.5 * (a + b + disc);
        const double s1 = detail::clamped_sqrt(lam1);
        const double adet = std::abs(m.det());
        // sigma_2 = |det| / sigma_1 cannot go negative, so no clamp: products
        // of many ill-conditioned maps legitimately reach 1e-40 and below
        sv.values[0] = s1;
        sv.values[1] = (s1 > 0) ? adet / s1 : 0.0;
        return sv;
    }

    Mat s = m.transposed() * m;
    Mat v(d);
    detail::jacobi_symmetric(s, v);
    for (int i = 0; i < d; ++i) sv.values[i] = detail::clamped_sqrt(s(i, i));
    for (int i = 0; i < d; ++i) // insertion sort, descending
        for (int j = i; j > 0 && sv.values[j] > sv.values[j - 1]; --j)
            std::swap(sv.values[j], sv.values[j - 1]);
    return sv;
}

/// Spectral norm ||M|| = largest singular value.
inline double operator_norm(const Mat& m) { return singular_values(m).max(); }

/// Full SVD. The left singular vectors (columns of U) are the ellipsoid axis
/// directions of M(B(0,1)). Requires all singular values strictly positive.
inline Svd svd(const Mat& m) {
    if (!m.finite()) throw invalid_input("svd: matrix has non-finite entries");
    const int d = m.dim();
    Svd out{Mat(d), {}, Mat(d)};

    Mat s = m.transposed() * m;
    Mat v(d);
    detail::jacobi_symmetric(s, v);

    std::array<int, kMaxDim> order{};
    for (int i = 0; i < d; ++i) order[i] = i;
    for (int i = 0; i < d; ++i)
        for (int j = i; j > 0 && s(order[j], order[j]) > s(order[j - 1], order[j - 1]); --j)
            std::swap(order[j], order[j - 1]);

    out.sigma.dim = d;
    for (int i = 0; i < d; ++i) {
        const double sig = detail::clamped_sqrt(s(order[i], order[i]));
        if (sig <= 0.0) throw invalid_input("svd: matrix is numerically singular");
        out.sigma.values[i] = sig;
        out.v.set_col(i, v.col(order[i]));
        Vec ui = m * v.col(order[i]);
        out.u.set_col(i, ui * (1.0 / sig));
    }
    // Columns of U inherit orthogonality from V (exactly in real arithmetic);
    // renormalize to tame round-off.
    for (int i = 0; i < d; ++i) {
        Vec ui = out.u.col(i);
        const double n = ui.norm();
        if (n > 0) out.u.set_col(i, ui * (1.0 / n));
    }
    return out;
}

} // namespace affdim

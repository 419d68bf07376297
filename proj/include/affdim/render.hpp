#pragma once

// Minimal raster output: point clouds and cover outlines drawn into an RGB
// buffer, written as binary PPM (P6). No timestamps or metadata, so renders
// from the same inputs are byte-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "affdim/covers.hpp"
#include "affdim/errors.hpp"
#include "affdim/estimators.hpp"

namespace affdim {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

class Raster {
public:
    Raster(int width, int height, Rgb background = {255, 255, 255})
        : width_(width), height_(height),
          pix_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
        if (width < 1 || height < 1 || width > 8192 || height > 8192)
            throw invalid_input("Raster: width/height must be in [1,8192]");
        for (std::size_t i = 0; i < pix_.size(); i += 3) {
            pix_[i] = background.r;
            pix_[i + 1] = background.g;
            pix_[i + 2] = background.b;
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }

    void set(int x, int y, Rgb c) {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
        const std::size_t i =
            3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x));
        pix_[i] = c.r;
        pix_[i + 1] = c.g;
        pix_[i + 2] = c.b;
    }

    Rgb get(int x, int y) const {
        const std::size_t i =
            3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x));
        return {pix_[i], pix_[i + 1], pix_[i + 2]};
    }

    /// Binary portable pixmap, P6, 8-bit channels.
    void write_ppm(std::ostream& os) const {
        os << "P6\n" << width_ << ' ' << height_ << "\n255\n";
        os.write(reinterpret_cast<const char*>(pix_.data()),
                 static_cast<std::streamsize>(pix_.size()));
    }

private:
    int width_, height_;
    std::vector<std::uint8_t> pix_;
};

/// World-to-pixel mapping: the world square is fit into the image with equal
/// scales and the y axis pointing up.
class Viewport {
public:
    Viewport(double xmin, double xmax, double ymin, double ymax, int width, int height) {
        if (!(xmax > xmin && ymax > ymin)) throw invalid_input("Viewport: empty world window");
        // expand the shorter world side so the aspect ratio is preserved
        const double sx = (xmax - xmin) / width;
        const double sy = (ymax - ymin) / height;
        scale_ = std::max(sx, sy);
        cx_ = 0.5 * (xmin + xmax);
        cy_ = 0.5 * (ymin + ymax);
        width_ = width;
        height_ = height;
    }

    static Viewport centered_ball(double radius, int width, int height) {
        return Viewport(-radius, radius, -radius, radius, width, height);
    }

    double world_per_pixel() const { return scale_; }

    /// Pixel holding the world point (may fall outside the raster).
    std::pair<int, int> to_pixel(const Vec& p) const {
        const double px = (p[0] - cx_) / scale_ + 0.5 * width_;
        const double py = 0.5 * height_ - (p[1] - cy_) / scale_;
        return {static_cast<int>(std::floor(px)), static_cast<int>(std::floor(py))};
    }

    /// World coordinates of a pixel center.
    Vec pixel_center(int x, int y) const {
        return Vec{cx_ + (x + 0.5 - 0.5 * width_) * scale_,
                   cy_ + (0.5 * height_ - y - 0.5) * scale_};
    }

private:
    double scale_ = 1, cx_ = 0, cy_ = 0;
    int width_ = 0, height_ = 0;
};

inline void render_points(Raster& img, const Viewport& vp, const PointCloud& cloud, Rgb color) {
    for (const Vec& p : cloud.points) {
        const auto [x, y] = vp.to_pixel(p);
        img.set(x, y, color);
    }
}

/// Outline of an ellipse by parametric sampling, dense enough that adjacent
/// samples land on adjacent pixels.
inline void render_ellipse_outline(Raster& img, const Viewport& vp, const Ellipse& e, Rgb color) {
    const double circumference_px =
        2 * 3.141592653589793 * e.semi_lengths[0] / vp.world_per_pixel();
    const int steps = std::max(64, static_cast<int>(4 * circumference_px));
    const Vec u = e.axes.col(0);
    const Vec v = e.axes.col(1);
    for (int i = 0; i < steps; ++i) {
        const double t = 2 * 3.141592653589793 * i / steps;
        const Vec p =
            e.center + u * (e.semi_lengths[0] * std::cos(t)) + v * (e.semi_lengths[1] * std::sin(t));
        const auto [x, y] = vp.to_pixel(p);
        img.set(x, y, color);
    }
}

} // namespace affdim

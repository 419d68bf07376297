#pragma once

// Bedford-McMullen carpets: a p-column x q-row subdivision of the unit square
// with a selected subset of cells, iterated forever. The closed-form
// Hausdorff and Minkowski dimensions below are the Bedford/McMullen values;
// both are cross-validated against the generic pipeline in the tests. The
// GridSpec constructor generalizes the subdivision to arbitrary column widths
// and row heights (no closed-form dimensions there, only the constructor).
//
// Specs are canonicalized to q >= p, so rectangles are wider than tall and
// columns are the coarse direction; a transposed input is flipped and the
// flip recorded.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "affdim/errors.hpp"
#include "affdim/ifs.hpp"

namespace affdim {

struct CarpetSpec {
    int p = 2;                              // columns
    int q = 2;                              // rows, q >= p
    std::vector<std::pair<int, int>> cells; // (column j, row i), 0-based
    bool transposed = false;                // input arrived as p > q and was flipped

    static CarpetSpec make(int p, int q, std::vector<std::pair<int, int>> cells) {
        if (p < 2 || q < 2) throw invalid_input("CarpetSpec: need p >= 2 and q >= 2");
        if (cells.empty()) throw invalid_input("CarpetSpec: no cells selected");
        CarpetSpec spec;
        spec.transposed = q < p;
        if (spec.transposed) {
            std::swap(p, q);
            for (auto& [j, i] : cells) std::swap(j, i);
        }
        for (const auto& [j, i] : cells)
            if (j < 0 || j >= p || i < 0 || i >= q)
                throw invalid_input("CarpetSpec: cell (" + std::to_string(j) + "," +
                                    std::to_string(i) + ") out of range");
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        spec.p = p;
        spec.q = q;
        spec.cells = std::move(cells);
        return spec;
    }

    int cell_count() const { return static_cast<int>(cells.size()); }

    /// Number of columns holding at least one selected cell.
    int occupied_columns() const {
        std::set<int> cols;
        for (const auto& [j, i] : cells) cols.insert(j);
        return static_cast<int>(cols.size());
    }

    /// Selected-cell count per column, non-empty columns only.
    std::vector<int> column_counts() const {
        std::vector<int> t(static_cast<std::size_t>(p), 0);
        for (const auto& [j, i] : cells) ++t[static_cast<std::size_t>(j)];
        std::vector<int> out;
        for (int c : t)
            if (c > 0) out.push_back(c);
        return out;
    }
};

/// One map per selected cell: x -> diag(1/p, 1/q) x + (j/p, i/q). The
/// attractor is the carpet inside the unit square.
inline Ifs carpet_to_ifs(const CarpetSpec& spec) {
    const double w = 1.0 / spec.p;
    const double h = 1.0 / spec.q;
    std::vector<AffineMap> maps;
    maps.reserve(spec.cells.size());
    for (const auto& [j, i] : spec.cells)
        maps.push_back({Mat::diagonal({w, h}), Vec{j * w, i * h}});
    return Ifs(std::move(maps), 2);
}

/// Minkowski (box-counting) dimension: log c / log p + log(N/c) / log q with
/// N selected cells in c non-empty columns.
inline double carpet_box_dimension(const CarpetSpec& spec) {
    const double n = spec.cell_count();
    const double c = spec.occupied_columns();
    return std::log(c) / std::log(static_cast<double>(spec.p)) +
           std::log(n / c) / std::log(static_cast<double>(spec.q));
}

/// Hausdorff dimension: log_p( sum_j t_j^(log_q p) ) over the non-empty
/// columns, t_j the cells in column j.
inline double carpet_hausdorff_dimension(const CarpetSpec& spec) {
    const double gamma = std::log(static_cast<double>(spec.p)) /
                         std::log(static_cast<double>(spec.q));
    double sum = 0;
    for (int t : spec.column_counts()) sum += std::pow(static_cast<double>(t), gamma);
    return std::log(sum) / std::log(static_cast<double>(spec.p));
}

/// ASCII sketch of the selection, top row first.
inline std::string carpet_ascii(const CarpetSpec& spec) {
    std::vector<std::string> rows(static_cast<std::size_t>(spec.q),
                                  std::string(static_cast<std::size_t>(spec.p), '.'));
    for (const auto& [j, i] : spec.cells)
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = '#';
    std::string out;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        out += *it;
        out += '\n';
    }
    return out;
}

/// Baranski-style generalization: any subdivision by finitely many vertical
/// and horizontal lines, cells selected from the resulting rectangles.
struct GridSpec {
    std::vector<double> widths;             // positive, sum to 1, >= 2 entries
    std::vector<double> heights;            // positive, sum to 1, >= 2 entries
    std::vector<std::pair<int, int>> cells; // (column j, row i)

    static GridSpec make(std::vector<double> widths, std::vector<double> heights,
                         std::vector<std::pair<int, int>> cells) {
        const auto check_partition = [](const std::vector<double>& xs, const char* what) {
            if (xs.size() < 2)
                throw invalid_input(std::string("GridSpec: need at least 2 ") + what);
            double sum = 0;
            for (double x : xs) {
                if (!(x > 0.0)) throw invalid_input(std::string("GridSpec: non-positive ") + what);
                sum += x;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw invalid_input(std::string("GridSpec: ") + what + " must sum to 1");
        };
        check_partition(widths, "widths");
        check_partition(heights, "heights");
        if (cells.empty()) throw invalid_input("GridSpec: no cells selected");
        for (const auto& [j, i] : cells)
            if (j < 0 || j >= static_cast<int>(widths.size()) || i < 0 ||
                i >= static_cast<int>(heights.size()))
                throw invalid_input("GridSpec: cell out of range");
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        return GridSpec{std::move(widths), std::move(heights), std::move(cells)};
    }
};

/// One map per selected cell, A = diag(width_j, height_i), translating the
/// unit square onto the cell.
inline Ifs grid_to_ifs(const GridSpec& spec) {
    std::vector<double> x_off(spec.widths.size() + 1, 0.0);
    for (std::size_t j = 0; j < spec.widths.size(); ++j) x_off[j + 1] = x_off[j] + spec.widths[j];
    std::vector<double> y_off(spec.heights.size() + 1, 0.0);
    for (std::size_t i = 0; i < spec.heights.size(); ++i)
        y_off[i + 1] = y_off[i] + spec.heights[i];

    std::vector<AffineMap> maps;
    maps.reserve(spec.cells.size());
    for (const auto& [j, i] : spec.cells) {
        const auto ju = static_cast<std::size_t>(j);
        const auto iu = static_cast<std::size_t>(i);
        maps.push_back({Mat::diagonal({spec.widths[ju], spec.heights[iu]}),
                        Vec{x_off[ju], y_off[iu]}});
    }
    return Ifs(std::move(maps), 2);
}

} // namespace affdim

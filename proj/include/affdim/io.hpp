#pragma once

// File formats. IFS definitions and carpet specs are JSON; point clouds,
// covers, box-count series and pressure curves export as CSV. Formats are
// fixed so outputs are reproducible byte for byte given the same inputs.
//
//   IFS JSON:    {"d": 2, "maps": [{"A": [[...],[...]], "a": [...]}, ...]}
//   carpet JSON: {"p": 2, "q": 3, "cells": [[j, i], ...]}

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "affdim/carpets.hpp"
#include "affdim/conditions.hpp"
#include "affdim/covers.hpp"
#include "affdim/dimension.hpp"
#include "affdim/errors.hpp"
#include "affdim/estimators.hpp"
#include "affdim/ifs.hpp"

namespace affdim {

namespace detail {

inline nlohmann::json parse_json_text(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.what() carries the position (line/column and byte) of the defect
        throw invalid_input(std::string(what) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

inline Ifs parse_ifs_json(const std::string& text) {
    const nlohmann::json j = detail::parse_json_text(text, "IFS definition");
    if (!j.is_object() || !j.contains("d") || !j.contains("maps"))
        throw invalid_input("IFS definition: expected an object with fields \"d\" and \"maps\"");
    const int d = j.at("d").get<int>();
    if (d < kMinDim || d > kMaxDim)
        throw invalid_input("IFS definition: \"d\" must be in [2,4]");
    if (!j.at("maps").is_array() || j.at("maps").empty())
        throw invalid_input("IFS definition: \"maps\" must be a non-empty array");

    std::vector<AffineMap> maps;
    int index = 0;
    for (const auto& jm : j.at("maps")) {
        const std::string where = "maps[" + std::to_string(index) + "]";
        if (!jm.is_object() || !jm.contains("A") || !jm.contains("a"))
            throw invalid_input("IFS definition: " + where + " needs fields \"A\" and \"a\"");
        const auto& ja = jm.at("A");
        if (!ja.is_array() || static_cast<int>(ja.size()) != d)
            throw invalid_input("IFS definition: " + where + ".A must be a " +
                                std::to_string(d) + "x" + std::to_string(d) + " array");
        Mat m(d);
        for (int r = 0; r < d; ++r) {
            if (!ja[static_cast<std::size_t>(r)].is_array() ||
                static_cast<int>(ja[static_cast<std::size_t>(r)].size()) != d)
                throw invalid_input("IFS definition: " + where + ".A row " + std::to_string(r) +
                                    " must have " + std::to_string(d) + " entries");
            for (int c = 0; c < d; ++c)
                m(r, c) = ja[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
                              .get<double>();
        }
        const auto& jt = jm.at("a");
        if (!jt.is_array() || static_cast<int>(jt.size()) != d)
            throw invalid_input("IFS definition: " + where + ".a must have " + std::to_string(d) +
                                " entries");
        Vec t(d);
        for (int c = 0; c < d; ++c) t[c] = jt[static_cast<std::size_t>(c)].get<double>();
        maps.push_back({m, t});
        ++index;
    }
    return Ifs(std::move(maps), d);
}

inline Ifs load_ifs_json(const std::string& path) {
    return parse_ifs_json(detail::read_file(path));
}

inline std::string ifs_to_json(const Ifs& ifs) {
    nlohmann::json j;
    j["d"] = ifs.dim();
    j["maps"] = nlohmann::json::array();
    for (int i = 0; i < ifs.size(); ++i) {
        nlohmann::json jm;
        auto rows = nlohmann::json::array();
        for (int r = 0; r < ifs.dim(); ++r) {
            auto row = nlohmann::json::array();
            for (int c = 0; c < ifs.dim(); ++c) row.push_back(ifs.map(i).linear(r, c));
            rows.push_back(row);
        }
        jm["A"] = rows;
        auto tr = nlohmann::json::array();
        for (int c = 0; c < ifs.dim(); ++c) tr.push_back(ifs.map(i).translation[c]);
        jm["a"] = tr;
        j["maps"].push_back(jm);
    }
    return j.dump(2) + "\n";
}

inline CarpetSpec parse_carpet_json(const std::string& text) {
    const nlohmann::json j = detail::parse_json_text(text, "carpet definition");
    if (!j.is_object() || !j.contains("p") || !j.contains("q") || !j.contains("cells"))
        throw invalid_input(
            "carpet definition: expected an object with fields \"p\", \"q\" and \"cells\"");
    std::vector<std::pair<int, int>> cells;
    if (!j.at("cells").is_array())
        throw invalid_input("carpet definition: \"cells\" must be an array of [column,row] pairs");
    for (const auto& jc : j.at("cells")) {
        if (!jc.is_array() || jc.size() != 2)
            throw invalid_input("carpet definition: each cell must be a [column,row] pair");
        cells.emplace_back(jc[0].get<int>(), jc[1].get<int>());
    }
    return CarpetSpec::make(j.at("p").get<int>(), j.at("q").get<int>(), std::move(cells));
}

inline CarpetSpec load_carpet_json(const std::string& path) {
    return parse_carpet_json(detail::read_file(path));
}

// ---- CSV ----

namespace detail {
inline void csv_number(std::ostream& os, double x) {
    os << std::setprecision(17) << x;
}
} // namespace detail

/// One row per ellipse: center, semi-lengths, major-axis angle (d = 2).
inline void write_cover_csv(std::ostream& os, const std::vector<Ellipse>& cover) {
    os << "cx,cy,len1,len2,angle\n";
    for (const Ellipse& e : cover) {
        detail::csv_number(os, e.center[0]);
        os << ',';
        detail::csv_number(os, e.center[1]);
        os << ',';
        detail::csv_number(os, e.semi_lengths[0]);
        os << ',';
        detail::csv_number(os, e.semi_lengths[1]);
        os << ',';
        detail::csv_number(os, e.angle());
        os << '\n';
    }
}

/// Ball covers use the same columns with len1 = len2 = r and angle 0.
inline void write_balls_csv(std::ostream& os, const std::vector<Vec>& centers, double r) {
    os << "cx,cy,len1,len2,angle\n";
    for (const Vec& c : centers) {
        detail::csv_number(os, c[0]);
        os << ',';
        detail::csv_number(os, c[1]);
        os << ',';
        detail::csv_number(os, r);
        os << ',';
        detail::csv_number(os, r);
        os << ",0\n";
    }
}

inline void write_points_csv(std::ostream& os, const PointCloud& cloud) {
    if (cloud.points.empty()) return;
    const int d = cloud.points.front().dim();
    os << (d == 2 ? "x,y" : (d == 3 ? "x,y,z" : "x,y,z,w")) << '\n';
    for (const Vec& p : cloud.points) {
        for (int j = 0; j < d; ++j) {
            if (j) os << ',';
            detail::csv_number(os, p[j]);
        }
        os << '\n';
    }
}

inline void write_boxcount_csv(std::ostream& os, const BoxCountSeries& series,
                               const BoxDimFit& fit) {
    os << "delta,count\n";
    for (std::size_t i = 0; i < series.scales.size(); ++i) {
        detail::csv_number(os, series.scales[i]);
        os << ',' << series.counts[i] << '\n';
    }
    os << "# slope=";
    detail::csv_number(os, fit.slope);
    os << " intercept=";
    detail::csv_number(os, fit.intercept);
    os << " max_residual=";
    detail::csv_number(os, fit.max_residual);
    os << '\n';
}

inline void write_pressure_csv(std::ostream& os, const PressureCurve& curve) {
    os << "# n=" << curve.depth << " zero=";
    detail::csv_number(os, curve.zero);
    if (curve.clamped_at_upper) os << " clamped_at_upper=1";
    if (curve.exceeds_ambient_dim) os << " exceeds_ambient_dim=1";
    os << "\ns,P\n";
    for (const auto& [s, p] : curve.samples) {
        detail::csv_number(os, s);
        os << ',';
        detail::csv_number(os, p);
        os << '\n';
    }
}

// ---- reports ----

inline nlohmann::json condition_report_json(const ConditionReport& rep) {
    nlohmann::json j;
    j["title"] = rep.title;
    j["verdict"] = to_string(rep.verdict);
    if (!rep.caveat.empty()) j["caveat"] = rep.caveat;
    j["findings"] = nlohmann::json::array();
    for (const Finding& f : rep.findings) {
        nlohmann::json jf;
        jf["check"] = f.check;
        jf["map"] = f.map_a;
        if (f.map_b >= 0) jf["other_map"] = f.map_b;
        jf["margin"] = f.margin;
        jf["ok"] = f.ok;
        if (!f.note.empty()) jf["note"] = f.note;
        j["findings"].push_back(jf);
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write file: " + path);
    out << content;
}

} // namespace affdim

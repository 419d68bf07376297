// affdim: dimensions of self-affine sets from the command line.
//
// Subcommands mirror the library modules: `dims` aggregates every dimension
// notion for a system, `points`/`render` sample and draw attractors, `cover`
// exports stopping-set ellipse covers, `check` runs the sufficient-condition
// checkers, `carpet` reports the closed-form carpet values. All randomness
// flows from --seed (default 0), so identical invocations give identical
// outputs, including raster files.
//
// Exit codes: 0 success or condition pass, 1 usage/parse/unsupported,
// 2 condition fail, 3 inconclusive, 4 enumeration budget exceeded.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affdim/affdim.hpp"

namespace {

using namespace affdim;

struct InputFlags {
    std::string ifs_path;
    std::string carpet_path;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
    auto* a = cmd->add_option("--ifs", in.ifs_path, "IFS definition (JSON)");
    auto* b = cmd->add_option("--carpet", in.carpet_path, "carpet spec (JSON)");
    a->excludes(b);
}

struct LoadedSystem {
    Ifs ifs;
    std::optional<CarpetSpec> carpet;
    std::string source;
};

LoadedSystem load_system(const InputFlags& in) {
    if (!in.carpet_path.empty()) {
        CarpetSpec spec = load_carpet_json(in.carpet_path);
        return {carpet_to_ifs(spec), spec, in.carpet_path};
    }
    if (!in.ifs_path.empty()) return {load_ifs_json(in.ifs_path), std::nullopt, in.ifs_path};
    throw CLI::ValidationError("input", "one of --ifs or --carpet is required");
}

std::pair<int, int> parse_scale_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw invalid_input("--scales expects dyadic exponents j0..j1, e.g. 3..8");
    const int j0 = std::stoi(text.substr(0, pos));
    const int j1 = std::stoi(text.substr(pos + 2));
    if (j0 > j1 || j0 < 0 || j1 > 40)
        throw invalid_input("--scales range must satisfy 0 <= j0 <= j1 <= 40");
    return {j0, j1};
}

Rect parse_rect(const std::string& text) {
    Rect r;
    char c1, c2, c3;
    std::istringstream is(text);
    if (!(is >> r.x0 >> c1 >> r.y0 >> c2 >> r.x1 >> c3 >> r.y1) || c1 != ',' || c2 != ',' ||
        c3 != ',')
        throw invalid_input("--rect expects x0,y0,x1,y1");
    return r;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_file(out_path, content);
    }
}

std::string describe_system(const LoadedSystem& sys, std::uint64_t seed) {
    std::ostringstream os;
    os << "input: " << sys.source << (sys.carpet ? " (carpet)" : " (ifs)") << ", k = "
       << sys.ifs.size() << ", d = " << sys.ifs.dim() << ", seed = " << seed << "\n";
    const ValidationReport rep = validate_ifs(sys.ifs);
    os << "maps:\n";
    for (const MapDiagnostics& m : rep.maps)
        os << "  " << m.index << ": |A| = " << std::setprecision(10) << m.norm
           << ", det = " << m.det << (m.contractive && m.invertible ? "" : "  ** invalid **")
           << "\n";
    return os.str();
}

// ---- dims ----

int cmd_dims(const LoadedSystem& sys, const std::vector<int>& depths, int n_points,
             std::uint64_t seed, std::pair<int, int> scales, double tol,
             const std::string& out_path, const std::string& pressure_out,
             const std::string& boxes_out) {
    require_valid(sys.ifs, "dims");
    std::ostringstream os;
    os << std::setprecision(10);
    os << "affdim dims report\n" << describe_system(sys, seed);
    os << "points = " << n_points << ", scales = 2^-" << scales.first << "..2^-" << scales.second
       << ", depths =";
    for (int n : depths) os << ' ' << n;
    os << ", tol = " << tol << "\n\n";

    const double sim = similarity_dimension(contraction_ratios(sys.ifs));
    os << "similarity dimension of the norms:  " << sim << "\n";

    double aff_last = 0;
    for (int n : depths) {
        const PressureCurve c = affinity_dimension(sys.ifs, n, tol);
        aff_last = c.zero;
        os << "affinity dimension s_" << n << ":             " << c.zero;
        if (c.clamped_at_upper) os << "  (clamped at 2d: pressure positive on [0,2d])";
        if (c.exceeds_ambient_dim) os << "  (exceeds ambient dimension)";
        os << "\n";
        if (!pressure_out.empty() && n == depths.back()) {
            std::ostringstream curve;
            write_pressure_csv(curve, c);
            write_text_file(pressure_out, curve.str());
        }
    }

    const PointCloud cloud = chaos_game(sys.ifs, n_points, seed);
    const BoxCountSeries series = box_count(cloud, dyadic_scales(scales.first, scales.second));
    const BoxDimFit fit = boxdim_estimate(series);
    if (!boxes_out.empty()) {
        std::ostringstream bs;
        write_boxcount_csv(bs, series, fit);
        write_text_file(boxes_out, bs.str());
    }
    os << "box-count estimate:                 " << fit.slope << "  (max residual "
       << std::setprecision(3) << fit.max_residual << std::setprecision(10) << ")\n";
    if (static_cast<double>(series.counts.back()) > 0.5 * n_points)
        os << "warning: N(delta_min) exceeds half the sample size; the finest scale is "
              "under-resolved and biases the slope down\n";

    if (sys.carpet) {
        const double ch = carpet_hausdorff_dimension(*sys.carpet);
        const double cb = carpet_box_dimension(*sys.carpet);
        os << "carpet closed forms:                hausdorff " << ch << ", box " << cb << "\n";
        os << "chain: hausdorff " << ch << " <= box " << cb << " <= affinity " << aff_last
           << "  [" << (ch <= cb + 1e-12 && cb <= aff_last + 1e-9 ? "holds" : "VIOLATED")
           << "]\n";
    }
    os << "chain: box estimate " << fit.slope << " <= affinity " << aff_last << " ["
       << (fit.slope <= aff_last + 0.1 ? "holds (within estimator slack 0.1)"
                                       : "exceeded: estimator above the upper bound")
       << "]\n";

    emit(out_path, os.str());
    return 0;
}

// ---- points ----

int cmd_points(const LoadedSystem& sys, int n_points, int depth, double sigma,
               std::uint64_t seed, const std::string& out_path) {
    PointCloud cloud;
    if (depth >= 0) {
        cloud = (sigma > 0.0) ? randomized_attractor(sys.ifs, depth, sigma, seed)
                              : deterministic_points(sys.ifs, depth);
    } else {
        cloud = chaos_game(sys.ifs, n_points, seed);
    }
    std::ostringstream os;
    write_points_csv(os, cloud);
    emit(out_path, os.str());
    return 0;
}

// ---- cover ----

int cmd_cover(const LoadedSystem& sys, double delta, double ball_radius,
              const std::string& out_path) {
    const double R = bounding_radius(sys.ifs);
    const StoppingSet z = stopping_set(sys.ifs, delta);
    const std::vector<Ellipse> cover = cylinder_cover(sys.ifs, z.words, R);
    std::ostringstream os;
    if (ball_radius > 0.0) {
        std::vector<Vec> centers;
        for (const Ellipse& e : cover) {
            const std::vector<Vec> balls = ball_cover_from_ellipse(e, ball_radius);
            centers.insert(centers.end(), balls.begin(), balls.end());
        }
        write_balls_csv(os, centers, ball_radius);
    } else {
        write_cover_csv(os, cover);
    }
    emit(out_path, os.str());
    std::cerr << "Z(" << delta << "): " << z.words.size() << " words, R = " << R << "\n";
    return 0;
}

// ---- render ----

int cmd_render(const LoadedSystem& sys, int width, int height, int n_points, std::uint64_t seed,
               double cover_delta, const std::string& out_path) {
    require_valid(sys.ifs, "render");
    if (sys.ifs.dim() != 2) throw unsupported_dimension("render: only d = 2 is supported");

    const double R = bounding_radius(sys.ifs);
    Raster img(width, height);
    const Viewport vp = Viewport::centered_ball(1.05 * R, width, height);

    render_points(img, vp, chaos_game(sys.ifs, n_points, seed), Rgb{20, 20, 20});
    if (cover_delta > 0.0) {
        const StoppingSet z = stopping_set(sys.ifs, cover_delta);
        for (const Ellipse& e : cylinder_cover(sys.ifs, z.words, R))
            render_ellipse_outline(img, vp, e, Rgb{200, 40, 40});
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw invalid_input("cannot write raster to " + out_path);
    img.write_ppm(out);
    return 0;
}

// ---- check ----

int cmd_check(const LoadedSystem& sys, bool osc, bool hueter_lalley, const std::string& rect_text,
              bool as_json) {
    if (osc == hueter_lalley)
        throw CLI::ValidationError("check", "pick exactly one of --osc or --hueter-lalley");

    const ConditionReport rep = osc ? check_osc_rectangle(sys.ifs, parse_rect(rect_text))
                                    : check_hueter_lalley(sys.ifs);
    if (as_json) {
        std::cout << condition_report_json(rep).dump(2) << "\n";
    } else {
        std::cout << rep.to_text();
    }
    switch (rep.verdict) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 2;
    default: return 3;
    }
}

// ---- carpet ----

int cmd_carpet(const std::string& carpet_path, const std::string& ifs_out) {
    const CarpetSpec spec = load_carpet_json(carpet_path);
    std::ostringstream os;
    os << std::setprecision(10);
    os << "carpet " << carpet_path << ": p = " << spec.p << " columns, q = " << spec.q
       << " rows, " << spec.cell_count() << " cells"
       << (spec.transposed ? " (input transposed to the canonical q >= p orientation)" : "")
       << "\n";
    os << carpet_ascii(spec);
    os << "hausdorff dimension: " << carpet_hausdorff_dimension(spec) << "\n";
    os << "box dimension:       " << carpet_box_dimension(spec) << "\n";
    os << "affinity dimension:  " << affinity_dimension(carpet_to_ifs(spec), 4).zero << "\n";
    std::cout << os.str();
    if (!ifs_out.empty()) write_text_file(ifs_out, ifs_to_json(carpet_to_ifs(spec)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimensions of self-affine sets: similarity, affinity (singular), "
                 "box-counting; covers, samplers, condition checkers"};
    app.require_subcommand(1);

    // dims
    auto* dims = app.add_subcommand("dims", "dimension report for a system");
    InputFlags dims_in;
    add_input_flags(dims, dims_in);
    std::vector<int> depths{1, 2, 4};
    int dims_points = 100000;
    std::uint64_t dims_seed = 0;
    std::string dims_scales = "3..8", dims_out, dims_pressure_out, dims_boxes_out;
    double dims_tol = 1e-10;
    dims->add_option("--depths", depths, "pressure depths n for s_n");
    dims->add_option("--points", dims_points, "chaos-game sample size")->check(CLI::PositiveNumber);
    dims->add_option("--seed", dims_seed, "random seed");
    dims->add_option("--scales", dims_scales, "dyadic box scales j0..j1 (delta = 2^-j)");
    dims->add_option("--tol", dims_tol, "bisection tolerance for the pressure zero");
    dims->add_option("--out", dims_out, "write the report to a file");
    dims->add_option("--pressure-out", dims_pressure_out,
                     "export the deepest pressure curve as CSV");
    dims->add_option("--boxes-out", dims_boxes_out, "export the box-count series as CSV");

    // points
    auto* points = app.add_subcommand("points", "sample attractor points to CSV");
    InputFlags pts_in;
    add_input_flags(points, pts_in);
    int pts_points = 100000, pts_depth = -1;
    double pts_sigma = 0.0;
    std::uint64_t pts_seed = 0;
    std::string pts_out;
    points->add_option("--points", pts_points, "chaos-game sample size")
        ->check(CLI::PositiveNumber);
    points->add_option("--depth", pts_depth, "deterministic expansion depth (all k^n words)");
    points->add_option("--sigma", pts_sigma,
                       "uniform translation noise half-width (with --depth)");
    points->add_option("--seed", pts_seed, "random seed");
    points->add_option("--out", pts_out, "output CSV path (stdout when omitted)");

    // cover
    auto* cover = app.add_subcommand("cover", "export the Z(delta) ellipse cover as CSV");
    InputFlags cover_in;
    add_input_flags(cover, cover_in);
    double cover_delta = 0.1, cover_balls = 0.0;
    std::string cover_out;
    cover->add_option("--delta", cover_delta, "stopping-set threshold in (0,1)")->required();
    cover->add_option("--balls", cover_balls,
                      "refine each ellipse into balls of this radius (d = 2)");
    cover->add_option("--out", cover_out, "output CSV path (stdout when omitted)");

    // render
    auto* render = app.add_subcommand("render", "rasterize a chaos-game cloud to a P6 pixmap");
    InputFlags render_in;
    add_input_flags(render, render_in);
    int render_w = 512, render_h = 512, render_points_n = 200000;
    std::uint64_t render_seed = 0;
    double render_cover = 0.0;
    std::string render_out;
    render->add_option("--width", render_w)->check(CLI::Range(1, 8192));
    render->add_option("--height", render_h)->check(CLI::Range(1, 8192));
    render->add_option("--points", render_points_n, "chaos-game sample size")
        ->check(CLI::PositiveNumber);
    render->add_option("--seed", render_seed, "random seed");
    render->add_option("--cover-delta", render_cover,
                       "overlay the Z(delta) ellipse outlines");
    render->add_option("--out", render_out, "output PPM path")->required();

    // check
    auto* check = app.add_subcommand("check", "run a sufficient-condition checker");
    InputFlags check_in;
    add_input_flags(check, check_in);
    bool check_osc = false, check_hl = false, check_json = false;
    std::string check_rect = "0,0,1,1";
    check->add_flag("--osc", check_osc, "open set condition on a candidate rectangle");
    check->add_flag("--hueter-lalley", check_hl, "Hueter-Lalley hypotheses");
    check->add_option("--rect", check_rect, "candidate open rectangle x0,y0,x1,y1");
    check->add_flag("--json", check_json, "machine-readable report");

    // carpet
    auto* carpet = app.add_subcommand("carpet", "closed-form carpet dimensions and sketch");
    std::string carpet_path, carpet_ifs_out;
    carpet->add_option("--carpet", carpet_path, "carpet spec (JSON)")->required();
    carpet->add_option("--ifs-out", carpet_ifs_out, "also write the induced IFS JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dims->parsed())
            return cmd_dims(load_system(dims_in), depths, dims_points, dims_seed,
                            parse_scale_range(dims_scales), dims_tol, dims_out,
                            dims_pressure_out, dims_boxes_out);
        if (points->parsed())
            return cmd_points(load_system(pts_in), pts_points, pts_depth, pts_sigma, pts_seed,
                              pts_out);
        if (cover->parsed())
            return cmd_cover(load_system(cover_in), cover_delta, cover_balls, cover_out);
        if (render->parsed())
            return cmd_render(load_system(render_in), render_w, render_h, render_points_n,
                              render_seed, render_cover, render_out);
        if (check->parsed())
            return cmd_check(load_system(check_in), check_osc, check_hl, check_rect, check_json);
        if (carpet->parsed()) return cmd_carpet(carpet_path, carpet_ifs_out);
    } catch (const resource_limit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const unsupported_dimension& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

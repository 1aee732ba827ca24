// Batch front end: each subcommand computes one artifact and writes it to a
// single file (or standard output where noted).
//
// Exit codes: 0 success, 2 usage error, 1 computation or I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcdyn/errors.hpp"
#include "qcdyn/escape_render.hpp"
#include "qcdyn/fixed_points.hpp"
#include "qcdyn/format.hpp"
#include "qcdyn/hopf.hpp"
#include "qcdyn/orbits.hpp"

using namespace qcdyn;

namespace {

// Raised for invalid flag combinations found after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& text) {
    std::istringstream is(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw UsageError("expected a complex number \"re,im\", got \"" + text + "\"");
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) throw UsageError("expected a complex number \"re,im\", got \"" + text + "\"");
    }
    std::string rest;
    if (is >> rest) throw UsageError("trailing characters in \"" + text + "\"");
    return {re, im};
}

std::vector<int> parse_word(const std::string& text) {
    std::vector<int> word;
    for (char ch : text) {
        if (ch == ',' || ch == ' ') continue;
        if (ch != '0' && ch != '1') throw UsageError("branch word must contain only 0 and 1");
        word.push_back(ch - '0');
    }
    return word;
}

MapParams checked_params(double alpha, const std::string& c) {
    MapParams p{alpha, parse_complex(c)};
    try {
        validate(p);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return p;
}

// Writes through a temporary buffer so a failed computation leaves no file.
void emit(const std::string& path, bool binary, const std::function<void(std::ostream&)>& body) {
    std::ostringstream buf(binary ? std::ios::out | std::ios::binary : std::ios::out);
    body(buf);
    if (path.empty() || path == "-") {
        std::cout << buf.str();
        std::cout.flush();
        return;
    }
    std::ofstream out(path, binary ? std::ios::out | std::ios::binary | std::ios::trunc : std::ios::out | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << buf.str();
    if (!out) throw std::runtime_error("failed writing " + path);
}

struct GridFlags {
    std::string center = "0,0";
    double width = 4.0;
    double height = 0.0;  // 0: keep pixels square
    int nx = 512;
    int ny = 512;
    int max_iter = 0;      // 0: per-subcommand default
    std::string mode = "escape";
    std::string format = "pgm";

    void add_to(CLI::App* app) {
        app->add_option("--center", center, "grid centre as re,im")->capture_default_str();
        app->add_option("--width", width, "grid width")->capture_default_str();
        app->add_option("--height", height, "grid height (default width*ny/nx)");
        app->add_option("--nx", nx, "pixels across")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--ny", ny, "pixels down")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
        app->add_option("--mode", mode, "escape or attractor")
            ->capture_default_str()
            ->check(CLI::IsMember({"escape", "attractor"}));
        app->add_option("--format", format, "pgm or csv")->capture_default_str()->check(CLI::IsMember({"pgm", "csv"}));
    }

    GridSpec grid() const {
        GridSpec g{parse_complex(center), width, height > 0.0 ? height : width * ny / nx, nx, ny};
        try {
            validate(g);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        return g;
    }

    DetectMode detect() const { return mode == "attractor" ? DetectMode::AttractorDetect : DetectMode::EscapeOnly; }
};

void write_raster(const std::string& path, const std::string& format, const Raster& r) {
    if (format == "csv")
        emit(path, false, [&](std::ostream& os) { write_csv(os, r); });
    else
        emit(path, true, [&](std::ostream& os) { write_pgm(os, r); });
}

CurveKind parse_curve(const std::string& name) {
    if (name == "delta") return CurveKind::Delta;
    if (name == "gamma-plus") return CurveKind::GammaPlus;
    return CurveKind::GammaMinus;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Escape-time renders, fixed-point atlas, Hopf numbers and orbits for f(z) = |z|^{2a-2} z^2 + c"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expand help for every subcommand");

    double alpha = 1.0;
    std::string c_text = "0,0";
    std::string out_path;

    // julia
    GridFlags julia_grid;
    auto* julia = app.add_subcommand("julia", "render the filled Julia set K(alpha, c)");
    julia->add_option("--alpha", alpha, "exponent alpha > 1/2")->required();
    julia->add_option("--c", c_text, "parameter c as re,im")->required();
    julia_grid.add_to(julia);
    julia->add_option("-o,--output", out_path, "output file")->required();

    // locus
    GridFlags locus_grid;
    auto* locus = app.add_subcommand("locus", "render the connectedness locus in the c-plane");
    locus->add_option("--alpha", alpha, "exponent alpha > 1/2")->required();
    locus_grid.add_to(locus);
    locus->add_option("-o,--output", out_path, "output file")->required();

    // fixed-points
    std::string fp_format = "csv";
    auto* fixed = app.add_subcommand("fixed-points", "list the fixed points of f with eigenvalues and classes");
    fixed->add_option("--alpha", alpha, "exponent alpha > 1/2")->required();
    fixed->add_option("--c", c_text, "parameter c as re,im")->required();
    fixed->add_option("--format", fp_format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    fixed->add_option("-o,--output", out_path, "output file (default standard output)");

    // curves
    std::string curve_name = "delta";
    int curve_n = 512;
    bool curve_image = false, curve_cusps = false;
    auto* curves = app.add_subcommand("curves", "sample delta / gamma+ / gamma- or their images under p");
    curves->add_option("--alpha", alpha, "exponent alpha > 1/2")->required();
    curves->add_option("--curve", curve_name, "delta, gamma-plus or gamma-minus")
        ->capture_default_str()
        ->check(CLI::IsMember({"delta", "gamma-plus", "gamma-minus"}));
    curves->add_option("--n", curve_n, "number of samples")->capture_default_str()->check(CLI::Range(16, 10000000));
    curves->add_flag("--image", curve_image, "map the samples through p (parameter plane)");
    curves->add_flag("--cusps", curve_cusps, "output the cusps of the image instead of the curve");
    curves->add_option("-o,--output", out_path, "output file (default standard output)");

    // hopf
    std::vector<double> hopf_alphas;
    double hopf_theta = 0.0;
    int hopf_grid = 0;
    auto* hopf = app.add_subcommand("hopf", "Hopf numbers Re v on the Hopf circle");
    hopf->add_option("--alpha", hopf_alphas, "one or more exponents alpha > 1/2")->required();
    auto* theta_opt = hopf->add_option("--theta", hopf_theta, "single angle theta");
    auto* grid_opt = hopf->add_option("--theta-grid", hopf_grid, "N angles pi (k + 1/2) / N")->check(CLI::PositiveNumber);
    theta_opt->excludes(grid_opt);
    hopf->add_option("-o,--output", out_path, "output file (default standard output)");

    // orbit
    std::string orbit_kind = "critical";
    int orbit_n = 100, orbit_q = 1;
    std::string orbit_seed = "0,0";
    auto* orbit = app.add_subcommand("orbit", "critical orbit or a periodic orbit by Newton");
    orbit->add_option("--alpha", alpha, "exponent alpha > 1/2")->required();
    orbit->add_option("--c", c_text, "parameter c as re,im")->required();
    orbit->add_option("--kind", orbit_kind, "critical or periodic")
        ->capture_default_str()
        ->check(CLI::IsMember({"critical", "periodic"}));
    orbit->add_option("--n", orbit_n, "critical orbit length")->capture_default_str()->check(CLI::PositiveNumber);
    orbit->add_option("--period", orbit_q, "period q for Newton on f^q")->capture_default_str()->check(CLI::PositiveNumber);
    orbit->add_option("--seed", orbit_seed, "Newton seed as re,im")->capture_default_str();
    orbit->add_option("-o,--output", out_path, "output file (default standard output)");

    // leaf
    std::string leaf_center = "0,0", leaf_word;
    double leaf_radius = 1.5;
    int leaf_points = 256;
    auto* leaf = app.add_subcommand("leaf", "pull a round circle back along a word of inverse branches");
    leaf->add_option("--alpha", alpha, "exponent alpha > 1/2")->required();
    leaf->add_option("--c", c_text, "parameter c as re,im")->required();
    leaf->add_option("--circle-center", leaf_center, "centre of the initial circle")->capture_default_str();
    leaf->add_option("--radius", leaf_radius, "radius of the initial circle")->capture_default_str()->check(CLI::PositiveNumber);
    leaf->add_option("--points", leaf_points, "samples on the circle")->capture_default_str()->check(CLI::Range(2, 10000000));
    leaf->add_option("--word", leaf_word, "branch word such as 0,1,0")->required();
    leaf->add_option("-o,--output", out_path, "output file (default standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (julia->parsed()) {
            const MapParams p = checked_params(alpha, c_text);
            const int n = julia_grid.max_iter > 0 ? julia_grid.max_iter : kDefaultJuliaIterations;
            write_raster(out_path, julia_grid.format, render_julia(p, julia_grid.grid(), n, julia_grid.detect()));
        } else if (locus->parsed()) {
            checked_params(alpha, "0");
            const int n = locus_grid.max_iter > 0 ? locus_grid.max_iter : kDefaultLocusIterations;
            write_raster(out_path, locus_grid.format, render_locus(alpha, locus_grid.grid(), n, locus_grid.detect()));
        } else if (fixed->parsed()) {
            const MapParams p = checked_params(alpha, c_text);
            const FixedPointCensus census = find_fixed_points(p);
            if (census.convergence_warning)
                std::cerr << "warning: " << census.stalled_starts << " Newton starts did not converge\n";
            emit(out_path, false, [&](std::ostream& os) {
                if (fp_format == "json")
                    write_fixed_points_json(os, p, census);
                else
                    write_fixed_points_csv(os, census.points);
            });
        } else if (curves->parsed()) {
            checked_params(alpha, "0");
            const CurveKind kind = parse_curve(curve_name);
            Polyline line;
            if (curve_cusps) {
                if (kind == CurveKind::Delta) throw UsageError("--cusps applies to gamma-plus or gamma-minus");
                line.points = detect_cusps(alpha, curve_n, kind);
            } else {
                line = curve_image ? trace_curve_image(alpha, kind, curve_n) : sample_curve(alpha, kind, curve_n);
            }
            emit(out_path, false, [&](std::ostream& os) { write_polyline_csv(os, line); });
        } else if (hopf->parsed()) {
            for (double a : hopf_alphas) checked_params(a, "0");
            std::vector<double> thetas;
            if (hopf_grid > 0) {
                for (int k = 0; k < hopf_grid; ++k) thetas.push_back(std::numbers::pi * (k + 0.5) / hopf_grid);
            } else if (theta_opt->count() > 0) {
                thetas.push_back(hopf_theta);
            } else {
                throw UsageError("hopf needs --theta or --theta-grid");
            }
            const auto table = hopf_sweep(hopf_alphas, thetas);
            emit(out_path, false, [&](std::ostream& os) { write_hopf_csv(os, table); });
        } else if (orbit->parsed()) {
            const MapParams p = checked_params(alpha, c_text);
            if (orbit_kind == "critical") {
                const CriticalOrbit o = critical_orbit(p, orbit_n);
                if (o.escaped) std::cerr << "critical orbit escaped after " << o.points.size() << " steps\n";
                emit(out_path, false, [&](std::ostream& os) { write_orbit_csv(os, o.points); });
            } else {
                const PeriodicOrbit o = find_periodic_orbit(p, orbit_q, parse_complex(orbit_seed));
                emit(out_path, false, [&](std::ostream& os) { write_periodic_orbit_json(os, p, o); });
            }
        } else if (leaf->parsed()) {
            const MapParams p = checked_params(alpha, c_text);
            const std::vector<int> word = parse_word(leaf_word);
            const cplx centre = parse_complex(leaf_center);
            Polyline start;
            start.closed = true;
            for (int k = 0; k < leaf_points; ++k)
                start.points.push_back(centre + std::polar(leaf_radius, 2.0 * std::numbers::pi * k / leaf_points));
            const Polyline out = pullback_leaf(p, start, word);
            emit(out_path, false, [&](std::ostream& os) { write_polyline_csv(os, out); });
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for more information.\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

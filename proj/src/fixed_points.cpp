#include "qcdyn/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "qcdyn/errors.hpp"
#include "qcdyn/escape_render.hpp"
#include "qcdyn/format.hpp"

namespace qcdyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDedupTolerance = 1e-8;
constexpr int kPolarSeeds = 24;
constexpr double kClusterRadius = 1e-3;

double frobenius(const Jacobian2& j) {
    return std::sqrt(j.m[0][0] * j.m[0][0] + j.m[0][1] * j.m[0][1] + j.m[1][0] * j.m[1][0] + j.m[1][1] * j.m[1][1]);
}

double cross(std::array<double, 2> a, std::array<double, 2> b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

const char* to_string(StabilityClass s) {
    switch (s) {
        case StabilityClass::Attracting: return "attracting";
        case StabilityClass::Repelling: return "repelling";
        case StabilityClass::Saddle: return "saddle";
        case StabilityClass::Neutral: return "neutral";
    }
    return "unknown";
}

const char* to_string(CurveKind k) {
    switch (k) {
        case CurveKind::Delta: return "delta";
        case CurveKind::GammaPlus: return "gamma_plus";
        case CurveKind::GammaMinus: return "gamma_minus";
    }
    return "unknown";
}

StabilityClass classify_eigenvalues(std::pair<cplx, cplx> eig, double tol) {
    const double m1 = std::abs(eig.first), m2 = std::abs(eig.second);
    if (m1 < 1.0 - tol && m2 < 1.0 - tol) return StabilityClass::Attracting;
    if (m1 > 1.0 + tol && m2 > 1.0 + tol) return StabilityClass::Repelling;
    if ((m1 < 1.0 - tol && m2 > 1.0 + tol) || (m2 < 1.0 - tol && m1 > 1.0 + tol)) return StabilityClass::Saddle;
    return StabilityClass::Neutral;
}

FixedPointRecord make_fixed_point_record(const MapParams& p, cplx z) {
    const Jacobian2 j = jacobian_or_limit(p, z);
    FixedPointRecord r;
    r.z = z;
    r.eigenvalues = j.eigenvalues();
    r.cls = classify_eigenvalues(r.eigenvalues);
    r.det = j.det();
    r.trace = j.trace();
    return r;
}

namespace {

enum class NewtonOutcome { Converged, Diverged, Stalled };

NewtonOutcome newton_run(const MapParams& p, cplx seed, cplx& out, int max_steps) {
    const double bound = 10.0 * std::max(1.0, escape_radius(p));
    cplx z = seed;
    for (int step = 0; step <= max_steps; ++step) {
        const cplx f = apply_map(p, z) - z;
        if (std::abs(f) < 1e-13 * std::max(1.0, std::abs(z))) {
            out = z;
            return NewtonOutcome::Converged;
        }
        if (step == max_steps) break;
        const Jacobian2 m = jacobian_or_limit(p, z) - Jacobian2::identity();
        const double det = m.det();
        if (det == 0.0 || !std::isfinite(det)) return NewtonOutcome::Diverged;
        // Solve m δ = -f.
        const double dx = (-f.real() * m.m[1][1] + f.imag() * m.m[0][1]) / det;
        const double dy = (-f.imag() * m.m[0][0] + f.real() * m.m[1][0]) / det;
        z += cplx(dx, dy);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > bound)
            return NewtonOutcome::Diverged;
    }
    out = z;
    return NewtonOutcome::Stalled;
}

}  // namespace

bool newton_fixed_point(const MapParams& p, cplx seed, cplx& out, int max_steps) {
    return newton_run(p, seed, out, max_steps) == NewtonOutcome::Converged;
}

FixedPointCensus find_fixed_points(const MapParams& p) {
    std::vector<cplx> seeds;
    const double radius = escape_radius(p);
    const double seed_radius = std::isfinite(radius) ? radius : 4.0;
    for (int k = 1; k <= kPolarSeeds; ++k)
        for (int l = 0; l < kPolarSeeds; ++l)
            seeds.push_back(std::polar(seed_radius * k / kPolarSeeds, kTwoPi * l / kPolarSeeds));
    if (std::abs(p.alpha - 1.0) < 0.25) {
        const cplx s = std::sqrt(cplx(0.25, 0.0) - p.c);
        seeds.push_back(0.5 + s);
        seeds.push_back(0.5 - s);
    }

    auto residual = [&](cplx z) { return std::abs(apply_map(p, z) - z); };
    FixedPointCensus census;
    for (const cplx& seed : seeds) {
        cplx z;
        const NewtonOutcome outcome = newton_run(p, seed, z, 60);
        if (outcome == NewtonOutcome::Stalled) {
            census.convergence_warning = true;
            ++census.stalled_starts;
        }
        if (outcome != NewtonOutcome::Converged) continue;
        if (std::abs(apply_map(p, z) - z) > kFixedPointTolerance) continue;
        const double fz = residual(z);
        auto same = std::find_if(census.points.begin(), census.points.end(), [&](const FixedPointRecord& r) {
            const double d = std::abs(r.z - z);
            if (d < kDedupTolerance) return true;
            // Degenerate roots converge slowly; a root-valued midpoint marks one cluster.
            const cplx mid = 0.5 * (r.z + z);
            return d < kClusterRadius && residual(mid) < 1e-13 * std::max(1.0, std::abs(mid));
        });
        if (same == census.points.end())
            census.points.push_back(make_fixed_point_record(p, z));
        else if (fz < residual(same->z))
            *same = make_fixed_point_record(p, z);
    }
    std::sort(census.points.begin(), census.points.end(), [](const FixedPointRecord& a, const FixedPointRecord& b) {
        return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
    });
    return census;
}

cplx param_for_fixed_point(double alpha, cplx z) { return z - apply_map(MapParams{alpha, 0.0}, z); }

Jacobian2 param_map_jacobian(double alpha, cplx z) {
    return Jacobian2::identity() - jacobian_or_limit(MapParams{alpha, 0.0}, z);
}

double delta_circle(double alpha) {
    if (!(alpha > 0.5)) throw DomainError("delta circle requires alpha > 1/2");
    return std::pow(4.0 * alpha, 1.0 / (2.0 - 4.0 * alpha));
}

double gamma_sector_half_width(double alpha) {
    if (!(alpha > 0.5)) throw DomainError("gamma curves require alpha > 1/2");
    return std::acos(std::min(1.0, 2.0 * std::sqrt(alpha) / (alpha + 1.0)));
}

std::vector<double> gamma_plus(double alpha, double theta) {
    if (!(alpha > 0.5)) throw DomainError("gamma curves require alpha > 1/2");
    const double ct = std::cos(theta);
    if (!(ct > 0.0)) return {};
    const double b = (alpha + 1.0) * ct;
    const double disc = b * b - 4.0 * alpha;
    if (disc < 0.0) return {};
    const double e = 1.0 / (2.0 * alpha - 1.0);
    const double s = std::sqrt(disc);
    if (s == 0.0) return {std::pow(b / (4.0 * alpha), e)};
    return {std::pow((b + s) / (4.0 * alpha), e), std::pow((b - s) / (4.0 * alpha), e)};
}

std::vector<double> gamma_minus(double alpha, double theta) { return gamma_plus(alpha, theta + std::numbers::pi); }

namespace {

// γ+ point for the branch (larger root when upper) at angle θ, clamping the
// discriminant at the sector ends.
cplx gamma_plus_point(double alpha, double theta, bool upper) {
    const double b = (alpha + 1.0) * std::cos(theta);
    const double s = std::sqrt(std::max(0.0, b * b - 4.0 * alpha));
    const double u = (b + (upper ? s : -s)) / (4.0 * alpha);
    return std::polar(std::pow(u, 1.0 / (2.0 * alpha - 1.0)), theta);
}

// Smooth closed parametrisation of γ+: θ = θmax sin φ, upper root where
// cos φ > 0. The signed square root passes linearly through the sector ends.
cplx gamma_plus_smooth(double alpha, double theta_max, double phi) {
    const double theta = theta_max * std::sin(phi);
    const double b = (alpha + 1.0) * std::cos(theta);
    const double s = std::sqrt(std::max(0.0, b * b - 4.0 * alpha));
    const double u = (b + (std::cos(phi) >= 0.0 ? s : -s)) / (4.0 * alpha);
    return std::polar(std::pow(u, 1.0 / (2.0 * alpha - 1.0)), theta);
}

}  // namespace

Polyline sample_curve(double alpha, CurveKind which, int n) {
    if (n < 2) throw DomainError("curve sampling needs at least two points");
    Polyline line;
    line.closed = true;
    line.points.reserve(static_cast<std::size_t>(n));
    if (which == CurveKind::Delta) {
        const double r = delta_circle(alpha);
        for (int k = 0; k < n; ++k) line.points.push_back(std::polar(r, kTwoPi * k / n));
        return line;
    }
    const double tm = gamma_sector_half_width(alpha);
    const int forward = n / 2 + 1;  // upper root, endpoints included
    const int back = n - forward;   // lower root, interior angles only
    for (int k = 0; k < forward; ++k) {
        const double theta = -tm + 2.0 * tm * k / (forward - 1);
        line.points.push_back(gamma_plus_point(alpha, theta, true));
    }
    for (int k = 1; k <= back; ++k) {
        const double theta = tm - 2.0 * tm * k / (back + 1);
        line.points.push_back(gamma_plus_point(alpha, theta, false));
    }
    if (which == CurveKind::GammaMinus)
        for (auto& z : line.points) z = -z;
    return line;
}

Polyline trace_curve_image(double alpha, CurveKind which, int n) {
    if (n < 16) throw DomainError("curve tracing needs n >= 16");
    Polyline line = sample_curve(alpha, which, n);
    for (auto& z : line.points) z = param_for_fixed_point(alpha, z);
    return line;
}

std::vector<cplx> detect_cusps(double alpha, int n, CurveKind which) {
    if (alpha == 1.0) throw DomainError("gamma curves degenerate to points at alpha = 1");
    if (which == CurveKind::Delta) throw DomainError("cusp detection is defined for the gamma curves");
    if (n < 16) throw DomainError("cusp detection needs n >= 16");
    const double tm = gamma_sector_half_width(alpha);
    const double sign = which == CurveKind::GammaMinus ? -1.0 : 1.0;
    auto point = [&](double phi) { return sign * gamma_plus_smooth(alpha, tm, phi); };

    // Along γ- the map p is a local diffeomorphism: no kernel, no cusp.
    if (which == CurveKind::GammaMinus) {
        for (int k = 0; k < n; ++k) {
            const Jacobian2 dp = param_map_jacobian(alpha, point(kTwoPi * (k + 0.5) / n));
            const double scale = frobenius(dp);
            if (std::abs(dp.det()) < 1e-8 * scale * scale) throw DomainError("unexpected singular Dp along gamma-");
        }
        return {};
    }

    const double h = 1e-6;
    auto tangent = [&](double phi) {
        const cplx d = (point(phi + h) - point(phi - h)) / (2.0 * h);
        return std::array<double, 2>{d.real(), d.imag()};
    };
    // Kernel of the singular Dp, from its larger row, oriented along ref.
    auto kernel = [&](double phi, std::array<double, 2> ref) {
        const Jacobian2 m = param_map_jacobian(alpha, point(phi));
        const double n0 = std::hypot(m.m[0][0], m.m[0][1]);
        const double n1 = std::hypot(m.m[1][0], m.m[1][1]);
        std::array<double, 2> k = n0 >= n1 ? std::array<double, 2>{-m.m[0][1], m.m[0][0]}
                                           : std::array<double, 2>{-m.m[1][1], m.m[1][0]};
        const double len = std::hypot(k[0], k[1]);
        k = {k[0] / len, k[1] / len};
        if (k[0] * ref[0] + k[1] * ref[1] < 0.0) k = {-k[0], -k[1]};
        return k;
    };

    std::vector<double> phis(static_cast<std::size_t>(n));
    std::vector<std::array<double, 2>> kernels(phis.size());
    std::vector<double> g(phis.size());
    std::array<double, 2> ref{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        phis[k] = kTwoPi * (k + 0.5) / n;
        kernels[k] = kernel(phis[k], ref);
        ref = kernels[k];
        g[k] = cross(tangent(phis[k]), kernels[k]);
    }

    std::vector<cplx> cusps;
    for (int k = 0; k < n; ++k) {
        const int next = (k + 1) % n;
        double lo = phis[k];
        double hi = next == 0 ? phis[0] + kTwoPi : phis[next];
        // Orientation of the wrap-around neighbour is relative to the last
        // sample; recompute against kernels[k] so the comparison is local.
        const double g_lo = g[k];
        const double g_hi = cross(tangent(hi), kernel(hi, kernels[k]));
        if (g_lo == 0.0 || (g_lo > 0.0) != (g_hi > 0.0)) {
            const std::array<double, 2> anchor = kernels[k];
            for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = cross(tangent(mid), kernel(mid, anchor));
                if ((gm > 0.0) == (g_lo > 0.0) && g_lo != 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            cplx c = param_for_fixed_point(alpha, point(0.5 * (lo + hi)));
            if (std::abs(c.imag()) < 1e-10) c = cplx(c.real(), 0.0);
            cusps.push_back(c);
        }
    }
    return cusps;
}

bool injectivity_probe(double alpha, int n_pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-3.0, 0.0), uy(-3.0, 3.0);
    auto draw = [&] {
        for (;;) {
            const cplx z(ux(rng), uy(rng));
            if (std::abs(z) <= 3.0) return z;
        }
    };
    for (int i = 0; i < n_pairs; ++i) {
        const cplx a = draw();
        cplx b = draw();
        while (b == a) b = draw();
        const double gap = std::abs(param_for_fixed_point(alpha, a) - param_for_fixed_point(alpha, b));
        const double scale = std::max({1.0, frobenius(param_map_jacobian(alpha, a)),
                                       frobenius(param_map_jacobian(alpha, b))});
        if (!(gap > 1e-9 * scale * std::abs(a - b))) return false;
    }
    return true;
}

void write_fixed_points_csv(std::ostream& os, const std::vector<FixedPointRecord>& pts) {
    os << "re,im,det,trace,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class\n";
    for (const auto& r : pts)
        os << fmt_double(r.z.real()) << ',' << fmt_double(r.z.imag()) << ',' << fmt_double(r.det) << ','
           << fmt_double(r.trace) << ',' << fmt_double(r.eigenvalues.first.real()) << ','
           << fmt_double(r.eigenvalues.first.imag()) << ',' << fmt_double(r.eigenvalues.second.real()) << ','
           << fmt_double(r.eigenvalues.second.imag()) << ',' << to_string(r.cls) << '\n';
}

void write_fixed_points_json(std::ostream& os, const MapParams& p, const FixedPointCensus& census) {
    nlohmann::ordered_json doc;
    doc["alpha"] = p.alpha;
    doc["c"] = {p.c.real(), p.c.imag()};
    doc["convergence_warning"] = census.convergence_warning;
    auto& arr = doc["fixed_points"] = nlohmann::ordered_json::array();
    for (const auto& r : census.points) {
        nlohmann::ordered_json e;
        e["z"] = {r.z.real(), r.z.imag()};
        e["eigenvalues"] = {{r.eigenvalues.first.real(), r.eigenvalues.first.imag()},
                            {r.eigenvalues.second.real(), r.eigenvalues.second.imag()}};
        e["det"] = r.det;
        e["trace"] = r.trace;
        e["class"] = to_string(r.cls);
        arr.push_back(std::move(e));
    }
    os << doc.dump(2) << '\n';
}

void write_polyline_csv(std::ostream& os, const Polyline& line) {
    os << "re,im\n";
    for (const auto& z : line.points) os << fmt_double(z.real()) << ',' << fmt_double(z.imag()) << '\n';
}

}  // namespace qcdyn

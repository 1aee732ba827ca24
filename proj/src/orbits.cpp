#include "qcdyn/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qcdyn/errors.hpp"
#include "qcdyn/escape_render.hpp"
#include "qcdyn/format.hpp"

namespace qcdyn {

CriticalOrbit critical_orbit(const MapParams& p, int n) {
    if (n < 1) throw DomainError("critical orbit length must be at least 1");
    const double radius = escape_radius(p);
    CriticalOrbit out;
    out.points.reserve(static_cast<std::size_t>(n));
    cplx z(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
        z = apply_map(p, z);
        out.points.push_back(z);
        if (!(std::abs(z) <= radius)) {
            out.escaped = true;
            break;
        }
    }
    return out;
}

Jacobian2 cycle_jacobian(const MapParams& p, const std::vector<cplx>& cycle) {
    Jacobian2 m = Jacobian2::identity();
    for (const cplx& z : cycle) m = jacobian_or_limit(p, z) * m;
    return m;
}

namespace {

struct Iterate {
    cplx end;
    Jacobian2 d;
};

Iterate iterate_with_derivative(const MapParams& p, cplx z, int q) {
    Jacobian2 d = Jacobian2::identity();
    for (int k = 0; k < q; ++k) {
        d = jacobian_or_limit(p, z) * d;
        z = apply_map(p, z);
    }
    return {z, d};
}

cplx iterate(const MapParams& p, cplx z, int q) {
    for (int k = 0; k < q; ++k) z = apply_map(p, z);
    return z;
}

double tolerance_at(cplx z) { return 1e-12 * std::max(1.0, std::abs(z)); }

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

PeriodicOrbit find_periodic_orbit(const MapParams& p, int q, cplx seed) {
    if (q < 1) throw DomainError("period must be at least 1");
    cplx z = seed;
    double res = std::abs(iterate(p, z, q) - z);
    bool converged = res < tolerance_at(z);
    for (int step = 0; step < kPeriodicNewtonSteps && !converged; ++step) {
        const Iterate it = iterate_with_derivative(p, z, q);
        const cplx f = it.end - z;
        const Jacobian2 m = it.d - Jacobian2::identity();
        const double det = m.det();
        if (det == 0.0 || !std::isfinite(det)) break;
        cplx delta((-f.real() * m.m[1][1] + f.imag() * m.m[0][1]) / det,
                   (-f.imag() * m.m[0][0] + f.real() * m.m[1][0]) / det);
        cplx trial = z + delta;
        double trial_res = std::abs(iterate(p, trial, q) - trial);
        for (int halve = 0; halve < 40 && !(trial_res <= res); ++halve) {
            delta *= 0.5;
            trial = z + delta;
            trial_res = std::abs(iterate(p, trial, q) - trial);
        }
        if (!finite(trial) || !std::isfinite(trial_res)) break;
        z = trial;
        res = trial_res;
        converged = res < tolerance_at(z);
    }
    if (!converged) throw NoConvergence("periodic orbit Newton did not converge from the seed");

    PeriodicOrbit orbit;
    orbit.period = q;
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        if (std::abs(iterate(p, z, d) - z) < 1e3 * tolerance_at(z)) {
            orbit.period = d;
            break;
        }
    }
    orbit.points.reserve(static_cast<std::size_t>(orbit.period));
    cplx w = z;
    for (int k = 0; k < orbit.period; ++k) {
        orbit.points.push_back(w);
        w = apply_map(p, w);
    }
    orbit.multipliers = cycle_jacobian(p, orbit.points).eigenvalues();
    orbit.cls = classify_eigenvalues(orbit.multipliers);
    return orbit;
}

Polyline pullback_leaf(const MapParams& p, const Polyline& leaf, const std::vector<int>& branch_word) {
    Polyline out = leaf;
    for (int b : branch_word) {
        if (b != 0 && b != 1) throw ContractError("branch word entries must be 0 or 1");
        for (cplx& y : out.points) {
            if (std::abs(y - p.c) < 1e-12) throw BranchDegenerate("leaf point on the critical value");
            const auto [first, second] = inverse_branches(p, y);
            y = b == 0 ? first : second;
        }
    }
    // A single branch covers half of a leaf that winds around c.
    if (!branch_word.empty()) out.closed = false;
    return out;
}

SmoothnessExponent smoothness_exponent(double alpha) {
    if (!(alpha > 0.5)) throw DomainError("smoothness exponent requires alpha > 1/2");
    return {std::log(2.0 * alpha) / std::log(2.0)};
}

void write_orbit_csv(std::ostream& os, const std::vector<cplx>& points) {
    os << "n,re,im\n";
    for (std::size_t k = 0; k < points.size(); ++k)
        os << k + 1 << ',' << fmt_double(points[k].real()) << ',' << fmt_double(points[k].imag()) << '\n';
}

void write_periodic_orbit_json(std::ostream& os, const MapParams& p, const PeriodicOrbit& orbit) {
    nlohmann::ordered_json doc;
    doc["alpha"] = p.alpha;
    doc["c"] = {p.c.real(), p.c.imag()};
    doc["period"] = orbit.period;
    auto& pts = doc["points"] = nlohmann::ordered_json::array();
    for (const cplx& z : orbit.points) pts.push_back({z.real(), z.imag()});
    doc["multipliers"] = {{orbit.multipliers.first.real(), orbit.multipliers.first.imag()},
                          {orbit.multipliers.second.real(), orbit.multipliers.second.imag()}};
    doc["class"] = to_string(orbit.cls);
    os << doc.dump(2) << '\n';
}

}  // namespace qcdyn

#pragma once

// Critical orbits, periodic orbits by Newton on f^q - id, and pullbacks of
// leaves under chosen inverse branches.

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qcdyn/core_map.hpp"
#include "qcdyn/fixed_points.hpp"

namespace qcdyn {

struct CriticalOrbit {
    std::vector<cplx> points;  // f(0), f²(0), ...
    bool escaped = false;      // the last point lies outside escape_radius
};

// Iterates the critical point n times, stopping at the first point past the
// escape radius (that point is kept). DomainError for n < 1.
CriticalOrbit critical_orbit(const MapParams& p, int n);

struct PeriodicOrbit {
    std::vector<cplx> points;  // minimal cycle, points[k+1] = f(points[k])
    int period = 0;            // minimal period, divides the requested q
    std::pair<cplx, cplx> multipliers;
    StabilityClass cls = StabilityClass::Neutral;
};

inline constexpr int kPeriodicNewtonSteps = 100;

// Ordered product D f(z_{q-1}) ··· D f(z_0) along the cycle.
Jacobian2 cycle_jacobian(const MapParams& p, const std::vector<cplx>& cycle);

// Damped Newton on f^q(z) - z from seed. NoConvergence when the residual does
// not fall below 1e-12 within kPeriodicNewtonSteps.
PeriodicOrbit find_periodic_orbit(const MapParams& p, int q, cplx seed);

// Pulls the leaf back |word| times, word[0] first. Branch 0 takes
// |y - c|^{1/2α} e^{i Arg(y - c)/2}, branch 1 its negative.
// BranchDegenerate when a point comes within 1e-12 of c.
Polyline pullback_leaf(const MapParams& p, const Polyline& leaf, const std::vector<int>& branch_word);

struct SmoothnessExponent {
    double m = 1.0;
};

// m = ln(2α)/ln 2. DomainError for α <= 1/2.
SmoothnessExponent smoothness_exponent(double alpha);

// "n,re,im"
void write_orbit_csv(std::ostream& os, const std::vector<cplx>& points);
void write_periodic_orbit_json(std::ostream& os, const MapParams& p, const PeriodicOrbit& orbit);

}  // namespace qcdyn

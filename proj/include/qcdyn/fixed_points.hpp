#pragma once

// Fixed points of the family and the curves in the dynamical plane where a
// fixed point changes type:
//   δ   det Df = 1       (Hopf boundary)
//   γ+  eigenvalue +1    (saddle-node)
//   γ-  eigenvalue -1    (period doubling), γ- = -γ+
// and their images under p(z) = z - z^{α+1} z̄^{α-1}, the parameter for which
// z is fixed.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qcdyn/core_map.hpp"

namespace qcdyn {

enum class StabilityClass { Attracting, Repelling, Saddle, Neutral };
const char* to_string(StabilityClass s);

inline constexpr double kClassTolerance = 1e-9;
inline constexpr double kFixedPointTolerance = 1e-10;

// Neutral whenever some |λ| lies within tol of 1.
StabilityClass classify_eigenvalues(std::pair<cplx, cplx> eig, double tol = kClassTolerance);

struct FixedPointRecord {
    cplx z;
    std::pair<cplx, cplx> eigenvalues;
    StabilityClass cls = StabilityClass::Neutral;
    double det = 0.0;
    double trace = 0.0;
};

// Builds the record from the derivative at z; the branch point uses the
// limiting derivative 0.
FixedPointRecord make_fixed_point_record(const MapParams& p, cplx z);

struct FixedPointCensus {
    std::vector<FixedPointRecord> points;  // sorted by (Re z, Im z)
    // Some Newton start neither converged nor left the search disk.
    bool convergence_warning = false;
    int stalled_starts = 0;
};

// Multi-start Newton on f(z) - z from a polar seed grid covering the disk of
// radius escape_radius(p), deduplicated at 1e-8.
FixedPointCensus find_fixed_points(const MapParams& p);

// Newton polish of a single start. Returns false when it fails to converge.
bool newton_fixed_point(const MapParams& p, cplx seed, cplx& out, int max_steps = 60);

// p(z) = z - |z|^{2α-2} z²; f_{α,p(z)}(z) = z.
cplx param_for_fixed_point(double alpha, cplx z);
Jacobian2 param_map_jacobian(double alpha, cplx z);

// (4α)^{1/(2-4α)}. DomainError for α <= 1/2.
double delta_circle(double alpha);

// Radii r of γ+ points at angle θ: roots u = r^{2α-1} of
// 1 - 2(α+1) u cos θ + 4α u² = 0. Larger root first; empty outside the sector
// cos²θ >= 4α/(α+1)², cos θ > 0.
std::vector<double> gamma_plus(double alpha, double theta);
std::vector<double> gamma_minus(double alpha, double theta);

// Half-width of the angular sector of γ+ about the positive real axis.
double gamma_sector_half_width(double alpha);

enum class CurveKind { Delta, GammaPlus, GammaMinus };
const char* to_string(CurveKind k);

struct Polyline {
    std::vector<cplx> points;
    bool closed = false;
};

// n samples of the curve itself in the dynamical plane. δ uniform in angle;
// γ+ uniform in angle over the sector, larger root forward then smaller root
// back; γ- is the pointwise negation of the γ+ samples.
Polyline sample_curve(double alpha, CurveKind which, int n);

// The same samples pushed through p. Requires n >= 16.
Polyline trace_curve_image(double alpha, CurveKind which, int n);

// Points of p(γ) where the tangent of γ lies in ker Dp. Along γ+ Dp is
// singular; the sign of tangent × kernel is scanned over n samples of a
// smooth parametrisation and refined by bisection. Along γ- Dp is invertible
// and the result is empty. DomainError at α = 1, where γ± degenerate.
std::vector<cplx> detect_cusps(double alpha, int n, CurveKind which = CurveKind::GammaPlus);

// Samples pairs in {Re z <= 0, |z| <= 3} and checks that p separates them.
bool injectivity_probe(double alpha, int n_pairs, std::uint64_t seed);

// "re,im,det,trace,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class"
void write_fixed_points_csv(std::ostream& os, const std::vector<FixedPointRecord>& pts);
void write_fixed_points_json(std::ostream& os, const MapParams& p, const FixedPointCensus& census);
// "re,im"
void write_polyline_csv(std::ostream& os, const Polyline& line);

}  // namespace qcdyn

#pragma once

// Direction of the Hopf bifurcation at fixed points on the curve det Df = 1.

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace qcdyn {

using cplx = std::complex<double>;

// Point on the det = 1 circle |z| = (4α)^{1/(2-4α)} with
// arg z = arccos(cos θ (4α)^{(α-1)/(2α-1)} / (α+1)). This is the angle
// parameter behind the published Hopf-number bounds; the eigenvalues there
// are e^{±iψ} with cos ψ = cos θ (4α)^{-1/(4α-2)}, not e^{±iθ}.
// EigenvalueError when the arccos argument leaves [-1, 1].
cplx hopf_fixed_point(double alpha, double theta);

// Point on the det = 1 circle whose eigenvalues are exactly e^{±iψ}.
// EigenvalueError when |cos ψ| √(4α) / (α+1) > 1.
cplx hopf_fixed_point_at_eigenangle(double alpha, double psi);

// Eigenvalue angle ψ ∈ [0, π] at hopf_fixed_point(alpha, theta).
double hopf_eigenangle(double alpha, double theta);

// True when θ is within tol of 2πp/q for some q <= 4.
bool is_low_order_resonant(double theta, double tol);

// Re(b2/u) of the degree-3 normal form at hopf_fixed_point(alpha, theta).
// Throws EigenvalueError, or ResonanceError when θ or the eigenvalue is
// near a root of unity of order <= 4.
double hopf_number(double alpha, double theta);

// Same coefficient, parametrized by the true eigenvalue angle ψ.
double hopf_number_at_eigenangle(double alpha, double psi);

// β = 1 - 1/α maps α ∈ (1/2, 1, ∞) onto (-1, 0, 1).
double beta_from_alpha(double alpha);
double alpha_from_beta(double beta);

enum class HopfStatus { Ok, NotConjugate, Resonant };
const char* to_string(HopfStatus s);

struct HopfSample {
    double alpha = 0.0;
    double theta = 0.0;
    double value = 0.0;  // NaN unless status is Ok
    HopfStatus status = HopfStatus::Ok;
};

// Row-major over (alpha, theta). Failures are recorded per point.
std::vector<HopfSample> hopf_sweep(const std::vector<double>& alphas, const std::vector<double>& thetas);

// Header "alpha,beta,theta,hopf_number,status".
void write_hopf_csv(std::ostream& os, const std::vector<HopfSample>& table);

}  // namespace qcdyn

#pragma once

// Evaluation of the degree-two family f(re^{iθ}) = r^{2α} e^{2iθ} + c,
// its inverse branches, first derivatives and expansion rates.
//
// All fractional powers use the polar form r^p e^{ip Arg z} with the
// principal argument in (-π, π].

#include <array>
#include <complex>
#include <utility>

namespace qcdyn {

using cplx = std::complex<double>;

struct MapParams {
    double alpha = 1.0;
    cplx c{0.0, 0.0};
};

// Throws DomainError unless alpha > 1/2 and both fields are finite.
void validate(const MapParams& p);

struct WirtingerPair {
    cplx fz;
    cplx fzbar;

    // |fz|^2 - |fzbar|^2, the Jacobian determinant.
    double det() const { return std::norm(fz) - std::norm(fzbar); }
};

// Real 2x2 derivative acting on (dx, dy).
struct Jacobian2 {
    std::array<std::array<double, 2>, 2> m{};

    double trace() const { return m[0][0] + m[1][1]; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    // Roots of λ² - tr λ + det. Real pairs are ordered (larger, smaller);
    // complex pairs as (upper half plane, conjugate).
    std::pair<cplx, cplx> eigenvalues() const;
    std::array<double, 2> apply(std::array<double, 2> v) const;

    static Jacobian2 from_wirtinger(const WirtingerPair& w);
    static Jacobian2 identity();
};

Jacobian2 operator*(const Jacobian2& a, const Jacobian2& b);
Jacobian2 operator-(const Jacobian2& a, const Jacobian2& b);

// z^a · z̄^b = r^{a+b} e^{i(a-b)Arg z}. Returns 0 at z = 0 when a + b > 0.
cplx mixed_pow(cplx z, double a, double b);

// Q_α(re^{iθ}) = r^α e^{iθ}; a one-parameter group under composition.
cplx q_alpha(double alpha, cplx z);

// r^{2α} e^{2iθ} + c; the origin maps to c.
cplx apply_map(const MapParams& p, cplx z);

// fz = (α+1) z^α z̄^{α-1}, fzbar = (α-1) z^{α+1} z̄^{α-2}.
// DomainError at z = 0 when α < 1; at α = 1 the derivative there is 0.
WirtingerPair wirtinger(const MapParams& p, cplx z);
Jacobian2 jacobian(const MapParams& p, cplx z);
// As jacobian, but returns the limiting derivative 0 at the branch point for
// every α > 1/2 instead of throwing.
Jacobian2 jacobian_or_limit(const MapParams& p, cplx z);

// Both preimages of y, differing by sign. y = c yields the double root 0.
std::pair<cplx, cplx> inverse_branches(const MapParams& p, cplx y);

// Smallest eigenvalue of DfᵀDf, (|fz| - |fzbar|)². DomainError at z = 0.
double lambda_min(const MapParams& p, cplx z);

// c = -2^{1/(2α-1)}, the parameter whose Julia set is the interval [c, -c].
double tip_parameter(double alpha);

// Worst-direction expansion ratio f*(ρ_α)/ρ_α of the metric
// ρ_α(z)|dz| = |dz| / |c² - z²|^{(2α-1)/(2α)} at the tip parameter.
// Valid in the closed disk of radius |c|; DomainError at z = ±c.
double rho_expansion_ratio(double alpha, cplx z);

// Same ratio in normalized coordinates x = z/|c| (unit disk). Unlike the
// unnormalized form this has a finite limit at α = 1/2.
double rho_expansion_ratio_normalized(double alpha, cplx x);

// |f_{1/2,kc}(kz) - k f_{1/2,c}(z)|; zero up to rounding.
double scaling_identity_check(cplx c, cplx z, double k);

}  // namespace qcdyn

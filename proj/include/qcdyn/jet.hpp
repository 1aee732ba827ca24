#pragma once

// Truncated bivariate Taylor jets in (z, w = z̄) through total degree 3,
// and the degree-3 normal form used to read off the Hopf coefficient.

#include <array>
#include <complex>
#include <map>
#include <utility>

namespace qcdyn {

using cplx = std::complex<double>;

class Jet3 {
public:
    static constexpr int kDegree = 3;
    static constexpr int kSize = 10;

    Jet3() { coeff_.fill(cplx(0.0, 0.0)); }

    // Coefficient of z^j w^k. Out-of-range indices read as zero.
    cplx operator()(int j, int k) const {
        return in_range(j, k) ? coeff_[index(j, k)] : cplx(0.0, 0.0);
    }
    // Writable coefficient; throws ContractError when j + k > 3.
    cplx& at(int j, int k);

    static bool in_range(int j, int k) { return j >= 0 && k >= 0 && j + k <= kDegree; }

    static Jet3 monomial(int j, int k, cplx value);
    static Jet3 identity() { return monomial(1, 0, cplx(1.0, 0.0)); }
    // a z + b w
    static Jet3 linear(cplx a, cplx b);

    // Evaluate the polynomial at (z, z̄).
    cplx eval(cplx z) const;
    double max_abs() const;

    Jet3& operator+=(const Jet3& o);
    Jet3& operator-=(const Jet3& o);
    Jet3& operator*=(cplx s);
    friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
    friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
    friend Jet3 operator*(Jet3 a, cplx s) { return a *= s; }
    friend Jet3 operator*(cplx s, Jet3 a) { return a *= s; }
    // Truncated product.
    friend Jet3 operator*(const Jet3& a, const Jet3& b);
    friend bool operator==(const Jet3& a, const Jet3& b) { return a.coeff_ == b.coeff_; }

private:
    static int index(int j, int k) {
        const int d = j + k;
        return d * (d + 1) / 2 + k;
    }
    std::array<cplx, kSize> coeff_;
};

// A raw bivariate expansion, possibly holding monomials of degree > 3.
using Monomials = std::map<std::pair<int, int>, cplx>;

// Generalized binomial p(p-1)...(p-n+1)/n!.
double gen_binomial(double p, int n);

// Expansion of Q²(z0 + z) - Q²(z0), Q²(z) = z^{α+1} z̄^{α-1}, in (z, w)
// through degree 3. DomainError at z0 = 0.
Jet3 jet_of_map(double alpha, cplx z0);

// Same expansion before truncation: every z^j w^k with j, k <= 3.
Monomials raw_jet_of_map(double alpha, cplx z0);

Jet3 chop_jet3(const Monomials& raw);
inline Jet3 chop_jet3(const Jet3& j) { return j; }

// Conjugate coefficients and swap z <-> w.
Jet3 conj_jet(const Jet3& j);

// outer(inner, conj(inner)), truncated. ContractError if inner(0) != 0.
Jet3 compose_jets(const Jet3& outer, const Jet3& inner);

// Change coordinates z = cζ + ζ̄ so the w-linear term vanishes.
// ResonanceError unless |b| < |Im a| (or b = 0).
Jet3 coord_change1(const Jet3& j);

struct NormalFormDetail {
    Jet3 normalized;          // after coord_change1
    cplx u;                   // linear eigenvalue
    std::array<cplx, 3> a{};  // z², zw, w² coefficients of the quadratic change
    cplx b2;                  // z²w coefficient of the normal form
    Jet3 residual;            // returnJet∘L1 - L1∘NormalJet with solved a, b2
    cplx value;               // b2 / u
};

inline constexpr double kResonanceTolerance = 1e-3;

// Solves for the quadratic coordinate change with leading coefficient 2,
// then the z²w normal-form coefficient. ResonanceError near u^q = 1, q <= 4.
NormalFormDetail normal_form3_detail(const Jet3& j);
cplx normal_form3(const Jet3& j);

}  // namespace qcdyn

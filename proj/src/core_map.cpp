#include "qcdyn/core_map.hpp"

#include <cmath>

#include "qcdyn/errors.hpp"

namespace qcdyn {

void validate(const MapParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.c.real()) || !std::isfinite(p.c.imag()))
        throw DomainError("map parameters must be finite");
    if (!(p.alpha > 0.5)) throw DomainError("alpha must exceed 1/2");
}

std::pair<cplx, cplx> Jacobian2::eigenvalues() const {
    const double half_tr = 0.5 * trace();
    const double disc = half_tr * half_tr - det();
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return {cplx(half_tr + s, 0.0), cplx(half_tr - s, 0.0)};
    }
    const double s = std::sqrt(-disc);
    return {cplx(half_tr, s), cplx(half_tr, -s)};
}

std::array<double, 2> Jacobian2::apply(std::array<double, 2> v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

Jacobian2 Jacobian2::from_wirtinger(const WirtingerPair& w) {
    const double a1 = w.fz.real(), a2 = w.fz.imag();
    const double b1 = w.fzbar.real(), b2 = w.fzbar.imag();
    Jacobian2 j;
    j.m = {{{a1 + b1, -a2 + b2}, {a2 + b2, a1 - b1}}};
    return j;
}

Jacobian2 Jacobian2::identity() {
    Jacobian2 j;
    j.m = {{{1.0, 0.0}, {0.0, 1.0}}};
    return j;
}

Jacobian2 operator*(const Jacobian2& a, const Jacobian2& b) {
    Jacobian2 r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r.m[i][k] = a.m[i][0] * b.m[0][k] + a.m[i][1] * b.m[1][k];
    return r;
}

Jacobian2 operator-(const Jacobian2& a, const Jacobian2& b) {
    Jacobian2 r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r.m[i][k] = a.m[i][k] - b.m[i][k];
    return r;
}

cplx mixed_pow(cplx z, double a, double b) {
    const double r = std::abs(z);
    if (r == 0.0) return cplx(0.0, 0.0);
    return std::polar(std::pow(r, a + b), (a - b) * std::arg(z));
}

cplx q_alpha(double alpha, cplx z) {
    const double n = std::norm(z);
    if (n == 0.0) return z;
    return std::pow(n, 0.5 * (alpha - 1.0)) * z;
}

cplx apply_map(const MapParams& p, cplx z) {
    const double n = std::norm(z);
    if (n == 0.0) return p.c;
    // |z|^{2α-2} z² is r^{2α} e^{2iθ} without going through atan2.
    return std::pow(n, p.alpha - 1.0) * (z * z) + p.c;
}

WirtingerPair wirtinger(const MapParams& p, cplx z) {
    const double n = std::norm(z);
    if (n == 0.0) {
        if (p.alpha < 1.0) throw DomainError("derivative requested at the branch point with alpha < 1");
        return {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    }
    const double s = std::pow(n, p.alpha - 1.0);  // r^{2α-2}
    const cplx fz = (p.alpha + 1.0) * s * z;
    const cplx fzbar = (p.alpha - 1.0) * s * (z * z * z) / n;
    return {fz, fzbar};
}

Jacobian2 jacobian(const MapParams& p, cplx z) { return Jacobian2::from_wirtinger(wirtinger(p, z)); }

Jacobian2 jacobian_or_limit(const MapParams& p, cplx z) {
    if (z == cplx(0.0, 0.0) && p.alpha > 0.5) return Jacobian2{};
    return jacobian(p, z);
}

std::pair<cplx, cplx> inverse_branches(const MapParams& p, cplx y) {
    const cplx w = y - p.c;
    const double r = std::abs(w);
    if (r == 0.0) return {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    const cplx z = std::polar(std::pow(r, 1.0 / (2.0 * p.alpha)), 0.5 * std::arg(w));
    return {z, -z};
}

double lambda_min(const MapParams& p, cplx z) {
    const double r = std::abs(z);
    if (r == 0.0) throw DomainError("lambda_min undefined at the branch point");
    const double k = p.alpha + 1.0 - std::abs(p.alpha - 1.0);
    return k * k * std::pow(r, 4.0 * p.alpha - 2.0);
}

double tip_parameter(double alpha) {
    if (!(alpha > 0.5)) throw DomainError("tip parameter requires alpha > 1/2");
    return -std::pow(2.0, 1.0 / (2.0 * alpha - 1.0));
}

double rho_expansion_ratio_normalized(double alpha, cplx x) {
    if (!(alpha >= 0.5)) throw DomainError("metric expansion requires alpha >= 1/2");
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("point outside the closed unit disk");
    const double first = alpha + 1.0 - std::abs(alpha - 1.0);
    const double num = std::abs(1.0 - x * x);
    const double den = std::abs(1.0 - mixed_pow(x, alpha + 1.0, alpha - 1.0));
    if (num == 0.0 || den == 0.0) throw DomainError("metric singular at z = ±c");
    const double p = (2.0 * alpha - 1.0) / (2.0 * alpha);
    const double scale = std::pow(2.0, (1.0 - alpha) / alpha);
    return first * scale * std::pow(num / den, p);
}

double rho_expansion_ratio(double alpha, cplx z) {
    if (alpha == 0.5) return rho_expansion_ratio_normalized(alpha, cplx(0.0, 0.0));
    const double radius = -tip_parameter(alpha);
    return rho_expansion_ratio_normalized(alpha, z / radius);
}

double scaling_identity_check(cplx c, cplx z, double k) {
    const MapParams base{0.5, c};
    const MapParams scaled{0.5, k * c};
    return std::abs(apply_map(scaled, k * z) - k * apply_map(base, z));
}

}  // namespace qcdyn

#include "qcdyn/jet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "qcdyn/core_map.hpp"
#include "qcdyn/errors.hpp"

namespace qcdyn {

namespace {

// Mathematica's Chop: zero real or imaginary parts below 1e-10.
cplx chop_small(cplx v) {
    constexpr double kChop = 1e-10;
    return {std::abs(v.real()) < kChop ? 0.0 : v.real(), std::abs(v.imag()) < kChop ? 0.0 : v.imag()};
}

constexpr std::array<std::pair<int, int>, 3> kQuadratic{{{2, 0}, {1, 1}, {0, 2}}};
constexpr std::array<std::pair<int, int>, 4> kCubic{{{3, 0}, {2, 1}, {1, 2}, {0, 3}}};

}  // namespace

cplx& Jet3::at(int j, int k) {
    if (!in_range(j, k)) throw ContractError("jet index beyond degree 3");
    return coeff_[index(j, k)];
}

Jet3 Jet3::monomial(int j, int k, cplx value) {
    Jet3 r;
    r.at(j, k) = value;
    return r;
}

Jet3 Jet3::linear(cplx a, cplx b) {
    Jet3 r;
    r.at(1, 0) = a;
    r.at(0, 1) = b;
    return r;
}

cplx Jet3::eval(cplx z) const {
    const cplx w = std::conj(z);
    cplx sum(0.0, 0.0);
    for (int d = 0; d <= kDegree; ++d)
        for (int k = 0; k <= d; ++k) {
            const int j = d - k;
            sum += coeff_[index(j, k)] * std::pow(z, j) * std::pow(w, k);
        }
    return sum;
}

double Jet3::max_abs() const {
    double m = 0.0;
    for (const auto& v : coeff_) m = std::max(m, std::abs(v));
    return m;
}

Jet3& Jet3::operator+=(const Jet3& o) {
    for (int i = 0; i < kSize; ++i) coeff_[i] += o.coeff_[i];
    return *this;
}

Jet3& Jet3::operator-=(const Jet3& o) {
    for (int i = 0; i < kSize; ++i) coeff_[i] -= o.coeff_[i];
    return *this;
}

Jet3& Jet3::operator*=(cplx s) {
    for (auto& v : coeff_) v *= s;
    return *this;
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int d1 = 0; d1 <= Jet3::kDegree; ++d1)
        for (int k1 = 0; k1 <= d1; ++k1) {
            const cplx x = a.coeff_[Jet3::index(d1 - k1, k1)];
            if (x == cplx(0.0, 0.0)) continue;
            for (int d2 = 0; d1 + d2 <= Jet3::kDegree; ++d2)
                for (int k2 = 0; k2 <= d2; ++k2)
                    r.coeff_[Jet3::index(d1 - k1 + d2 - k2, k1 + k2)] += x * b.coeff_[Jet3::index(d2 - k2, k2)];
        }
    return r;
}

double gen_binomial(double p, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= (p - i) / (i + 1);
    return r;
}

Monomials raw_jet_of_map(double alpha, cplx z0) {
    if (z0 == cplx(0.0, 0.0)) throw DomainError("jet of the map at the branch point");
    Monomials raw;
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k) {
            if (j == 0 && k == 0) continue;
            const double b = gen_binomial(alpha + 1.0, j) * gen_binomial(alpha - 1.0, k);
            if (b == 0.0) continue;
            raw[{j, k}] = b * mixed_pow(z0, alpha + 1.0 - j, alpha - 1.0 - k);
        }
    return raw;
}

Jet3 jet_of_map(double alpha, cplx z0) { return chop_jet3(raw_jet_of_map(alpha, z0)); }

Jet3 chop_jet3(const Monomials& raw) {
    Jet3 r;
    for (const auto& [jk, v] : raw)
        if (Jet3::in_range(jk.first, jk.second)) r.at(jk.first, jk.second) += v;
    return r;
}

Jet3 conj_jet(const Jet3& j) {
    Jet3 r;
    for (int d = 0; d <= Jet3::kDegree; ++d)
        for (int k = 0; k <= d; ++k) r.at(k, d - k) = std::conj(j(d - k, k));
    return r;
}

Jet3 compose_jets(const Jet3& outer, const Jet3& inner) {
    if (inner(0, 0) != cplx(0.0, 0.0)) throw ContractError("inner jet must vanish at the origin");
    const Jet3 inner_bar = conj_jet(inner);
    // Powers of the substituted variables; index 0 is the constant 1.
    std::array<Jet3, 4> zp, wp;
    zp[0] = wp[0] = Jet3::monomial(0, 0, 1.0);
    for (int i = 1; i <= 3; ++i) {
        zp[i] = zp[i - 1] * inner;
        wp[i] = wp[i - 1] * inner_bar;
    }
    Jet3 r;
    for (int d = 0; d <= Jet3::kDegree; ++d)
        for (int k = 0; k <= d; ++k) {
            const cplx v = outer(d - k, k);
            if (v == cplx(0.0, 0.0)) continue;
            r += (zp[d - k] * wp[k]) * v;
        }
    return r;
}

Jet3 coord_change1(const Jet3& jet) {
    const cplx a = jet(1, 0);
    const cplx b = jet(0, 1);
    if (std::abs(b) < 1e-14) return jet;
    if (std::abs(b) >= std::abs(a.imag()))
        throw ResonanceError("linear part has no complex-conjugate eigenvalue pair (|b| >= |Im a|)");

    const cplx temp = a - std::conj(a);
    const cplx c = (temp + std::sqrt(temp * temp + 4.0 * b * std::conj(b))) / (2.0 * std::conj(b));
    const double cc = std::norm(c);
    if (std::abs(cc - 1.0) < 1e-10) throw ResonanceError("coordinate change is not invertible (|c| = 1)");

    Jet3 next = compose_jets(jet, Jet3::linear(c, 1.0));
    next = (std::conj(c) * next - conj_jet(next)) * cplx(1.0 / (cc - 1.0), 0.0);

    Jet3 out;
    for (int d = 0; d <= Jet3::kDegree; ++d)
        for (int k = 0; k <= d; ++k) out.at(d - k, k) = chop_small(next(d - k, k));
    return out;
}

namespace {

Jet3 quadratic_change(const std::array<cplx, 3>& a) {
    Jet3 l1 = Jet3::monomial(1, 0, 2.0);
    for (std::size_t i = 0; i < kQuadratic.size(); ++i) l1.at(kQuadratic[i].first, kQuadratic[i].second) = a[i];
    return l1;
}

// returnJet∘L1 - L1∘NormalJet
Jet3 conjugacy_residual(const Jet3& f, const std::array<cplx, 3>& a, const Jet3& normal) {
    const Jet3 l1 = quadratic_change(a);
    return compose_jets(f, l1) - compose_jets(l1, normal);
}

Eigen::Matrix<double, 6, 1> quadratic_part(const Jet3& j) {
    Eigen::Matrix<double, 6, 1> v;
    for (std::size_t i = 0; i < kQuadratic.size(); ++i) {
        const cplx q = j(kQuadratic[i].first, kQuadratic[i].second);
        v(2 * i) = q.real();
        v(2 * i + 1) = q.imag();
    }
    return v;
}

}  // namespace

NormalFormDetail normal_form3_detail(const Jet3& input) {
    NormalFormDetail out;
    out.normalized = coord_change1(chop_jet3(input));
    const Jet3& f = out.normalized;
    out.u = f(1, 0);
    for (int q = 1; q <= 4; ++q)
        if (std::abs(std::pow(out.u, q) - 1.0) < kResonanceTolerance)
            throw ResonanceError("eigenvalue is within tolerance of a root of unity of order " + std::to_string(q));

    // The quadratic coefficients of the residual are real-affine in
    // (Re a_i, Im a_i), because conj_jet brings in the conjugates of a_i.
    const Jet3 linear_normal = Jet3::monomial(1, 0, out.u);
    const std::array<cplx, 3> zero{};
    const auto base = quadratic_part(conjugacy_residual(f, zero, linear_normal));
    Eigen::Matrix<double, 6, 6> m;
    for (int col = 0; col < 6; ++col) {
        std::array<cplx, 3> e{};
        e[col / 2] = (col % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        m.col(col) = quadratic_part(conjugacy_residual(f, e, linear_normal)) - base;
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(5) > 1e-12 * sv(0))) throw ResonanceError("quadratic homological system is singular");
    const Eigen::Matrix<double, 6, 1> x = svd.solve(-base);
    for (int i = 0; i < 3; ++i) out.a[i] = cplx(x(2 * i), x(2 * i + 1));

    // Each cubic normal-form coefficient enters the residual affinely.
    const Jet3 r0 = conjugacy_residual(f, out.a, linear_normal);
    Jet3 normal = linear_normal;
    for (const auto& [j, k] : kCubic) {
        const Jet3 r1 = conjugacy_residual(f, out.a, linear_normal + Jet3::monomial(j, k, 1.0));
        const cplx slope = r1(j, k) - r0(j, k);
        normal.at(j, k) = -r0(j, k) / slope;
    }
    out.b2 = normal(2, 1);
    out.residual = conjugacy_residual(f, out.a, normal);
    out.value = out.b2 / out.u;
    return out;
}

cplx normal_form3(const Jet3& j) { return normal_form3_detail(j).value; }

}  // namespace qcdyn

#include "qcdyn/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "qcdyn/errors.hpp"
#include "qcdyn/format.hpp"
#include "qcdyn/jet.hpp"
#include "qcdyn/parallel.hpp"

namespace qcdyn {

cplx hopf_fixed_point(double alpha, double theta) {
    if (!(alpha > 0.5)) throw DomainError("Hopf analysis requires alpha > 1/2");
    const double r = std::pow(4.0 * alpha, 1.0 / (2.0 - 4.0 * alpha));
    const double cos_arg =
        std::cos(theta) * std::pow(4.0 * alpha, (alpha - 1.0) / (2.0 * alpha - 1.0)) / (alpha + 1.0);
    if (std::abs(cos_arg) > 1.0) throw EigenvalueError("eigenvalues are not complex conjugates");
    return std::polar(r, std::acos(cos_arg));
}

cplx hopf_fixed_point_at_eigenangle(double alpha, double psi) {
    if (!(alpha > 0.5)) throw DomainError("Hopf analysis requires alpha > 1/2");
    const double r = std::pow(4.0 * alpha, 1.0 / (2.0 - 4.0 * alpha));
    // trace 2(α+1) r^{2α-1} cos(arg z) = 2 cos ψ, with r^{2α-1} = (4α)^{-1/2}
    const double cos_arg = std::cos(psi) * std::sqrt(4.0 * alpha) / (alpha + 1.0);
    if (std::abs(cos_arg) > 1.0) throw EigenvalueError("eigenvalues are not complex conjugates");
    return std::polar(r, std::acos(cos_arg));
}

double hopf_eigenangle(double alpha, double theta) {
    const cplx z0 = hopf_fixed_point(alpha, theta);
    const double half_trace = (alpha + 1.0) * std::pow(std::abs(z0), 2.0 * alpha - 1.0) * std::cos(std::arg(z0));
    return std::acos(std::clamp(half_trace, -1.0, 1.0));
}

bool is_low_order_resonant(double theta, double tol) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int q = 1; q <= 4; ++q)
        for (int p = 0; p <= q; ++p) {
            const double d = std::remainder(theta - two_pi * p / q, two_pi);
            if (std::abs(d) < tol) return true;
        }
    return false;
}

double hopf_number(double alpha, double theta) {
    const cplx z0 = hopf_fixed_point(alpha, theta);
    if (is_low_order_resonant(theta, kResonanceTolerance))
        throw ResonanceError("eigenvalue angle is near a root of unity of order <= 4");
    return normal_form3(jet_of_map(alpha, z0)).real();
}

double hopf_number_at_eigenangle(double alpha, double psi) {
    const cplx z0 = hopf_fixed_point_at_eigenangle(alpha, psi);
    if (is_low_order_resonant(psi, kResonanceTolerance))
        throw ResonanceError("eigenvalue angle is near a root of unity of order <= 4");
    return normal_form3(jet_of_map(alpha, z0)).real();
}

double beta_from_alpha(double alpha) { return std::isinf(alpha) ? 1.0 : 1.0 - 1.0 / alpha; }

double alpha_from_beta(double beta) {
    if (beta == 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (1.0 - beta);
}

const char* to_string(HopfStatus s) {
    switch (s) {
        case HopfStatus::Ok: return "ok";
        case HopfStatus::NotConjugate: return "not_conjugate";
        case HopfStatus::Resonant: return "resonant";
    }
    return "unknown";
}

std::vector<HopfSample> hopf_sweep(const std::vector<double>& alphas, const std::vector<double>& thetas) {
    std::vector<HopfSample> table(alphas.size() * thetas.size());
    parallel_for(table.size(), [&](std::size_t i) {
        HopfSample s{alphas[i / thetas.size()], thetas[i % thetas.size()], std::numeric_limits<double>::quiet_NaN(),
                     HopfStatus::Ok};
        try {
            s.value = hopf_number(s.alpha, s.theta);
        } catch (const EigenvalueError&) {
            s.status = HopfStatus::NotConjugate;
        } catch (const ResonanceError&) {
            s.status = HopfStatus::Resonant;
        }
        table[i] = s;
    });
    return table;
}

void write_hopf_csv(std::ostream& os, const std::vector<HopfSample>& table) {
    os << "alpha,beta,theta,hopf_number,status\n";
    for (const auto& s : table)
        os << fmt_double(s.alpha) << ',' << fmt_double(beta_from_alpha(s.alpha)) << ',' << fmt_double(s.theta)
           << ',' << fmt_double(s.value) << ',' << to_string(s.status) << '\n';
}

}  // namespace qcdyn

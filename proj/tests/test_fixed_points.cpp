#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "qcdyn/errors.hpp"
#include "qcdyn/fixed_points.hpp"

using namespace qcdyn;

namespace {

constexpr double kPi = std::numbers::pi;

std::map<StabilityClass, int> class_counts(const std::vector<FixedPointRecord>& pts) {
    std::map<StabilityClass, int> m;
    for (const auto& r : pts) ++m[r.cls];
    return m;
}

double one_minus_tr_plus_det(double alpha, cplx z, double sign) {
    const Jacobian2 j = jacobian({alpha, 0.0}, z);
    return 1.0 - sign * j.trace() + j.det();
}

}  // namespace

TEST(ParamForFixedPoint, Examples) {
    EXPECT_EQ(param_for_fixed_point(0.8, 0.0), cplx(0.0, 0.0));
    for (double alpha : {0.7, 1.0, 2.5})
        for (double y : {-1.3, 0.4, 2.0}) {
            const cplx want(std::pow(std::abs(y), 2 * alpha), y);
            EXPECT_LT(std::abs(param_for_fixed_point(alpha, cplx(0, y)) - want), 1e-13);
        }
    const cplx z(0.3, 0.7);
    EXPECT_LT(std::abs(param_for_fixed_point(1.0, z) - (z - z * z)), 1e-15);
}

TEST(ParamForFixedPoint, FixesTheSourcePointAndCommutesWithConjugation) {
    for (double alpha : {0.6, 1.3, 3.0})
        for (cplx z : {cplx(0.2, -0.9), cplx(-1.1, 0.4), cplx(0.05, 0.01)}) {
            const cplx c = param_for_fixed_point(alpha, z);
            EXPECT_LT(std::abs(apply_map({alpha, c}, z) - z), 1e-12);
            EXPECT_LT(std::abs(param_for_fixed_point(alpha, std::conj(z)) - std::conj(c)), 1e-12);
        }
}

TEST(DeltaCircle, Values) {
    EXPECT_NEAR(delta_circle(1.0), 0.5, 1e-15);
    EXPECT_NEAR(delta_circle(2.0), std::pow(8.0, -1.0 / 6), 1e-15);
    EXPECT_THROW(delta_circle(0.5), DomainError);
    for (double alpha : {0.55, 0.8, 1.7, 4.0})
        for (double t = 0; t < 6.2; t += 0.5)
            EXPECT_NEAR(jacobian({alpha, 0.0}, std::polar(delta_circle(alpha), t)).det(), 1.0, 1e-10);
}

TEST(GammaPlus, Examples) {
    auto r = gamma_plus(1.0, 0.0);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0], 0.5, 1e-15);

    r = gamma_plus(2.0, 0.0);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0], std::cbrt(0.5), 1e-15);
    EXPECT_NEAR(r[1], std::cbrt(0.25), 1e-15);
    for (double rad : r) EXPECT_NEAR(one_minus_tr_plus_det(2.0, rad, 1.0), 0.0, 1e-12);

    const double tm = gamma_sector_half_width(0.75);
    EXPECT_TRUE(gamma_plus(0.75, tm + 1e-3).empty());
    EXPECT_TRUE(gamma_plus(0.75, kPi).empty());
    EXPECT_EQ(gamma_plus(0.75, tm - 1e-3).size(), 2u);
}

TEST(GammaMinus, IsNegatedGammaPlus) {
    for (double t : {-2.9, 3.0, 0.1}) EXPECT_EQ(gamma_minus(1.5, t), gamma_plus(1.5, t + kPi));
    for (double alpha : {0.8, 2.0}) {
        const auto plus = sample_curve(alpha, CurveKind::GammaPlus, 128);
        const auto minus = sample_curve(alpha, CurveKind::GammaMinus, 128);
        ASSERT_EQ(plus.points.size(), minus.points.size());
        for (std::size_t k = 0; k < plus.points.size(); ++k) EXPECT_EQ(minus.points[k], -plus.points[k]);
    }
}

TEST(Curves, DefiningEquationsOnSamples) {
    for (double alpha : {0.6, 0.8, 1.5, 2.0, 5.0}) {
        for (const cplx z : sample_curve(alpha, CurveKind::Delta, 200).points)
            EXPECT_NEAR(jacobian({alpha, 0.0}, z).det(), 1.0, 1e-9);
        for (const cplx z : sample_curve(alpha, CurveKind::GammaPlus, 200).points)
            EXPECT_NEAR(one_minus_tr_plus_det(alpha, z, 1.0), 0.0, 1e-9);
        for (const cplx z : sample_curve(alpha, CurveKind::GammaMinus, 200).points)
            EXPECT_NEAR(one_minus_tr_plus_det(alpha, z, -1.0), 0.0, 1e-9);
    }
}

TEST(Curves, PolylineInvariants) {
    for (auto kind : {CurveKind::Delta, CurveKind::GammaPlus, CurveKind::GammaMinus}) {
        const Polyline line = trace_curve_image(0.8, kind, 64);
        EXPECT_TRUE(line.closed);
        ASSERT_EQ(line.points.size(), 64u);
        for (std::size_t k = 0; k + 1 < line.points.size(); ++k) EXPECT_NE(line.points[k], line.points[k + 1]);
    }
    EXPECT_THROW(trace_curve_image(0.8, CurveKind::Delta, 8), DomainError);
}

TEST(Curves, CardioidAtAlphaOne) {
    const Polyline line = trace_curve_image(1.0, CurveKind::Delta, 64);
    EXPECT_LT(std::abs(line.points[0] - 0.25), 1e-12);
    for (std::size_t k = 0; k < line.points.size(); ++k) {
        const cplx e = std::polar(1.0, 2 * kPi * k / 64);
        EXPECT_LT(std::abs(line.points[k] - (e / 2.0 - e * e / 4.0)), 1e-12);
    }
}

TEST(Curves, GammaImagesCollapseAtAlphaOne) {
    for (auto kind : {CurveKind::GammaPlus, CurveKind::GammaMinus}) {
        const Polyline line = trace_curve_image(1.0, kind, 32);
        double diam = 0;
        for (const cplx a : line.points)
            for (const cplx b : line.points) diam = std::max(diam, std::abs(a - b));
        EXPECT_LT(diam, 1e-6);
        EXPECT_LT(std::abs(line.points[0].imag()), 1e-12);
    }
}

TEST(Curves, LimaconSelfIntersectsBelowOne) {
    // The image of δ winds twice around points inside its inner loop.
    const Polyline line = trace_curve_image(0.8, CurveKind::Delta, 2000);
    auto winding = [&](cplx q) {
        double total = 0;
        for (std::size_t k = 0; k < line.points.size(); ++k) {
            const cplx a = line.points[k] - q, b = line.points[(k + 1) % line.points.size()] - q;
            total += std::arg(b / a);
        }
        return static_cast<int>(std::lround(total / (2 * kPi)));
    };
    int max_w = 0;
    for (double x = -1.0; x <= 0.5; x += 0.005) max_w = std::max(max_w, std::abs(winding(x)));
    EXPECT_EQ(max_w, 2);
}

TEST(DetectCusps, ThreeWithOneReal) {
    for (double alpha : {0.6, 0.8, 1.5, 2.0, 4.0}) {
        const auto cusps = detect_cusps(alpha, 2000);
        ASSERT_EQ(cusps.size(), 3u) << alpha;
        int real = 0;
        for (const cplx c : cusps) real += c.imag() == 0.0;
        EXPECT_EQ(real, 1) << alpha;
        // The other two are conjugates.
        std::vector<cplx> cx;
        for (const cplx c : cusps)
            if (c.imag() != 0.0) cx.push_back(c);
        ASSERT_EQ(cx.size(), 2u);
        EXPECT_LT(std::abs(cx[0] - std::conj(cx[1])), 1e-8);
    }
}

TEST(DetectCusps, CuspsLieOnGammaPlusImage) {
    // At a cusp the source point is on γ+ and Dp kills the tangent.
    const double alpha = 2.0;
    const auto cusps = detect_cusps(alpha, 2000);
    const Polyline img = trace_curve_image(alpha, CurveKind::GammaPlus, 20000);
    for (const cplx c : cusps) {
        double best = 1e9;
        for (const cplx q : img.points) best = std::min(best, std::abs(q - c));
        EXPECT_LT(best, 1e-3);
    }
}

TEST(DetectCusps, GammaMinusAndDegenerateCases) {
    EXPECT_TRUE(detect_cusps(0.8, 500, CurveKind::GammaMinus).empty());
    EXPECT_TRUE(detect_cusps(2.0, 500, CurveKind::GammaMinus).empty());
    EXPECT_THROW(detect_cusps(1.0, 500), DomainError);
}

TEST(InjectivityProbe, LeftHalfPlane) {
    EXPECT_TRUE(injectivity_probe(0.75, 10000, 42));
    EXPECT_TRUE(injectivity_probe(2.0, 10000, 42));
}

TEST(ClassifyEigenvalues, Bands) {
    EXPECT_EQ(classify_eigenvalues({0.5, 0.9}), StabilityClass::Attracting);
    EXPECT_EQ(classify_eigenvalues({2.0, 1.1}), StabilityClass::Repelling);
    EXPECT_EQ(classify_eigenvalues({0.5, 1.5}), StabilityClass::Saddle);
    EXPECT_EQ(classify_eigenvalues({1.0 + 1e-10, 0.5}), StabilityClass::Neutral);
    EXPECT_EQ(classify_eigenvalues({std::polar(1.0, 0.3), std::polar(1.0, -0.3)}), StabilityClass::Neutral);
}

TEST(FindFixedPoints, HolomorphicExamples) {
    auto census = find_fixed_points({1.0, 0.0});
    ASSERT_EQ(census.points.size(), 2u);
    EXPECT_LT(std::abs(census.points[0].z), 1e-13);
    EXPECT_EQ(census.points[0].cls, StabilityClass::Attracting);
    EXPECT_EQ(census.points[0].eigenvalues.first, cplx(0.0, 0.0));
    EXPECT_LT(std::abs(census.points[1].z - 1.0), 1e-13);
    EXPECT_EQ(census.points[1].cls, StabilityClass::Repelling);
    EXPECT_NEAR(census.points[1].eigenvalues.first.real(), 2.0, 1e-12);

    census = find_fixed_points({1.0, 0.5});
    ASSERT_EQ(census.points.size(), 2u);
    for (const auto& r : census.points) {
        EXPECT_EQ(r.cls, StabilityClass::Repelling);
        EXPECT_LT(std::abs(r.z * r.z - r.z + 0.5), 1e-12);
    }
}

TEST(FindFixedPoints, RecordInvariants) {
    for (double alpha : {0.75, 2.0})
        for (double c = -1.2; c < 0.6; c += 0.13) {
            const MapParams p{alpha, c};
            for (const auto& r : find_fixed_points(p).points) {
                EXPECT_LT(std::abs(apply_map(p, r.z) - r.z), kFixedPointTolerance);
                EXPECT_EQ(r.cls, classify_eigenvalues(r.eigenvalues));
                EXPECT_NEAR(r.det, std::real(r.eigenvalues.first * r.eigenvalues.second), 1e-9);
            }
        }
}

TEST(FindFixedPoints, TwoAttractorsRegion) {
    const auto census = find_fixed_points({0.75, 0.14});
    const auto counts = class_counts(census.points);
    EXPECT_EQ(census.points.size(), 4u);
    EXPECT_EQ(counts.at(StabilityClass::Attracting), 2);
    EXPECT_EQ(counts.at(StabilityClass::Repelling), 1);
    EXPECT_EQ(counts.at(StabilityClass::Saddle), 1);
}

TEST(FindFixedPoints, DegenerateRootIsNotSmeared) {
    // At this parameter three fixed points merge at z = 1/4.
    const auto census = find_fixed_points({0.75, 0.125});
    EXPECT_EQ(census.points.size(), 2u);
}

TEST(FindFixedPoints, AgreesWithBruteForce) {
    for (double alpha : {0.75, 2.0})
        for (int k = 0; k < 8; ++k) {
            const double c = -1.37 + 0.253 * k;
            const MapParams p{alpha, c};
            const auto census = find_fixed_points(p);
            const auto oracle_roots = oracle::brute_force_fixed_points(p, 1000);
            EXPECT_LE(census.points.size(), 4u);
            EXPECT_TRUE(oracle::same_census(census.points, oracle_roots)) << "alpha=" << alpha << " c=" << c;
        }
}

TEST(FindFixedPoints, Writers) {
    const MapParams p{1.0, 0.0};
    const auto census = find_fixed_points(p);
    std::ostringstream csv;
    write_fixed_points_csv(csv, census.points);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
              "re,im,det,trace,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class");
    EXPECT_NE(csv.str().find(",attracting\n"), std::string::npos);

    std::ostringstream js;
    write_fixed_points_json(js, p, census);
    const auto doc = nlohmann::json::parse(js.str());
    EXPECT_EQ(doc["alpha"], 1.0);
    ASSERT_EQ(doc["fixed_points"].size(), 2u);
    EXPECT_EQ(doc["fixed_points"][1]["class"], "repelling");
    EXPECT_EQ(doc["convergence_warning"], false);

    std::ostringstream pl;
    write_polyline_csv(pl, Polyline{{cplx(1, 2), cplx(0.5, -0.25)}, false});
    EXPECT_EQ(pl.str(), "re,im\n1,2\n0.5,-0.25\n");
}

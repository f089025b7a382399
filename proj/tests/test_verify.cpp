#include "hbvp/errors.hpp"
#include "hbvp/neumann.hpp"
#include "hbvp/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace hbvp {
namespace {

using std::numbers::pi;
using test::data;

VerifySettings light() {
    VerifySettings s;
    s.chords = 0;
    s.residual = false;
    s.quotients = false;
    return s;
}

TEST(LaplacianResidual, HarmonicPolynomial) {
    const auto points = grid_points({.n = 21, .extent = 0.9});
    const auto stats = laplacian_residual([](cplx z) { return (z * z).real(); }, points, 1e-3);
    EXPECT_LT(stats.max, 1e-9);
    EXPECT_GT(stats.points, 0u);
    EXPECT_GT(stats.skipped, 0u);
}

TEST(LaplacianResidual, NonHarmonic) {
    const auto points = grid_points({.n = 11, .extent = 0.5});
    const auto stats = laplacian_residual([](cplx z) { return z.real() * z.real(); }, points, 1e-3);
    EXPECT_NEAR(stats.max, 2.0, 1e-5);
    EXPECT_NEAR(stats.mean, 2.0, 1e-5);
}

TEST(GridPoints, Layout) {
    const auto points = grid_points({.n = 3, .extent = 1.0});
    ASSERT_EQ(points.size(), 9u);
    EXPECT_EQ(points[0], cplx(-1.0, -1.0));
    EXPECT_EQ(points[1], cplx(0.0, -1.0));
    EXPECT_EQ(points[8], cplx(1.0, 1.0));
}

TEST(Verify, ExactNeumannSolution) {
    const auto nu = disk_normal(1024).underlying;
    const auto phi = data("cos(theta)", 1024);
    const auto report = verify_solution(solve_neumann(phi), nu, phi);
    EXPECT_GE(report.pass_fraction, 0.99);
    EXPECT_EQ(report.excluded, report.per_vertex.size() - report.eligible);
    EXPECT_GE(report.aperture_agreement, 0.98);
    EXPECT_EQ(report.chords.count, 20u);
    EXPECT_LT(report.chords.max_error, 1e-6);
    EXPECT_LT(report.residual.max, 1e-6);
}

TEST(Verify, WrongSolutionRejected) {
    const auto nu = disk_normal(512).underlying;
    const auto zero = solve_neumann(data("0", 512));
    const auto report = verify_solution(zero, nu, data("cos(theta)", 512), light());
    EXPECT_LE(report.pass_fraction, 0.05);
}

TEST(Verify, StepDataWithExclusions) {
    const std::size_t n = 1024;
    const auto nu = disk_normal(n).underlying;
    const auto phi = test::step(n);
    auto settings = light();
    settings.tol = 1e-2;
    const auto report = verify_solution(solve_neumann(phi), nu, phi, settings);
    EXPECT_GE(report.pass_fraction, 0.95);
    // zones at 0 (jump of phi and of alpha at the cut) and pi
    EXPECT_NEAR(report.excluded_fraction, 4e-2 / two_pi, 1e-15);
    EXPECT_LE(report.excluded_fraction, report.excluded_bound);
    EXPECT_LE(report.excluded_fraction, 0.05);
    for (const auto& v : report.per_vertex) {
        if (!v.excluded) continue;
        EXPECT_NE(v.reason, Exclusion::none);
        EXPECT_TRUE(std::abs(angular_distance(v.angle, 0.0)) <= 1e-2 + 1e-12 ||
                    std::abs(angular_distance(v.angle, pi)) <= 1e-2 + 1e-12);
    }
}

TEST(Verify, PoleExclusion) {
    const std::size_t n = 512;
    const auto nu = disk_normal(n).underlying;
    const auto phi = data("cos(theta)", n);
    SolverParams params;
    params.hom_points = {cplx(0.0, 1.0)};
    params.hom_coeffs = {0.0, 1.0};
    const auto report = verify_solution(solve_directional(nu, phi, params), nu, phi, light());
    bool pole = false;
    for (const auto& v : report.per_vertex) pole = pole || v.reason == Exclusion::pole;
    EXPECT_TRUE(pole);
    EXPECT_EQ(exclusion_name(Exclusion::pole), "pole");
}

TEST(Verify, TooFewVertices) {
    auto settings = light();
    settings.vertices = 7;
    const auto phi = data("cos(theta)", 64);
    EXPECT_THROW(verify_solution(solve_neumann(phi), disk_normal(64).underlying, phi, settings), ConfigError);
    EXPECT_THROW(verify_solution(solve_neumann(phi), disk_normal(128).underlying, phi), ConfigError);
}

TEST(Verify, DeterministicReport) {
    const auto nu = disk_normal(256).underlying;
    const auto phi = data("cos(theta) + 0.3*sin(2*theta)", 256);
    auto settings = VerifySettings{};
    settings.vertices = 64;
    settings.seed = 42;
    settings.residual = false;
    const auto render = [&] {
        std::ostringstream os;
        write_report(os, verify_solution(solve_neumann(phi), nu, phi, settings), "{}");
        return os.str();
    };
    const std::string first = render();
    EXPECT_EQ(first, render());
    EXPECT_EQ(first.rfind("# hbvp verification report v1\n", 0), 0u);
    EXPECT_NE(first.find("angle,target,estimate,error,converged,excluded,reason\n"), std::string::npos);
    EXPECT_NE(first.find("pass_fraction="), std::string::npos);
}

TEST(Verify, MonotoneRefinement) {
    double previous = 0.0;
    for (std::size_t n : {512u, 2048u}) {
        const auto nu = disk_normal(n).underlying;
        const auto phi = data("exp(cos(theta))*cos(sin(theta))", n);
        const auto report = verify_solution(solve_neumann(phi), nu, phi, light());
        if (previous > 0.0) {
            EXPECT_GE(report.pass_fraction, previous - 0.02);
        }
        previous = report.pass_fraction;
    }
}

TEST(Certificate, ConstantShiftIsIndependent) {
    const auto base = solve_neumann(data("cos(theta)", 256));
    const auto points = certificate_points(16, {});
    EXPECT_GT(dimension_certificate({base, base.with_shift(1.0)}, points), 0.1);
}

TEST(Certificate, DuplicateMemberIsDeficient) {
    const auto base = solve_neumann(data("cos(theta)", 256));
    EXPECT_LT(dimension_certificate({base, base}, certificate_points(16, {})), 1e-12);
}

TEST(Certificate, ZeroMemberAndTooFewPoints) {
    const auto base = solve_neumann(data("cos(theta)", 64));
    const auto zero = solve_neumann(data("0", 64));
    std::string diagnostic;
    EXPECT_EQ(dimension_certificate({base, zero}, certificate_points(8, {}), &diagnostic), 0.0);
    EXPECT_FALSE(diagnostic.empty());
    EXPECT_THROW(dimension_certificate({base, zero}, certificate_points(3, {})), ConfigError);
}

TEST(Certificate, PointsAvoidAngles) {
    const auto points = certificate_points(64, {0.5, 2.0});
    ASSERT_EQ(points.size(), 64u);
    for (const cplx& p : points) {
        EXPECT_GE(std::abs(p), 0.3 - 1e-15);
        EXPECT_LE(std::abs(p), 0.8 + 1e-15);
        EXPECT_GE(std::abs(angular_distance(std::arg(p), 0.5)), 0.05);
        EXPECT_GE(std::abs(angular_distance(std::arg(p), 2.0)), 0.05);
    }
    EXPECT_EQ(certificate_points(10, {}, 3), certificate_points(10, {}, 3));
}

}  // namespace
}  // namespace hbvp

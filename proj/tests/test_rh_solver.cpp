#include "hbvp/direction_solver.hpp"
#include "hbvp/errors.hpp"
#include "hbvp/neumann.hpp"
#include "hbvp/rh_solver.hpp"
#include "hbvp/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace hbvp {
namespace {

using std::numbers::pi;
using test::data;
using test::direction;

constexpr cplx I(0.0, 1.0);

TEST(SolveRh, UnitDirectionCosine) {
    const auto sol = solve_rh(direction("1", 256), data("cos(theta)", 256));
    for (const cplx& z : test::random_points(50, 0.95)) EXPECT_LT(std::abs(sol.f(z) - z), 1e-12);
}

TEST(SolveRh, NeumannTrace) {
    const std::size_t n = 1024;
    const auto sol = solve_rh(disk_normal(n).underlying, data("cos(theta)", n));
    // α = θ − π, A = −2i·log(1 − z)
    for (std::size_t j = 0; j < n; j += 17) EXPECT_NEAR(sol.alpha.real(j), sol.alpha.node(j) - pi, 1e-12);
    for (const cplx& z : test::random_points(20, 0.9)) EXPECT_LT(std::abs(sol.A(z) + 2.0 * I * std::log(1.0 - z)), 1e-11);
    for (std::size_t j = 1; j < n; j += 17) {
        const double t = sol.psi.node(j);
        EXPECT_NEAR(sol.weight.real(j), 2.0 - 2.0 * std::cos(t), 1e-10);
        EXPECT_NEAR(sol.psi.real(j), -1.0 + 2.0 * std::cos(t) - std::cos(2.0 * t), 1e-10);
    }
    for (const cplx& z : test::random_points(20, 0.9, 5)) {
        EXPECT_LT(std::abs(sol.g(z) - (-1.0 + 2.0 * z - z * z)), 1e-10);
        EXPECT_LT(std::abs(sol.f(z) + 1.0), 1e-9);
    }
}

TEST(SolveRh, ZeroDataGivesZero) {
    const auto sol = solve_rh(direction("exp(i*sin(theta))", 128), data("0", 128));
    for (const cplx& z : test::random_points(20, 0.95)) EXPECT_EQ(std::abs(sol.f(z)), 0.0);
}

TEST(SolveRh, Superposition) {
    const std::size_t n = 512;
    const auto nu = direction("exp(i*(theta + 0.3*sin(theta)))", n);
    const auto f1 = solve_rh(nu, data("cos(2*theta)", n));
    const auto f2 = solve_rh(nu, data("exp(sin(theta))", n));
    const auto f12 = solve_rh(nu, data("cos(2*theta) + exp(sin(theta))", n));
    for (const cplx& z : test::random_points(30, 0.9))
        EXPECT_LT(std::abs(f12.f(z) - f1.f(z) - f2.f(z)), 1e-10 * (1.0 + std::abs(f12.f(z))));
}

TEST(SolveRh, Scaling) {
    const std::size_t n = 256;
    const auto nu = direction("exp(i*(theta + 0.3*sin(theta)))", n);
    const auto f1 = solve_rh(nu, data("sin(theta) + 0.5", n));
    const auto f3 = solve_rh(nu, data("3*(sin(theta) + 0.5)", n));
    for (const cplx& z : test::random_points(30, 0.9)) EXPECT_LT(std::abs(f3.f(z) - 3.0 * f1.f(z)), 1e-10);
}

TEST(SolveRh, BoundaryConditionNearCircle) {
    const std::size_t n = 1024;
    const auto nu = direction("exp(i*(0.5 + 0.4*cos(theta)))", n);
    const auto phi = data("exp(cos(theta))*cos(sin(theta))", n);
    const auto sol = solve_rh(nu, phi);
    for (std::size_t j = 0; j < n; j += 31) {
        const cplx z = std::polar(1.0 - 1e-9, phi.node(j));
        EXPECT_NEAR((nu(phi.node(j)) * sol.f(z)).real(), phi.real(j), 1e-6);
    }
}

TEST(SolveRh, MismatchedNodeCounts) {
    EXPECT_THROW(solve_rh(direction("1", 64), data("1", 128)), ConfigError);
}

TEST(HomogeneousFamily, UnitDirectionMembers) {
    const std::vector<cplx> poles{I, -1.0};
    const auto family = homogeneous_family(direction("1", 256), poles);
    ASSERT_EQ(family.size(), 3u);
    const cplx z(0.2, -0.3);
    EXPECT_LT(std::abs(family[0].f(z) - I), 1e-14);
    EXPECT_LT(std::abs(family[1].f(z) + (I + z) / (I - z)), 1e-13);
    EXPECT_LT(std::abs(family[2].f(z) + (-1.0 + z) / (-1.0 - z)), 1e-13);
}

TEST(HomogeneousFamily, MembersHaveZeroBoundaryData) {
    const std::size_t n = 512;
    const auto nu = disk_normal(n).underlying;
    const auto family = homogeneous_family(nu, {I, std::polar(1.0, 4.0)});
    for (const auto& member : family) {
        for (double t = 0.1; t < two_pi; t += 0.37) {
            if (std::abs(angular_distance(t, pi / 2)) < 0.05 || std::abs(angular_distance(t, 4.0)) < 0.05) continue;
            const cplx z = std::polar(1.0 - 1e-10, t);
            const cplx value = -std::polar(1.0, t) * member.f(z);
            EXPECT_LT(std::abs(value.real()), 1e-6 * (1.0 + std::abs(value)));
        }
    }
}

TEST(HomogeneousPoints, Validation) {
    const auto nu = direction("1", 64);
    EXPECT_THROW(check_hom_points({I, I}, nu), ConfigError);
    EXPECT_THROW(check_hom_points({cplx(0.5, 0.0)}, nu), ConfigError);
    EXPECT_NO_THROW(check_hom_points({I, -I}, nu));
    const DirectionField flip(build_boundary_function({{"0", "pi", "1"}, {"pi", "2*pi", "-1"}}, 64, ValueKind::complex));
    EXPECT_THROW(check_hom_points({-1.0}, flip), ConfigError);
    SolverParams params;
    params.hom_points = {I, I};
    params.hom_coeffs = {0.0, 1.0, 1.0};
    EXPECT_THROW(solve_rh(nu, data("1", 64), params), ConfigError);
}

TEST(HomogeneousPoints, DefaultsAvoidJumps) {
    const auto points = default_hom_points(4, {pi / 4});
    ASSERT_EQ(points.size(), 4u);
    for (const cplx& p : points) {
        EXPECT_NEAR(std::abs(p), 1.0, 1e-15);
        EXPECT_GE(std::abs(angular_distance(std::arg(p), pi / 4)), 0.05);
    }
}

TEST(SolveRh, ActivePoles) {
    SolverParams params;
    params.hom_points = {I, -I};
    params.hom_coeffs = {0.5, 0.0, 2.0};
    const auto sol = solve_rh(direction("1", 64), data("0", 64), params);
    const auto active = sol.active_pole_angles();
    ASSERT_EQ(active.size(), 1u);
    EXPECT_NEAR(angular_distance(active[0], -pi / 2), 0.0, 1e-15);
    EXPECT_LT(std::abs(sol.f(0.3) - (0.5 * I - 2.0 * (-I + 0.3) / (-I - 0.3))), 1e-13);
}

TEST(SolveRh, CauchyRiemannResidual) {
    const std::size_t n = 512;
    const auto nu = direction("exp(i*(theta + 0.3*sin(theta)))", n);
    const auto sol = solve_directional(nu, data("cos(theta) + 0.2*sin(3*theta)", n));
    const double h = 1e-5;
    for (const cplx& z : test::random_points(20, 0.8)) {
        const double ux = (sol.u(z + h) - sol.u(z - h)) / (2 * h);
        const double uy = (sol.u(z + I * h) - sol.u(z - I * h)) / (2 * h);
        EXPECT_LT(std::abs(cplx(ux, -uy) - sol.f(z)), 1e-6);
    }
}

VerifySettings quick_settings() {
    VerifySettings s;
    s.chords = 0;
    s.residual = false;
    s.quotients = false;
    s.radial = false;
    return s;
}

TEST(SolveRh, VerifiedWithHomogeneousMembers) {
    const std::size_t n = 1024;
    const auto nu = disk_normal(n).underlying;
    const auto phi = data("cos(theta)", n);
    const auto base = verify_solution(solve_neumann(phi), nu, phi, quick_settings());
    EXPECT_GE(base.pass_fraction, 0.95);
    for (std::size_t member = 0; member < 2; ++member) {
        SolverParams params;
        params.hom_points = {I};
        params.hom_coeffs = {0.0, 0.0};
        params.hom_coeffs[member] = 1.0;
        const auto report = verify_solution(solve_directional(nu, phi, params), nu, phi, quick_settings());
        EXPECT_GE(report.pass_fraction, 0.95) << "member " << member;
        EXPECT_NEAR(report.pass_fraction, base.pass_fraction, 0.02) << "member " << member;
    }
}

}  // namespace
}  // namespace hbvp

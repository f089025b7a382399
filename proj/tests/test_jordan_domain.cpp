#include "hbvp/errors.hpp"
#include "hbvp/jordan_domain.hpp"
#include "hbvp/neumann.hpp"
#include "hbvp/verify.hpp"
#include "support.hpp"

#include <boost/math/special_functions/ellint_2.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <memory>

namespace hbvp {
namespace {

using test::data;

double ellipse(double a) {
    const double c = std::cos(a);
    const double s = std::sin(a);
    return 0.8 / std::sqrt(0.64 * c * c + s * s);
}

std::shared_ptr<const ConformalMap> ellipse_map() {
    static const auto map = std::make_shared<const ConformalMap>(theodorsen_map(ellipse));
    return map;
}

TEST(Theodorsen, UnitCircleIsIdentity) {
    const auto map = theodorsen_map([](double) { return 1.0; });
    EXPECT_LT(map.residual, 1e-12);
    for (const cplx& z : test::random_points(30, 1.0)) EXPECT_LT(std::abs(map(z) - z), 1e-12);
    for (std::size_t j = 0; j < map.size(); j += 13) EXPECT_NEAR(map.sigma().real(j), map.sigma().node(j), 1e-12);
}

TEST(Theodorsen, ScaledCircle) {
    const auto map = theodorsen_map([](double) { return 2.0; }, {.n = 64});
    for (const cplx& z : test::random_points(30, 1.0)) EXPECT_LT(std::abs(map(z) - 2.0 * z), 1e-13);
    EXPECT_NEAR(map.derivative(0.3).real(), 2.0, 1e-13);
}

TEST(Theodorsen, Ellipse) {
    const auto& map = *ellipse_map();
    EXPECT_LT(map.residual, 1e-6);
    EXPECT_LE(map.iterations, 200u);
    EXPECT_NEAR(std::abs(map(0.0)), 0.0, 1e-15);
    EXPECT_GT(map.derivative(0.0).real(), 0.0);
    EXPECT_NEAR(map.derivative(0.0).imag(), 0.0, 1e-14);
    EXPECT_GT(map.min_derivative, 0.0);
    for (const cplx& z : test::random_points(30, 0.99)) EXPECT_LT(std::abs(map(std::conj(z)) - std::conj(map(z))), 1e-12);
    for (double t = 0.0; t < two_pi; t += 0.3) {
        const cplx w = map(std::polar(1.0, t));
        EXPECT_NEAR(std::abs(w), ellipse(std::arg(w)), 1e-6);
    }
}

TEST(Theodorsen, EllipsePerimeter) {
    const auto s = natural_parameter(*ellipse_map());
    ASSERT_EQ(s.size(), ellipse_map()->size() + 1);
    EXPECT_NEAR(s.front(), 0.0, 1e-15);
    EXPECT_NEAR(s.back(), 4.0 * boost::math::ellint_2(0.6), 1e-9);
    for (std::size_t j = 1; j < s.size(); ++j) EXPECT_GT(s[j], s[j - 1]);
}

TEST(Theodorsen, EpsilonConditionViolated) {
    EXPECT_THROW(theodorsen_map([](double a) { return std::exp(1.5 * std::cos(a)); }), DomainError);
    EXPECT_THROW(theodorsen_map([](double a) { return std::cos(a); }), DomainError);
}

TEST(Theodorsen, IterationLimit) {
    try {
        theodorsen_map(ellipse, {.n = 256, .max_iter = 2});
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("did not converge in 2 "), std::string::npos);
    }
}

TEST(ConformalMap, InverseRoundTrip) {
    const auto& map = *ellipse_map();
    for (const cplx& z : test::random_points(30, 0.99, 17)) EXPECT_LT(std::abs(map.inverse(map(z)) - z), 1e-11);
    EXPECT_THROW(map.inverse(cplx(0.0, 0.9)), DomainError);
    EXPECT_TRUE(map.contains(cplx(0.0, 0.79)));
    EXPECT_FALSE(map.contains(cplx(0.0, 0.81)));
}

TEST(ConformalMap, NormalPointsInward) {
    const auto& map = *ellipse_map();
    const auto lambda = map_normal(map);
    for (std::size_t j = 0; j < lambda.size(); j += 29) {
        const double t = lambda.base().node(j);
        EXPECT_TRUE(map.contains(map(std::polar(1.0, t)) * 1.0 + 1e-3 * lambda(t)));
        EXPECT_NEAR(std::abs(lambda(t)), 1.0, 1e-12);
    }
}

TEST(Transplant, IdentityMapReduces) {
    const auto map = std::make_shared<const ConformalMap>(theodorsen_map([](double) { return 1.0; }, {.n = 256}));
    const auto lambda = test::direction("exp(i*0.3*cos(theta))", 256);
    const auto phi = data("sin(theta) + 0.2", 256);
    const auto mapped = transplant_solve(map, lambda, pull_back(phi, *map));
    const auto direct = solve_directional(lambda, phi);
    for (const cplx& z : test::random_points(30, 0.95)) EXPECT_NEAR(mapped.u(z), direct.u(z), 1e-10);
}

TEST(Transplant, ScaledDiskNeumann) {
    const auto map = std::make_shared<const ConformalMap>(theodorsen_map([](double) { return 2.0; }, {.n = 1024}));
    // φ(w) = Re(w)/2 on |w| = 2, i.e. cos of the polar angle
    const auto sol = solve_neumann(data("cos(theta)", 1024), map);
    const double c = sol.u(0.0);
    std::size_t checked = 0;
    for (const cplx& w : grid_points({.n = 11, .extent = 1.8})) {
        if (std::abs(w) > 1.8) continue;
        EXPECT_NEAR(sol.u(w), -w.real() + c, 1e-6);
        ++checked;
    }
    EXPECT_GE(checked, 50u);
}

TEST(Transplant, EllipseZeroData) {
    const auto sol = solve_neumann(data("0", 1024), ellipse_map());
    for (const cplx& z : test::random_points(20, 0.7)) EXPECT_NEAR(sol.u(z), 0.0, 1e-14);
}

TEST(Transplant, EllipseSymmetry) {
    const auto sol = solve_neumann(data("cos(theta)", 1024), ellipse_map());
    for (const cplx& z : test::random_points(20, 0.75, 3)) EXPECT_NEAR(sol.u(z), sol.u(std::conj(z)), 1e-8);
}

TEST(PullBack, JumpsMoveWithCorrespondence) {
    const auto& map = *ellipse_map();
    const auto phi = build_boundary_function({{"0", "1", "1"}, {"1", "2*pi", "0"}}, 1024, ValueKind::real);
    const auto tilde = pull_back(phi, map);
    ASSERT_EQ(tilde.jumps().size(), 2u);
    for (const auto& jp : tilde.jumps()) {
        const double a = wrap_angle(map.correspondence(jp.angle));
        EXPECT_TRUE(std::abs(angular_distance(a, 0.0)) < 1e-10 || std::abs(angular_distance(a, 1.0)) < 1e-10);
    }
}

}  // namespace
}  // namespace hbvp

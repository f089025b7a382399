#include "hbvp/boundary_function.hpp"
#include "hbvp/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace hbvp {
namespace {

using test::data;

TEST(BoundaryFunction, ConstantSamples) {
    const auto f = data("1", 16);
    ASSERT_EQ(f.size(), 16u);
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(f.real(j), 1.0);
    EXPECT_TRUE(f.jumps().empty());
}

TEST(BoundaryFunction, CosineAtEighthRoots) {
    const auto f = data("cos(theta)", 8);
    const double h = std::sqrt(2.0) / 2.0;
    const double expected[] = {1, h, 0, -h, -1, -h, 0, h};
    for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(f.real(j), expected[j], 1e-15);
}

TEST(BoundaryFunction, StepUsesRightPieceAtJumps) {
    const auto f = test::step(8);
    const double expected[] = {1, 1, 1, 1, 0, 0, 0, 0};
    for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(f.real(j), expected[j]);
    const auto angles = f.jump_angles();
    ASSERT_EQ(angles.size(), 2u);
    EXPECT_EQ(angles[0], 0.0);
    EXPECT_NEAR(angles[1], std::numbers::pi, 1e-15);
    EXPECT_EQ(f.limits(std::numbers::pi).first, cplx(1.0));
    EXPECT_EQ(f.limits(std::numbers::pi).second, cplx(0.0));
    EXPECT_EQ(f.limits(0.0).first, cplx(0.0));
}

TEST(BoundaryFunction, PiecesMustPartitionTheCircle) {
    EXPECT_THROW(build_boundary_function({{"0", "1", "1"}, {"1.5", "2*pi", "0"}}, 16, ValueKind::real), ConfigError);
    EXPECT_THROW(build_boundary_function({{"0", "2", "1"}, {"1.5", "2*pi", "0"}}, 16, ValueKind::real), ConfigError);
    EXPECT_THROW(build_boundary_function({{"0", "pi", "1"}}, 16, ValueKind::real), ConfigError);
    EXPECT_THROW(build_boundary_function({{"0.1", "2*pi", "1"}}, 16, ValueKind::real), ConfigError);
}

TEST(BoundaryFunction, NodeCountMustBePowerOfTwo) {
    EXPECT_THROW(data("1", 100), ConfigError);
    EXPECT_THROW(data("1", 4), ConfigError);
}

TEST(BoundaryFunction, NonFiniteSampleIsDataError) { EXPECT_THROW(data("log(theta)", 16), DataError); }

TEST(BoundaryFunction, ComplexValueOnRealDataIsDataError) { EXPECT_THROW(data("exp(i*theta)", 16), DataError); }

TEST(BoundaryFunction, UnknownVariableIsConfigError) { EXPECT_THROW(data("cos(t)", 16), ConfigError); }

TEST(BoundaryFunction, ResamplingAtTwiceNReproducesEvenSamples) {
    const auto f = build_boundary_function({{"0", "1", "exp(sin(3*theta))"}, {"1", "2*pi", "theta^2 - 1/3"}}, 64,
                                           ValueKind::real);
    const auto g = f.resample(128);
    for (std::size_t j = 0; j < 64; ++j) EXPECT_EQ(g.real(2 * j), f.real(j));
}

TEST(BoundaryFunction, SamplesMatchExpressionAwayFromJumps) {
    const auto f = build_boundary_function({{"0", "2", "sin(theta)"}, {"2", "2*pi", "cos(theta)"}}, 32,
                                           ValueKind::real);
    for (std::size_t j = 0; j < 32; ++j) {
        const double t = f.node(j);
        EXPECT_EQ(f.real(j), t < 2.0 ? std::sin(t) : std::cos(t));
    }
}

TEST(DirectionField, RejectsNonUnitModulus) {
    EXPECT_THROW(test::direction("1.001", 16), InvariantError);
    EXPECT_THROW(DirectionField(data("1", 16)), DataError);
}

TEST(MeasurableArg, IdentityDirection) {
    const auto a = measurable_arg(test::direction("1", 16));
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(a.real(j), 0.0);
    EXPECT_TRUE(a.jumps().empty());
}

TEST(MeasurableArg, ConstantRotation) {
    const auto a = measurable_arg(test::direction("i", 16));
    for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(a.real(j), std::numbers::pi / 2, 1e-15);
}

TEST(MeasurableArg, DiskInnerNormal) {
    const std::size_t n = 64;
    const auto nu = test::direction("-exp(i*theta)", n);
    const auto a = measurable_arg(nu);
    for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(a.real(j), a.node(j) - std::numbers::pi, 1e-13);
        EXPECT_NEAR(std::abs(std::exp(cplx(0.0, a.real(j))) - nu.base().samples()[j]), 0.0, 1e-12);
    }
    ASSERT_EQ(a.jumps().size(), 1u);
    EXPECT_NEAR(a.jumps()[0].size().real(), -two_pi, 1e-12);
    // between nodes the representative follows the same branch
    EXPECT_NEAR(a(1.2345).real(), 1.2345 - std::numbers::pi, 1e-13);
}

TEST(MeasurableArg, ReproducesDirectionWithJumps) {
    const auto nu = DirectionField(build_boundary_function(
        {{"0", "2", "exp(i*(3*theta + sin(theta)))"}, {"2", "4", "-i"}, {"4", "2*pi", "exp(-2*i*theta)"}}, 256,
        ValueKind::complex));
    const auto a = measurable_arg(nu);
    for (std::size_t j = 0; j < 256; ++j)
        EXPECT_LT(std::abs(std::exp(cplx(0.0, a.real(j))) - nu.base().samples()[j]), 1e-12);
}

TEST(MeasurableArg, ReanchoringChangesOnlyByMultiplesOfTwoPi) {
    const auto nu = test::direction("exp(i*(2*theta + 0.5*cos(theta)))", 128);
    const auto a = measurable_arg(nu);
    const auto b = measurable_arg(nu.with_cut(2.5));
    for (std::size_t j = 0; j < 128; ++j) {
        const double k = (a.real(j) - b.real(j)) / two_pi;
        EXPECT_NEAR(k, std::round(k), 1e-12);
    }
}

TEST(MeasurableArg, ContinuousAwayFromCut) {
    const auto a = measurable_arg(test::direction("exp(i*(theta + 2*sin(theta)))", 512));
    for (std::size_t j = 1; j < 512; ++j) EXPECT_LT(std::abs(a.real(j) - a.real(j - 1)), 0.1);
}

}  // namespace
}  // namespace hbvp

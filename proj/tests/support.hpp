#pragma once

#include "hbvp/boundary_function.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace hbvp::test {

inline BoundaryFunction data(const std::string& expr, std::size_t n, ValueKind kind = ValueKind::real) {
    return build_boundary_function({{"0", "2*pi", expr}}, n, kind);
}

inline BoundaryFunction step(std::size_t n) {
    return build_boundary_function({{"0", "pi", "1"}, {"pi", "2*pi", "0"}}, n, ValueKind::real);
}

inline DirectionField direction(const std::string& expr, std::size_t n, double cut = 0.0) {
    return DirectionField(data(expr, n, ValueKind::complex), cut);
}

/// Uniform random points with |z| ≤ radius.
inline std::vector<cplx> random_points(std::size_t count, double radius, unsigned seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(std::polar(radius * std::sqrt(u(rng)), two_pi * u(rng)));
    return out;
}

/// Poisson integral by adaptive Gauss–Kronrod quadrature over the given
/// breakpoints (which must cover [0, 2π] in increasing order).
inline double poisson_quadrature(const std::function<double(double)>& mu, cplx z,
                                 std::vector<double> breaks = {0.0, two_pi}) {
    const double r = std::abs(z);
    const double phi = std::arg(z);
    // 1 − 2r·cos(d) + r² written without cancellation for r near 1
    auto kernel = [&](double t) {
        const double s = std::sin((phi - t) / 2.0);
        return (1.0 - r) * (1.0 + r) / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s) * mu(t);
    };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(kernel, breaks[k], breaks[k + 1], 10, 1e-12);
    return total / two_pi;
}

}  // namespace hbvp::test

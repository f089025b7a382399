#include "hbvp/direction_solver.hpp"

#include "hbvp/errors.hpp"
#include "hbvp/fft.hpp"
#include "hbvp/jordan_domain.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace hbvp {

namespace {

constexpr double panel_floor = 1e-14;

double distance_to_circle(cplx z) { return std::max(1.0 - std::abs(z), panel_floor); }

}  // namespace

cplx integrate_panel(const ComplexFunction& f, cplx a, cplx b) {
    using rule = boost::math::quadrature::gauss<double, 16>;
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    cplx sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0.0) {
            sum += w[k] * f(mid);
        } else {
            sum += w[k] * (f(mid + x[k] * half) + f(mid - x[k] * half));
        }
    }
    return sum * half;
}

cplx integrate_segment(const ComplexFunction& f, cplx a, cplx b) {
    if (std::abs(a) > 1.0 + 1e-14 || std::abs(b) > 1.0 + 1e-14)
        throw DomainError("integration segment leaves the unit disk");
    cplx total = 0.0;
    std::vector<std::pair<cplx, cplx>> stack{{a, b}};
    while (!stack.empty()) {
        const auto [p, q] = stack.back();
        stack.pop_back();
        const double length = std::abs(q - p);
        const double d = std::min(distance_to_circle(p), distance_to_circle(q));
        if (length > d && length > panel_floor) {
            const cplx m = 0.5 * (p + q);
            stack.emplace_back(m, q);
            stack.emplace_back(p, m);
        } else {
            total += integrate_panel(f, p, q);
        }
    }
    return total;
}

Antiderivative::Antiderivative(ComplexFunction f, SeriesEvaluator series, double inner_radius)
    : f_(std::move(f)), series_(std::move(series)), inner_radius_(inner_radius) {}

cplx Antiderivative::operator()(cplx z) const {
    const double r = std::abs(z);
    if (r > 1.0 + 1e-14) throw DomainError("antiderivative evaluated outside the unit disk");
    if (r <= inner_radius_) return series_(z);
    const cplx start = z * (inner_radius_ / r);
    return series_(start) + integrate_segment(f_, start, z);
}

std::vector<cplx> Antiderivative::along(std::span<const cplx> points) const {
    std::vector<cplx> out;
    out.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k == 0 || std::abs(points[k]) <= inner_radius_) {
            out.push_back((*this)(points[k]));
        } else {
            out.push_back(out.back() + integrate_segment(f_, points[k - 1], points[k]));
        }
    }
    return out;
}

Antiderivative antiderivative(ComplexFunction f, std::size_t n, const AntiderivativeParams& params) {
    const double nd = static_cast<double>(n);
    const double rho = params.rho_sample > 0.0 ? params.rho_sample : 1.0 - 4.0 / nd;
    const std::size_t m = params.samples > 0 ? params.samples : 16 * n;
    if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho_sample must lie in (0, 1)");
    if (m < 16) throw ConfigError("antiderivative needs at least 16 samples");

    std::vector<cplx> values(m);
    for (std::size_t j = 0; j < m; ++j) {
        const cplx z = std::polar(rho, two_pi * static_cast<double>(j) / static_cast<double>(m));
        values[j] = f(z);
        if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag()))
            throw NumericalError("integrand is not finite on the sampling circle; use a smaller rho_sample");
    }
    const auto d = dft(values);
    const std::size_t half = m / 2;
    double peak = 0.0;
    for (std::size_t k = 0; k < half; ++k) peak = std::max(peak, std::abs(d[k]));
    double negative = 0.0;
    for (std::size_t k = half; k < m; ++k) negative = std::max(negative, std::abs(d[k]));
    double tail = 0.0;
    for (std::size_t k = 3 * m / 8; k < half; ++k) tail = std::max(tail, std::abs(d[k]));
    if (negative > 1e-9 * peak || tail > 1e-6 * peak)
        throw NumericalError("Taylor coefficients of the integrand do not decay on |z| = " + std::to_string(rho) +
                             "; use a smaller rho_sample");

    std::vector<cplx> coefficients(half + 1, 0.0);
    double scale = 1.0;  // ρ^{-k}
    for (std::size_t k = 0; k < half; ++k) {
        if (std::abs(d[k]) >= 1e-14 * peak) coefficients[k + 1] = d[k] * scale / static_cast<double>(k + 1);
        scale /= rho;
    }
    while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();

    const double inner = std::min(1.0 - 8.0 / nd, rho);
    return Antiderivative(std::move(f), SeriesEvaluator(std::move(coefficients), {}, inner), inner);
}

HarmonicSolution::HarmonicSolution(std::shared_ptr<const AnalyticSolution> source, Antiderivative F, double d0,
                                   std::shared_ptr<const ConformalMap> map)
    : source_(std::move(source)), F_(std::move(F)), d0_(d0), map_(std::move(map)) {}

cplx HarmonicSolution::preimage(cplx w) const {
    if (map_) return map_->inverse(w);
    if (std::abs(w) >= 1.0) throw DomainError("point outside the unit disk");
    return w;
}

double HarmonicSolution::u(cplx w) const { return u_disk(preimage(w)); }

cplx HarmonicSolution::f(cplx w) const { return source_->f(preimage(w)); }

std::array<double, 2> HarmonicSolution::grad(cplx w) const {
    const cplx v = f(w);
    return {v.real(), -v.imag()};
}

HarmonicSolution HarmonicSolution::with_shift(double d0) const {
    HarmonicSolution out = *this;
    out.d0_ = d0;
    return out;
}

HarmonicSolution assemble_disk_solution(AnalyticSolution f, const SolverParams& params) {
    auto source = std::make_shared<const AnalyticSolution>(std::move(f));
    AntiderivativeParams ap{params.rho_sample, params.samples};
    auto F = antiderivative([source](cplx z) { return source->f(z); }, source->alpha.size(), ap);
    HarmonicSolution sol(source, std::move(F), params.d0);
    sol.notes = source->notes;
    return sol;
}

HarmonicSolution solve_directional(const DirectionField& nu, const BoundaryFunction& phi,
                                   const SolverParams& params) {
    return assemble_disk_solution(solve_rh(nu, phi, params), params);
}

double directional_derivative(const HarmonicSolution& sol, cplx z, cplx nu_value) {
    if (std::abs(std::abs(nu_value) - 1.0) > 1e-12) throw DomainError("direction must have unit modulus");
    return (nu_value * sol.f(z)).real();
}

}  // namespace hbvp

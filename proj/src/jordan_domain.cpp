#include "hbvp/jordan_domain.hpp"

#include "hbvp/disk_harmonic.hpp"
#include "hbvp/errors.hpp"
#include "hbvp/fft.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hbvp {

namespace {

double node_angle(std::size_t j, std::size_t n) {
    return two_pi * static_cast<double>(j) / static_cast<double>(n);
}

// Schwarz series of node samples of a smooth real function
SeriesEvaluator smooth_schwarz(const std::vector<double>& values) {
    return schwarz_integral(BoundaryFunction::from_samples(std::span<const double>(values)));
}

// values of the polynomial part of s at the nodes, via one inverse transform
std::vector<cplx> on_nodes(const SeriesEvaluator& s, std::size_t n) {
    std::vector<cplx> padded(n, 0.0);
    const auto& c = s.coefficients();
    for (std::size_t k = 0; k < std::min(c.size(), n); ++k) padded[k] = c[k];
    return idft(padded);
}

void check_radius(const RadiusFunction& rho, std::size_t n) {
    constexpr double h = 1e-5;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = node_angle(j, n);
        const double r = rho(a);
        if (!std::isfinite(r) || r <= 0.0)
            throw DomainError("radius function is not positive and finite at angle " + std::to_string(a));
        const double slope = (rho(a + h) - rho(a - h)) / (2.0 * h);
        if (std::abs(slope / r) >= 1.0)
            throw DomainError("radius function violates |rho'/rho| < 1 at angle " + std::to_string(a));
    }
}

}  // namespace

ConformalMap::ConformalMap(RadiusFunction rho, SeriesEvaluator log_radius, std::size_t n)
    : rho_(std::move(rho)), log_radius_(std::move(log_radius)), n_(n) {
    const auto s_nodes = on_nodes(log_radius_, n);
    std::vector<cplx> rotated(n);
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        rotated[j] = std::exp(s_nodes[j]);
        sigma[j] = node_angle(j, n) + s_nodes[j].imag();
        max_shift_ = std::max(max_shift_, std::abs(s_nodes[j].imag()));
    }
    const auto b = dft(rotated);
    std::vector<cplx> coefficients(n / 2 + 1, 0.0);
    for (std::size_t k = 0; k < n / 2; ++k) coefficients[k + 1] = b[k];
    coefficients[1] = {b[0].real(), 0.0};
    omega_ = SeriesEvaluator(std::move(coefficients));
    omega_prime_ = omega_.differentiated();

    const SeriesEvaluator lr = log_radius_;
    sigma_ = BoundaryFunction::from_samples(std::span<const double>(sigma), {},
                                            [lr](double t) { return cplx(t + lr.boundary(t).imag()); });

    for (std::size_t j = 0; j < 2 * n; ++j) {
        const cplx w = omega_(std::polar(1.0, node_angle(j, 2 * n)));
        residual = std::max(residual, std::abs(std::abs(w) - rho_(std::arg(w))));
    }
    min_derivative = std::abs(omega_prime_(0.0));
    for (int r = 1; r <= 19; ++r) {
        for (int k = 0; k < 256; ++k) {
            const cplx z = std::polar(0.05 * r, two_pi * k / 256.0);
            min_derivative = std::min(min_derivative, std::abs(omega_prime_(z)));
        }
    }
}

double ConformalMap::correspondence(double t) const { return t + log_radius_.boundary(t).imag(); }

double ConformalMap::correspondence_inverse(double a) const {
    const double target = wrap_angle(a);
    const double margin = max_shift_ + 0.1;
    auto g = [&](double t) { return correspondence(t) - target; };
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(g, target - margin, target + margin,
                                                            boost::math::tools::eps_tolerance<double>(52), iterations);
    return wrap_angle(0.5 * (lo + hi));
}

cplx ConformalMap::boundary_point(double t) const {
    const double s = correspondence(t);
    return std::polar(rho_(s), s);
}

cplx ConformalMap::inner_normal(double t) const {
    const cplx d = omega_prime_(std::polar(1.0, t));
    const cplx v = -std::polar(1.0, t) * d;
    return v / std::abs(v);
}

bool ConformalMap::contains(cplx w) const {
    if (w == 0.0) return true;
    return std::abs(w) < rho_(std::arg(w));
}

cplx ConformalMap::inverse(cplx w) const {
    if (w == 0.0) return 0.0;
    const double a = std::arg(w);
    const double edge = rho_(a);
    if (std::abs(w) >= edge) throw DomainError("point outside the mapped domain");
    cplx z = std::polar(std::min(std::abs(w) / edge, 1.0 - 1e-12), correspondence_inverse(a));
    const double tol = 1e-14 * (1.0 + std::abs(w));
    for (int it = 0; it < 100; ++it) {
        const cplx residual_w = omega_(z) - w;
        if (std::abs(residual_w) <= tol) return z;
        const cplx d = omega_prime_(z);
        if (d == 0.0) break;
        cplx step = residual_w / d;
        while (std::abs(z - step) >= 1.0) step *= 0.5;
        z -= step;
    }
    if (std::abs(omega_(z) - w) <= 1e-12 * (1.0 + std::abs(w))) return z;
    std::ostringstream os;
    os.precision(17);
    os << "Newton inversion of the conformal map failed at (" << w.real() << ", " << w.imag() << ")";
    throw NumericalError(os.str());
}

ConformalMap theodorsen_map(RadiusFunction rho, const TheodorsenParams& params) {
    const std::size_t n = params.n;
    require_node_count(n, 16, "N");
    check_radius(rho, n);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = node_angle(j, n);
    std::vector<double> history;
    std::vector<double> log_rho(n);
    for (std::size_t it = 1; it <= params.max_iter; ++it) {
        for (std::size_t j = 0; j < n; ++j) log_rho[j] = std::log(rho(sigma[j]));
        const auto shift = on_nodes(smooth_schwarz(log_rho), n);
        double change = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double next = node_angle(j, n) + shift[j].imag();
            change = std::max(change, std::abs(next - sigma[j]));
            sigma[j] = next;
        }
        history.push_back(change);
        if (change < params.fp_tol) {
            for (std::size_t j = 0; j < n; ++j) log_rho[j] = std::log(rho(sigma[j]));
            ConformalMap map(rho, smooth_schwarz(log_rho), n);
            map.iterations = it;
            map.history = std::move(history);
            if (map.min_derivative <= 1e-10 * std::abs(map.derivative(0.0)))
                throw NumericalError("conformal map derivative vanishes inside the disk");
            return map;
        }
    }
    std::ostringstream os;
    os << "Theodorsen iteration did not converge in " << params.max_iter << " iterations; last changes:";
    for (std::size_t k = history.size() > 5 ? history.size() - 5 : 0; k < history.size(); ++k) os << ' ' << history[k];
    throw NumericalError(os.str());
}

BoundaryFunction pull_back(const BoundaryFunction& phi, const ConformalMap& map) {
    const std::size_t n = map.size();
    std::vector<cplx> values(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = phi(wrap_angle(map.correspondence(node_angle(j, n))));
    std::vector<Jump> jumps;
    for (const auto& jp : phi.jumps()) jumps.push_back({map.correspondence_inverse(jp.angle), jp.left, jp.right});
    const std::function<double(double)> sig = [s = map.sigma()](double t) { return s(t).real(); };
    return BoundaryFunction::from_samples(std::move(values), phi.kind(), std::move(jumps),
                                          [phi, sig](double t) { return phi(wrap_angle(sig(t))); });
}

DirectionField pull_back_direction(const std::function<cplx(cplx)>& nu, const ConformalMap& map, double cut) {
    const std::size_t n = map.size();
    std::vector<cplx> values(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = nu(map.boundary_point(node_angle(j, n)));
    const ConformalMap copy = map;
    return DirectionField(BoundaryFunction::from_samples(std::move(values), ValueKind::complex, {},
                                                         [nu, copy](double t) { return nu(copy.boundary_point(t)); }),
                          cut);
}

DirectionField map_normal(const ConformalMap& map, double cut) {
    const std::size_t n = map.size();
    std::vector<cplx> values(n);
    std::size_t outward = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = node_angle(j, n);
        values[j] = map.inner_normal(t);
        const cplx b = map.boundary_point(t);
        if (!map.contains(b + 1e-6 * (1.0 + std::abs(b)) * values[j])) ++outward;
    }
    if (outward * 10 > n) throw OrientationError("mapped normal does not point into the domain");
    const ConformalMap copy = map;
    return DirectionField(BoundaryFunction::from_samples(std::move(values), ValueKind::complex, {},
                                                         [copy](double t) { return copy.inner_normal(t); }),
                          cut);
}

std::vector<double> natural_parameter(const ConformalMap& map) {
    const std::size_t n = map.size();
    std::vector<cplx> speed(n);
    for (std::size_t j = 0; j < n; ++j) speed[j] = std::abs(map.derivative(std::polar(1.0, node_angle(j, n))));
    auto c = dft(speed);
    const double mean = c[0].real();
    std::vector<cplx> d(n, 0.0);
    cplx offset = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double kk = static_cast<double>(k);
        d[k] = c[k] / cplx(0.0, kk);
        d[n - k] = c[n - k] / cplx(0.0, -kk);
        offset += d[k] + d[n - k];
    }
    const auto periodic = idft(d);
    std::vector<double> s(n + 1);
    for (std::size_t j = 0; j < n; ++j) s[j] = mean * node_angle(j, n) + (periodic[j] - offset).real();
    s[n] = mean * two_pi;
    return s;
}

HarmonicSolution transplant_solve(std::shared_ptr<const ConformalMap> map, const DirectionField& lambda,
                                  const BoundaryFunction& phi, const SolverParams& params) {
    if (!map) throw ConfigError("transplant_solve needs a conformal map");
    if (map->size() != phi.size())
        throw ConfigError("map has " + std::to_string(map->size()) + " nodes but phi has " + std::to_string(phi.size()));
    auto source = std::make_shared<const AnalyticSolution>(solve_rh(lambda, phi, params));
    AntiderivativeParams ap{params.rho_sample, params.samples};
    auto F = antiderivative([source, map](cplx z) { return source->f(z) * map->derivative(z); }, phi.size(), ap);
    HarmonicSolution sol(source, std::move(F), params.d0, map);
    sol.notes = source->notes;
    return sol;
}

}  // namespace hbvp

#include "hbvp/disk_harmonic.hpp"

#include "hbvp/errors.hpp"
#include "hbvp/fft.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hbvp {

namespace {

double sawtooth(double x) { return 0.5 * (std::numbers::pi - wrap_angle(x)); }

std::vector<LogTerm> jump_terms(const BoundaryFunction& mu) {
    std::vector<LogTerm> logs;
    for (const auto& j : mu.jumps()) {
        if (!j.finite()) continue;
        const double size = j.size().real();
        if (size != 0.0) logs.push_back({j.angle, size / std::numbers::pi});
    }
    return logs;
}

std::string point_text(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << z.real() << ", " << z.imag() << ')';
    return os.str();
}

}  // namespace

SeriesEvaluator schwarz_integral(const BoundaryFunction& mu, SchwarzOptions options) {
    if (!mu.is_real()) throw DataError("Schwarz integral requires real-valued data");
    const std::size_t n = mu.size();
    auto logs = jump_terms(mu);

    std::vector<cplx> remainder(n);
    for (std::size_t j = 0; j < n; ++j) {
        double r = mu.real(j);
        const double theta = mu.node(j);
        for (const auto& t : logs) r -= t.weight * sawtooth(theta - t.angle);
        remainder[j] = r;
    }
    const auto hat = dft(remainder);
    const std::size_t half = n / 2;
    std::vector<cplx> c(half);
    c[0] = hat[0].real();
    for (std::size_t k = 1; k < half; ++k) {
        const double damping = options.fejer ? 1.0 - static_cast<double>(k) / static_cast<double>(half) : 1.0;
        c[k] = 2.0 * damping * hat[k];
    }
    return SeriesEvaluator(std::move(c), std::move(logs), 1.0 - 8.0 / static_cast<double>(n));
}

double poisson_extend(const BoundaryFunction& mu, cplx z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("Poisson extension requires |z| < 1, got " + point_text(z));
    return schwarz_integral(mu)(z).real();
}

BoundaryFunction conjugate_boundary(const BoundaryFunction& mu) {
    const auto s = schwarz_integral(mu);
    const std::size_t n = mu.size();
    const double half_step = std::numbers::pi / static_cast<double>(n);

    std::vector<cplx> h(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = mu.node(j);
        double v = s.boundary(theta).imag();
        if (!std::isfinite(v)) {
            // regularize the singular log terms at this node
            SeriesEvaluator smooth(s.coefficients());
            v = smooth.boundary(theta).imag();
            for (const auto& t : s.log_terms()) {
                const double d = std::abs(angular_distance(theta, t.angle));
                const double dist = d <= angle_tolerance ? half_step : d;
                v += t.weight * std::log(2.0 * std::sin(0.5 * dist));
            }
        }
        h[j] = v;
    }

    std::vector<Jump> jumps;
    for (const auto& t : s.log_terms()) {
        const double inf = std::numeric_limits<double>::infinity();
        const double limit = t.weight > 0.0 ? -inf : inf;
        jumps.push_back({t.angle, limit, limit});
    }
    auto evaluate = [s](double theta) { return cplx(s.boundary(theta).imag(), 0.0); };
    return BoundaryFunction::from_samples(std::move(h), ValueKind::real, std::move(jumps), evaluate);
}

StolzPath::StolzPath(cplx vertex, double aperture, int j_min, int j_max)
    : vertex_(vertex), aperture_(aperture), j_min_(j_min), j_max_(j_max) {
    if (std::abs(std::abs(vertex) - 1.0) > 1e-12) throw InvariantError("Stolz path vertex must have unit modulus");
    if (j_min < 1 || j_max < j_min) throw ConfigError("invalid Stolz path depth range");
    if (j_max > 50) throw ConfigError("Stolz path deeper than double precision allows");
    for (int j = j_min; j <= j_max; ++j) {
        const double gap = std::ldexp(1.0, -j);
        points_.push_back(vertex * (1.0 - gap) * std::polar(1.0, aperture * gap));
    }
}

int StolzPath::default_depth(std::size_t n) {
    return static_cast<int>(std::floor(std::log2(static_cast<double>(n)))) + 14;
}

LimitEstimate assess_limit(std::vector<cplx> points, std::vector<cplx> values, double tol, double radius_cap) {
    LimitEstimate out;
    out.points = std::move(points);
    out.values = std::move(values);
    if (out.values.empty()) return out;
    out.estimate = out.values.back();
    for (const cplx& z : out.points) {
        if (std::abs(z) > radius_cap) ++out.flagged;
    }
    double scale = 0.0;
    for (const cplx& v : out.values) scale = std::max(scale, std::abs(v));
    const double floor = std::max(64.0 * std::numeric_limits<double>::epsilon() * (1.0 + scale), 1e-6 * tol);
    for (std::size_t k = 1; k < out.values.size(); ++k)
        out.differences.push_back(std::abs(out.values[k] - out.values[k - 1]));

    const auto& d = out.differences;
    if (d.size() >= 3) {
        const std::size_t m = d.size();
        const double a = std::max(d[m - 3], floor);
        const double b = std::max(d[m - 2], floor);
        const double c = std::max(d[m - 1], floor);
        out.converged = c <= b && b <= a && d[m - 1] < tol;
    }
    return out;
}

LimitEstimate nontangential_eval(const std::function<cplx(cplx)>& h, const StolzPath& path, double tol,
                                 double radius_cap) {
    std::vector<cplx> values;
    values.reserve(path.points().size());
    for (const cplx& z : path.points()) {
        cplx v;
        try {
            v = h(z);
        } catch (const std::exception& e) {
            throw NumericalError("evaluation failed at " + point_text(z) + ": " + e.what());
        }
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("non-finite value at " + point_text(z));
        values.push_back(v);
    }
    return assess_limit(path.points(), std::move(values), tol, radius_cap);
}

}  // namespace hbvp

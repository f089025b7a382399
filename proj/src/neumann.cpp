#include "hbvp/neumann.hpp"

#include "hbvp/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace hbvp {

namespace {

double winding_number(const std::vector<cplx>& polygon, cplx p) {
    double total = 0.0;
    for (std::size_t j = 0; j < polygon.size(); ++j) {
        const cplx a = polygon[j] - p;
        const cplx b = polygon[(j + 1) % polygon.size()] - p;
        total += std::arg(b / a);
    }
    return total / two_pi;
}

std::optional<std::string> flux_note(double flux, double magnitude) {
    if (std::abs(flux) <= 1e-9 * (1.0 + magnitude)) return std::nullopt;
    std::ostringstream os;
    os.precision(17);
    os << "classical compatibility condition violated: integral of phi ds = " << flux
       << "; no classical Neumann solution exists for these data";
    return os.str();
}

}  // namespace

NormalField inner_normal(const BoundaryParametrization& boundary, std::size_t n, double cut) {
    if (!boundary.point || !boundary.tangent) throw ConfigError("boundary parametrization is incomplete");
    if (!(boundary.length > 0.0)) throw ConfigError("boundary parametrization needs a positive length");
    const double step = boundary.length / static_cast<double>(n);

    std::vector<cplx> points(n);
    std::vector<cplx> normals(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = step * static_cast<double>(j);
        const cplx tau = boundary.tangent(s);
        if (std::abs(std::abs(tau) - 1.0) > 1e-8) {
            std::ostringstream os;
            os << "tangent has modulus " << std::abs(tau) << " at s = " << s << "; expected a natural parameter";
            throw ParametrizationError(os.str());
        }
        points[j] = boundary.point(s);
        normals[j] = cplx(0.0, 1.0) * tau / std::abs(tau);
    }

    std::size_t inward = 0;
    if (boundary.closed) {
        const double w = winding_number(points, boundary.interior_point);
        if (w < -0.5) throw OrientationError("boundary is traversed clockwise");
        if (w < 0.5) throw OrientationError("interior point is not enclosed by the boundary");
        const double h = 0.25 * step;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(winding_number(points, points[j] + h * normals[j])) > 0.5) ++inward;
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            if ((std::conj(normals[j]) * (boundary.interior_point - points[j])).real() > 0.0) ++inward;
        }
    }
    if (inward * 10 < n * 9) throw OrientationError("i*tau does not point into the domain");

    const double length = boundary.length;
    auto evaluate = [tangent = boundary.tangent, length](double angle) {
        const cplx tau = tangent(angle / two_pi * length);
        return cplx(0.0, 1.0) * tau / std::abs(tau);
    };
    return {DirectionField(BoundaryFunction::from_samples(std::move(normals), ValueKind::complex, {}, evaluate), cut),
            NormalSource::parametrization};
}

NormalField disk_normal(std::size_t n, double cut) {
    std::vector<cplx> values(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = -std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
    auto evaluate = [](double theta) { return -std::polar(1.0, theta); };
    return {DirectionField(BoundaryFunction::from_samples(std::move(values), ValueKind::complex, {}, evaluate), cut),
            NormalSource::disk};
}

double boundary_flux(const BoundaryFunction& phi) {
    const auto s = phi.real_samples();
    return two_pi * std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

std::optional<std::string> compatibility_note(const BoundaryFunction& phi) {
    double magnitude = 0.0;
    for (double v : phi.real_samples()) magnitude += std::abs(v);
    magnitude *= two_pi / static_cast<double>(phi.size());
    return flux_note(boundary_flux(phi), magnitude);
}

HarmonicSolution solve_neumann(const BoundaryFunction& phi, const SolverParams& params, double cut) {
    const NormalField normal = disk_normal(phi.size(), cut);
    HarmonicSolution sol = solve_directional(normal.underlying, phi, params);
    if (auto note = compatibility_note(phi)) sol.notes.push_back(*note);
    return sol;
}

HarmonicSolution solve_neumann(const BoundaryFunction& phi, std::shared_ptr<const ConformalMap> map,
                               const SolverParams& params, double cut) {
    if (!map) return solve_neumann(phi, params, cut);
    const BoundaryFunction pulled = pull_back(phi, *map);
    HarmonicSolution sol = transplant_solve(map, map_normal(*map, cut), pulled, params);

    // ∮ φ ds = ∫ φ̃(t)|ω′(e^{it})| dt
    const std::size_t n = pulled.size();
    double flux = 0.0;
    double magnitude = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double speed = std::abs(map->derivative(std::polar(1.0, pulled.node(j))));
        flux += pulled.real(j) * speed;
        magnitude += std::abs(pulled.real(j)) * speed;
    }
    flux *= two_pi / static_cast<double>(n);
    magnitude *= two_pi / static_cast<double>(n);
    if (auto note = flux_note(flux, magnitude)) sol.notes.push_back(*note);
    return sol;
}

}  // namespace hbvp

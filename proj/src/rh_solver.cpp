#include "hbvp/rh_solver.hpp"

#include "hbvp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hbvp {

namespace {

const double weight_clamp = std::log(1e12);

double clamp_conjugate(double h) {
    if (std::isnan(h)) return h;
    return std::clamp(h, -weight_clamp, weight_clamp);
}

std::string angle_text(double a) {
    std::ostringstream os;
    os.precision(17);
    os << a;
    return os.str();
}

const Jump* jump_at(const std::vector<Jump>& jumps, double angle) {
    for (const auto& j : jumps) {
        if (std::abs(angular_distance(j.angle, angle)) <= angle_tolerance) return &j;
    }
    return nullptr;
}

BoundaryFunction zero_data(std::size_t n) {
    return BoundaryFunction::from_samples(std::vector<cplx>(n, 0.0), ValueKind::real, {},
                                          [](double) { return cplx(0.0); });
}

}  // namespace

cplx AnalyticSolution::p(cplx z) const {
    cplx v = hom_coeffs.empty() ? 0.0 : hom_coeffs[0];
    for (std::size_t k = 0; k < hom_points.size(); ++k) {
        const double c = k + 1 < hom_coeffs.size() ? hom_coeffs[k + 1] : 0.0;
        if (c != 0.0) v += c * cplx(0.0, 1.0) * (hom_points[k] + z) / (hom_points[k] - z);
    }
    return v;
}

cplx AnalyticSolution::f(cplx z) const {
    const cplx rotation = std::exp(cplx(0.0, -1.0) * A(z));
    return rotation * (g(z) + cplx(0.0, 1.0) * p(z));
}

std::vector<double> AnalyticSolution::active_pole_angles() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < hom_points.size(); ++k) {
        if (k + 1 < hom_coeffs.size() && hom_coeffs[k + 1] != 0.0) out.push_back(wrap_angle(std::arg(hom_points[k])));
    }
    return out;
}

void check_hom_points(const std::vector<cplx>& points, const DirectionField& nu) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (std::abs(std::abs(points[k]) - 1.0) > 1e-12)
            throw ConfigError("homogeneous point " + std::to_string(k) + " is not on the unit circle");
        for (std::size_t m = 0; m < k; ++m) {
            if (std::abs(points[k] - points[m]) <= 1e-12)
                throw ConfigError("duplicate homogeneous points " + std::to_string(m) + " and " + std::to_string(k));
        }
        if (jump_at(nu.base().jumps(), std::arg(points[k])) != nullptr)
            throw ConfigError("homogeneous point " + std::to_string(k) + " lies on a jump of nu");
    }
}

AnalyticSolution solve_rh(const DirectionField& nu, const BoundaryFunction& phi, const SolverParams& params) {
    const std::size_t n = phi.size();
    require_node_count(n, 16, "N");
    if (nu.size() != n)
        throw ConfigError("nu has " + std::to_string(nu.size()) + " nodes but phi has " + std::to_string(n));
    if (!phi.is_real()) throw DataError("boundary data phi must be real-valued");
    check_hom_points(params.hom_points, nu);
    if (params.hom_coeffs.size() > params.hom_points.size() + 1)
        throw ConfigError("more homogeneous coefficients than homogeneous points + 1");

    AnalyticSolution s;
    s.hom_points = params.hom_points;
    s.hom_coeffs = params.hom_coeffs;
    s.alpha = measurable_arg(nu);
    s.A = schwarz_integral(s.alpha, {params.fejer});

    std::vector<cplx> h(n);
    std::vector<cplx> w(n);
    std::vector<cplx> psi(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double raw = s.A.boundary(phi.node(j)).imag();
        const double hc = clamp_conjugate(raw);
        if (std::isnan(hc)) throw NumericalError("conjugate of alpha is NaN at node " + std::to_string(j));
        if (hc != raw) ++s.clamped;
        h[j] = hc;
        w[j] = std::exp(-hc);
        psi[j] = phi.real(j) * w[j].real();
        if (!std::isfinite(psi[j].real()))
            throw NumericalError("psi is not finite at node " + std::to_string(j) + " (angle " +
                                 angle_text(phi.node(j)) + ")");
    }
    if (s.clamped > 0)
        s.notes.push_back("conjugate of alpha clamped to +-log(1e12) at " + std::to_string(s.clamped) + " node(s)");

    std::vector<Jump> h_jumps;
    for (const auto& t : s.A.log_terms()) {
        const double limit = t.weight > 0.0 ? -std::numeric_limits<double>::infinity()
                                            : std::numeric_limits<double>::infinity();
        h_jumps.push_back({t.angle, limit, limit});
    }
    const SeriesEvaluator A = s.A;
    auto conj_at = [A](double theta) { return clamp_conjugate(A.boundary(theta).imag()); };
    s.conjugate_alpha = BoundaryFunction::from_samples(std::move(h), ValueKind::real, h_jumps,
                                                       [conj_at](double t) { return cplx(conj_at(t)); });
    s.weight = BoundaryFunction::from_samples(std::move(w), ValueKind::real, {},
                                              [conj_at](double t) { return cplx(std::exp(-conj_at(t))); });

    // jumps of ψ: φ's jumps scaled by the weight where it is finite
    std::vector<Jump> psi_jumps;
    for (const auto& jp : phi.jumps()) {
        if (!jp.finite()) continue;
        if (const Jump* ja = jump_at(s.alpha.jumps(), jp.angle)) {
            if (ja->size().real() > 0.0)
                s.notes.push_back("weight is singular at the jump of phi at angle " + angle_text(jp.angle));
            continue;
        }
        const double wc = std::exp(-conj_at(jp.angle));
        psi_jumps.push_back({jp.angle, jp.left.real() * wc, jp.right.real() * wc});
    }
    const BoundaryFunction phi_copy = phi;
    s.psi = BoundaryFunction::from_samples(std::move(psi), ValueKind::real, std::move(psi_jumps),
                                           [phi_copy, conj_at](double t) {
                                               return cplx(phi_copy(t).real() * std::exp(-conj_at(t)));
                                           });
    s.g = schwarz_integral(s.psi, {params.fejer});
    return s;
}

std::vector<AnalyticSolution> homogeneous_family(const DirectionField& nu, const std::vector<cplx>& points) {
    SolverParams params;
    params.hom_points = points;
    const AnalyticSolution base = solve_rh(nu, zero_data(nu.size()), params);
    std::vector<AnalyticSolution> family;
    family.reserve(points.size() + 1);
    for (std::size_t k = 0; k <= points.size(); ++k) {
        AnalyticSolution member = base;
        member.hom_coeffs.assign(points.size() + 1, 0.0);
        member.hom_coeffs[k] = 1.0;
        family.push_back(std::move(member));
    }
    return family;
}

std::vector<cplx> default_hom_points(std::size_t k, const std::vector<double>& avoid) {
    std::vector<cplx> out;
    if (k == 0) return out;
    const double spacing = two_pi / static_cast<double>(k);
    auto clearance = [&](double offset) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j <= k; ++j) {
            const double a = std::numbers::pi * static_cast<double>(2 * j - 1) / static_cast<double>(k) + offset;
            for (double c : avoid) best = std::min(best, std::abs(angular_distance(a, c)));
        }
        return best;
    };
    double offset = 0.0;
    double best = clearance(0.0);
    constexpr int steps = 720;
    for (int s = 1; s < steps && best < 0.05; ++s) {
        // alternate around zero so the smallest rotation wins
        const double magnitude = spacing * 0.5 * static_cast<double>((s + 1) / 2) / (steps / 2);
        const double candidate = s % 2 == 1 ? magnitude : -magnitude;
        const double c = clearance(candidate);
        if (c > best) {
            best = c;
            offset = candidate;
        }
    }
    for (std::size_t j = 1; j <= k; ++j)
        out.push_back(std::polar(1.0, std::numbers::pi * static_cast<double>(2 * j - 1) / static_cast<double>(k) + offset));
    return out;
}

}  // namespace hbvp

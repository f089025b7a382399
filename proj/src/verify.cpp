#include "hbvp/verify.hpp"

#include "hbvp/disk_harmonic.hpp"
#include "hbvp/errors.hpp"
#include "hbvp/jordan_domain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace hbvp {

namespace {

struct ExclusionZone {
    double angle;
    Exclusion reason;
};

void add_zone(std::vector<ExclusionZone>& zones, double angle, Exclusion reason) {
    for (const auto& z : zones) {
        if (std::abs(angular_distance(z.angle, angle)) <= angle_tolerance) return;
    }
    zones.push_back({wrap_angle(angle), reason});
}

std::vector<ExclusionZone> exclusion_zones(const HarmonicSolution& sol, const DirectionField& nu,
                                           const BoundaryFunction& phi) {
    std::vector<ExclusionZone> zones;
    const auto& alpha_jumps = sol.f_source().alpha.jumps();
    for (const auto& j : alpha_jumps) {
        const bool at_cut = std::abs(angular_distance(j.angle, nu.cut())) <= angle_tolerance;
        if (at_cut) add_zone(zones, j.angle, Exclusion::cut);
    }
    for (const auto& j : phi.jumps()) add_zone(zones, j.angle, Exclusion::jump);
    for (const auto& j : nu.base().jumps()) add_zone(zones, j.angle, Exclusion::jump);
    for (const auto& j : alpha_jumps) add_zone(zones, j.angle, Exclusion::jump);
    for (double a : sol.f_source().active_pole_angles()) add_zone(zones, a, Exclusion::pole);
    return zones;
}

Exclusion classify(const std::vector<ExclusionZone>& zones, double angle, double delta) {
    Exclusion best = Exclusion::none;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& z : zones) {
        const double d = std::abs(angular_distance(angle, z.angle));
        if (d < delta && d < nearest) {
            nearest = d;
            best = z.reason;
        }
    }
    return best;
}

// Length of the union of the arcs (c − δ, c + δ) over all zones.
double excluded_arc_length(const std::vector<ExclusionZone>& zones, double delta) {
    if (2.0 * delta >= two_pi) return zones.empty() ? 0.0 : two_pi;
    std::vector<std::pair<double, double>> arcs;
    for (const auto& z : zones) {
        const double lo = z.angle - delta;
        const double hi = z.angle + delta;
        if (lo < 0.0) {
            arcs.emplace_back(lo + two_pi, two_pi);
            arcs.emplace_back(0.0, hi);
        } else if (hi > two_pi) {
            arcs.emplace_back(lo, two_pi);
            arcs.emplace_back(0.0, hi - two_pi);
        } else {
            arcs.emplace_back(lo, hi);
        }
    }
    std::sort(arcs.begin(), arcs.end());
    double total = 0.0;
    double start = 0.0;
    double end = -1.0;
    for (const auto& [lo, hi] : arcs) {
        if (lo > end) {
            if (end > start) total += end - start;
            start = lo;
            end = hi;
        } else {
            end = std::max(end, hi);
        }
    }
    if (end > start) total += end - start;
    return total;
}

// ∫_0^t Re(ν f(b + sν)) ds / t at t = 2^{-j}, returned for the deepest t
std::vector<double> difference_quotients(const ComplexFunction& f, cplx b, cplx dir, int j_lo, int j_hi) {
    std::vector<double> q(static_cast<std::size_t>(j_hi - j_lo + 1));
    double t = std::ldexp(1.0, -j_hi);
    cplx integral = integrate_panel(f, b, b + t * dir);
    q.back() = integral.real() / t;
    for (int j = j_hi - 1; j >= j_lo; --j) {
        const double next = std::ldexp(1.0, -j);
        integral += integrate_segment(f, b + t * dir, b + next * dir);
        t = next;
        q[static_cast<std::size_t>(j - j_lo)] = integral.real() / t;
    }
    return q;
}

}  // namespace

std::string_view exclusion_name(Exclusion reason) {
    switch (reason) {
        case Exclusion::jump: return "jump";
        case Exclusion::cut: return "cut";
        case Exclusion::pole: return "pole";
        case Exclusion::none: break;
    }
    return "-";
}

VerificationReport verify_solution(const HarmonicSolution& sol, const DirectionField& nu, const BoundaryFunction& phi,
                                   const VerifySettings& settings) {
    if (settings.vertices < 8) throw ConfigError("verification needs at least 8 vertices");
    if (settings.apertures.empty()) throw ConfigError("verification needs at least one aperture");
    if (!(settings.tol > 0.0)) throw ConfigError("verification tolerance must be positive");
    if (!(settings.delta >= 0.0)) throw ConfigError("exclusion radius must be non-negative");
    if (nu.size() != phi.size()) throw ConfigError("nu and phi have different node counts");

    VerificationReport report;
    report.settings = settings;
    report.j_max = settings.j_max > 0 ? settings.j_max : StolzPath::default_depth(phi.size());
    report.notes = sol.notes;

    const auto zones = exclusion_zones(sol, nu, phi);
    const AnalyticSolution& source = sol.f_source();
    const bool on_disk = sol.map() == nullptr;
    const double cap = source.A.radius_cap();
    const ComplexFunction f = [&source](cplx z) { return source.f(z); };

    std::size_t pass = 0;
    std::size_t agree = 0;
    std::size_t radial_ok = 0;
    std::size_t quotient_ok = 0;
    for (std::size_t v = 0; v < settings.vertices; ++v) {
        VertexRecord rec;
        rec.angle = two_pi * static_cast<double>(v) / static_cast<double>(settings.vertices);
        rec.target = phi(rec.angle).real();
        rec.reason = classify(zones, rec.angle, settings.delta);
        rec.excluded = rec.reason != Exclusion::none;
        if (rec.excluded) {
            rec.estimate = std::numeric_limits<double>::quiet_NaN();
            rec.error = std::numeric_limits<double>::quiet_NaN();
            ++report.excluded;
            report.per_vertex.push_back(std::move(rec));
            continue;
        }
        ++report.eligible;

        const cplx zeta = std::polar(1.0, rec.angle);
        const cplx nv = nu(rec.angle);
        auto h = [&](cplx z) { return cplx((nv * source.f(z)).real(), 0.0); };
        rec.converged = true;
        for (std::size_t k = 0; k < settings.apertures.size(); ++k) {
            const StolzPath path(zeta, settings.apertures[k], settings.j_min, report.j_max);
            const LimitEstimate est = nontangential_eval(h, path, settings.tol, cap);
            const double err = std::abs(est.estimate.real() - rec.target);
            if (k == 0) rec.estimate = est.estimate.real();
            rec.error = std::max(rec.error, err);
            rec.converged = rec.converged && est.converged;
            rec.aperture_pass.push_back(est.converged && err <= settings.tol);
        }
        rec.passed = rec.converged && rec.error <= settings.tol;
        if (rec.converged) ++report.converged;
        if (rec.passed) ++pass;
        const bool all = std::all_of(rec.aperture_pass.begin(), rec.aperture_pass.end(), [](bool b) { return b; });
        const bool none = std::none_of(rec.aperture_pass.begin(), rec.aperture_pass.end(), [](bool b) { return b; });
        if (all || none) ++agree;

        if (settings.radial) {
            const StolzPath ray(zeta, 0.0, settings.j_min, report.j_max);
            const auto F = sol.F().along(ray.points());
            std::vector<cplx> u(F.size());
            std::transform(F.begin(), F.end(), u.begin(),
                           [&](cplx v) { return cplx(v.real() + sol.const_shift(), 0.0); });
            const LimitEstimate est = assess_limit(ray.points(), std::move(u), settings.tol, cap);
            rec.radial_converged = est.converged;
            rec.radial_limit = est.estimate.real();
            if (rec.radial_converged) ++radial_ok;
        }

        if (settings.quotients && on_disk && (-zeta * std::conj(nv)).real() > 0.0) {
            const auto q = difference_quotients(f, zeta, nv, 3, 12);
            rec.quotient_checked = true;
            rec.quotient = q.back();
            rec.quotient_pass = std::abs(rec.quotient - rec.target) <= settings.quotient_tol;
            ++report.quotient_checked;
            if (rec.quotient_pass) ++quotient_ok;
        }
        report.per_vertex.push_back(std::move(rec));
    }

    const auto ratio = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
    report.pass_fraction = ratio(pass, report.converged);
    report.converged_fraction = ratio(report.converged, report.eligible);
    report.aperture_agreement = ratio(agree, report.eligible);
    report.radial_fraction = ratio(radial_ok, report.eligible);
    report.quotient_fraction = ratio(quotient_ok, report.quotient_checked);
    report.excluded_fraction = excluded_arc_length(zones, settings.delta) / two_pi;
    report.excluded_bound = 2.0 * settings.delta * static_cast<double>(zones.size() + 1) / two_pi;

    if (on_disk && settings.chords > 0) {
        std::mt19937_64 rng(settings.seed);
        std::uniform_real_distribution<double> angle(0.0, two_pi);
        std::uniform_real_distribution<double> far(0.2, 0.5);
        std::uniform_real_distribution<double> near(0.01, 0.1);
        const ComplexFunction& integrand = sol.F().integrand();
        for (std::size_t attempt = 0; attempt < 100 * settings.chords && report.chords.count < settings.chords;
             ++attempt) {
            const double theta = angle(rng);
            const double a = far(rng);
            const double c = near(rng);
            if (classify(zones, theta, settings.delta) != Exclusion::none) continue;
            const cplx zeta = std::polar(1.0, theta);
            cplx dir = nu(theta);
            const double inward = (-zeta * std::conj(dir)).real();
            if (inward < -0.2) {
                dir = -dir;
            } else if (inward < 0.2) {
                continue;
            }
            const cplx z0 = zeta + a * dir;
            const cplx z = zeta + c * dir;
            if (std::abs(z0) >= 1.0 || std::abs(z) >= 1.0) continue;
            const double recovered = sol.u_disk(z0) + integrate_segment(integrand, z0, z).real();
            report.chords.max_error = std::max(report.chords.max_error, std::abs(recovered - sol.u_disk(z)));
            ++report.chords.count;
        }
    }

    if (settings.residual) report.residual = solution_residual(sol);
    return report;
}

std::vector<cplx> grid_points(const GridSpec& grid) {
    if (grid.n < 2) throw ConfigError("grid needs at least 2 points per side");
    std::vector<cplx> out;
    out.reserve(grid.n * grid.n);
    const double step = 2.0 * grid.extent / static_cast<double>(grid.n - 1);
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        for (std::size_t ix = 0; ix < grid.n; ++ix)
            out.emplace_back(-grid.extent + step * static_cast<double>(ix), -grid.extent + step * static_cast<double>(iy));
    }
    return out;
}

ResidualStats laplacian_residual(const std::function<double(cplx)>& u, std::span<const cplx> points, double h,
                                 const std::function<bool(cplx)>& inside) {
    const auto ok = inside ? inside : [h](cplx z) { return std::abs(z) + h < 1.0; };
    ResidualStats stats;
    double total = 0.0;
    for (const cplx& z : points) {
        const cplx e[4] = {z + h, z - h, z + cplx(0.0, h), z - cplx(0.0, h)};
        if (!ok(z) || !std::all_of(std::begin(e), std::end(e), ok)) {
            ++stats.skipped;
            continue;
        }
        const double lap = (u(e[0]) + u(e[1]) + u(e[2]) + u(e[3]) - 4.0 * u(z)) / (h * h);
        stats.max = std::max(stats.max, std::abs(lap));
        total += std::abs(lap);
        ++stats.points;
    }
    stats.mean = stats.points > 0 ? total / static_cast<double>(stats.points) : 0.0;
    return stats;
}

ResidualStats solution_residual(const HarmonicSolution& sol, const GridSpec& grid, double h, double radius) {
    const auto all = grid_points(grid);
    std::vector<cplx> points;
    auto u = [&sol](cplx w) { return sol.u(w); };
    if (const ConformalMap* map = sol.map()) {
        for (const cplx& w : all) {
            if (map->contains(w) && std::abs(map->inverse(w)) <= radius) points.push_back(w);
        }
        return laplacian_residual(u, points, h, [map](cplx w) { return map->contains(w); });
    }
    for (const cplx& z : all) {
        if (std::abs(z) <= radius) points.push_back(z);
    }
    return laplacian_residual(u, points, h);
}

double dimension_certificate(const std::vector<HarmonicSolution>& family, std::span<const cplx> points,
                             std::string* diagnostic) {
    if (family.empty()) throw ConfigError("dimension certificate needs a non-empty family");
    if (points.size() < 2 * family.size())
        throw ConfigError("dimension certificate needs at least " + std::to_string(2 * family.size()) + " points");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(family.size()), static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = family[i].u(points[j]);
        const double norm = m.row(static_cast<Eigen::Index>(i)).norm();
        if (norm == 0.0) {
            if (diagnostic) *diagnostic = "family member " + std::to_string(i) + " vanishes at every sample point";
            return 0.0;
        }
        m.row(static_cast<Eigen::Index>(i)) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return s(s.size() - 1);
}

std::vector<cplx> certificate_points(std::size_t m, const std::vector<double>& avoid,
                                     std::optional<std::uint64_t> seed) {
    auto clear = [&avoid](double a) {
        return std::all_of(avoid.begin(), avoid.end(), [a](double c) { return std::abs(angular_distance(a, c)) >= 0.05; });
    };
    std::vector<cplx> out;
    out.reserve(m);
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::uniform_real_distribution<double> angle(0.0, two_pi);
        std::uniform_real_distribution<double> radius(0.3, 0.8);
        while (out.size() < m) {
            const double a = angle(rng);
            const double r = radius(rng);
            if (clear(a)) out.push_back(std::polar(r, a));
        }
        return out;
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < m; ++k) {
        const double r = 0.3 + 0.5 * (static_cast<double>(k) + 0.5) / static_cast<double>(m);
        double a = wrap_angle(golden * static_cast<double>(k));
        for (int tries = 0; tries < 63 && !clear(a); ++tries) a = wrap_angle(a + 0.1);
        out.push_back(std::polar(r, a));
    }
    return out;
}

void write_report(std::ostream& out, const VerificationReport& report, std::string_view config_json) {
    const auto flags = out.flags();
    const auto precision = out.precision(17);
    out << "# hbvp verification report v1\n";
    out << "# config: " << config_json << '\n';
    out << "angle,target,estimate,error,converged,excluded,reason\n";
    for (const auto& r : report.per_vertex) {
        out << r.angle << ',' << r.target << ',' << r.estimate << ',' << r.error << ',' << (r.converged ? 1 : 0) << ','
            << (r.excluded ? 1 : 0) << ',' << exclusion_name(r.reason) << '\n';
    }
    const auto& s = report.settings;
    out << "# summary\n";
    out << "vertices=" << s.vertices << '\n';
    out << "eligible=" << report.eligible << '\n';
    out << "excluded=" << report.excluded << '\n';
    out << "excluded_fraction=" << report.excluded_fraction << '\n';
    out << "excluded_bound=" << report.excluded_bound << '\n';
    out << "converged_fraction=" << report.converged_fraction << '\n';
    out << "pass_fraction=" << report.pass_fraction << '\n';
    out << "aperture_agreement=" << report.aperture_agreement << '\n';
    out << "radial_converged_fraction=" << report.radial_fraction << '\n';
    out << "quotient_checked=" << report.quotient_checked << '\n';
    out << "quotient_fraction=" << report.quotient_fraction << '\n';
    out << "chord_count=" << report.chords.count << '\n';
    out << "chord_max_error=" << report.chords.max_error << '\n';
    out << "residual_max=" << report.residual.max << '\n';
    out << "residual_mean=" << report.residual.mean << '\n';
    out << "residual_points=" << report.residual.points << '\n';
    out << "residual_skipped=" << report.residual.skipped << '\n';
    out << "tol=" << s.tol << '\n';
    out << "delta=" << s.delta << '\n';
    out << "apertures=";
    for (std::size_t k = 0; k < s.apertures.size(); ++k) out << (k ? ";" : "") << s.apertures[k];
    out << '\n';
    out << "j_min=" << s.j_min << '\n';
    out << "j_max=" << report.j_max << '\n';
    for (const auto& note : report.notes) out << "note=" << note << '\n';
    out.precision(precision);
    out.flags(flags);
}

}  // namespace hbvp

#pragma once

#include "hbvp/rh_solver.hpp"
#include "hbvp/series.hpp"

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hbvp {

class ConformalMap;

using ComplexFunction = std::function<cplx(cplx)>;

struct AntiderivativeParams {
    /// Sampling radius; 0 selects 1 − 4/N.
    double rho_sample = 0.0;
    /// Number of samples; 0 selects 16N.
    std::size_t samples = 0;
};

/// One 16-point Gauss–Legendre panel for ∫ f dz over [a, b].
cplx integrate_panel(const ComplexFunction& f, cplx a, cplx b);

/// ∫ f along the straight segment [a, b] inside the closed disk, with
/// Gauss–Legendre panels graded toward the unit circle.
cplx integrate_segment(const ComplexFunction& f, cplx a, cplx b);

/// F with F(0) = 0 and F′ = f on the unit disk. Inside the inner radius F
/// is a Taylor series recovered from samples of f; beyond it the series
/// value is continued by radial integration of f.
class Antiderivative {
public:
    Antiderivative() = default;
    Antiderivative(ComplexFunction f, SeriesEvaluator series, double inner_radius);

    cplx operator()(cplx z) const;

    /// F at successive points, each obtained from the previous one by
    /// integrating along the connecting segment.
    std::vector<cplx> along(std::span<const cplx> points) const;

    const SeriesEvaluator& series() const { return series_; }
    double inner_radius() const { return inner_radius_; }
    const ComplexFunction& integrand() const { return f_; }

private:
    ComplexFunction f_;
    SeriesEvaluator series_;
    double inner_radius_ = 0.0;
};

/// Throws NumericalError when the samples are non-finite or the recovered
/// coefficients do not decay (f singular inside the sampling circle).
Antiderivative antiderivative(ComplexFunction f, std::size_t n, const AntiderivativeParams& params = {});

/// u = Re F + d₀ with ∇u encoded by f = u_x − i·u_y. On mapped domains
/// F lives on the preimage disk and physical points are pulled back.
class HarmonicSolution {
public:
    HarmonicSolution() = default;
    HarmonicSolution(std::shared_ptr<const AnalyticSolution> source, Antiderivative F, double d0,
                     std::shared_ptr<const ConformalMap> map = nullptr);

    const AnalyticSolution& f_source() const { return *source_; }
    std::shared_ptr<const AnalyticSolution> source_ptr() const { return source_; }
    const Antiderivative& F() const { return F_; }
    double const_shift() const { return d0_; }
    const ConformalMap* map() const { return map_.get(); }
    std::shared_ptr<const ConformalMap> map_ptr() const { return map_; }

    /// Preimage of a physical point (identity on the disk).
    cplx preimage(cplx w) const;

    double u(cplx w) const;
    /// u at the preimage point z.
    double u_disk(cplx z) const { return F_(z).real() + d0_; }

    /// Gradient encoding at a physical point.
    cplx f(cplx w) const;
    std::array<double, 2> grad(cplx w) const;

    HarmonicSolution with_shift(double d0) const;

    std::vector<std::string> notes;

private:
    std::shared_ptr<const AnalyticSolution> source_;
    Antiderivative F_;
    double d0_ = 0.0;
    std::shared_ptr<const ConformalMap> map_;
};

/// Builds F for an existing RH solution on the disk.
HarmonicSolution assemble_disk_solution(AnalyticSolution f, const SolverParams& params);

HarmonicSolution solve_directional(const DirectionField& nu, const BoundaryFunction& phi,
                                   const SolverParams& params = {});

/// Re(ν·f(z)). Throws DomainError outside the domain.
double directional_derivative(const HarmonicSolution& sol, cplx z, cplx nu_value);

}  // namespace hbvp

#pragma once

#include "hbvp/boundary_function.hpp"
#include "hbvp/direction_solver.hpp"
#include "hbvp/rh_solver.hpp"
#include "hbvp/series.hpp"

#include <functional>
#include <vector>

namespace hbvp {

/// Polar radius ρ(a) of a star-like boundary {ρ(a)e^{ia}}.
using RadiusFunction = std::function<double(double)>;

struct TheodorsenParams {
    std::size_t n = 1024;
    std::size_t max_iter = 200;
    double fp_tol = 1e-13;
};

/// Conformal map ω of the unit disk onto a star-like domain with ω(0) = 0
/// and ω′(0) > 0.
class ConformalMap {
public:
    ConformalMap(RadiusFunction rho, SeriesEvaluator log_radius, std::size_t n);

    const RadiusFunction& rho() const { return rho_; }
    /// Boundary correspondence t ↦ σ(t) sampled at t_j = 2πj/N.
    const BoundaryFunction& sigma() const { return sigma_; }
    const SeriesEvaluator& omega() const { return omega_; }
    const SeriesEvaluator& omega_prime() const { return omega_prime_; }
    std::size_t size() const { return n_; }

    cplx operator()(cplx z) const { return omega_(z); }
    cplx derivative(cplx z) const { return omega_prime_(z); }

    /// σ(t) for arbitrary t (not reduced mod 2π).
    double correspondence(double t) const;
    /// t in [0, 2π) with σ(t) ≡ a (mod 2π).
    double correspondence_inverse(double a) const;

    cplx boundary_point(double t) const;
    /// Unit inner normal at ω(e^{it}).
    cplx inner_normal(double t) const;

    /// True when w lies strictly inside the domain.
    bool contains(cplx w) const;

    /// ω^{-1}(w) by damped Newton iteration. Throws DomainError outside the
    /// domain and NumericalError when Newton fails.
    cplx inverse(cplx w) const;

    /// max | |ω(e^{it})| − ρ(arg ω(e^{it})) | over nodes and midpoints.
    double residual = 0.0;
    std::size_t iterations = 0;
    std::vector<double> history;
    /// min |ω′| on the polar sample grid |z| ≤ 0.95.
    double min_derivative = 0.0;

private:
    RadiusFunction rho_;
    SeriesEvaluator log_radius_;
    SeriesEvaluator omega_;
    SeriesEvaluator omega_prime_;
    BoundaryFunction sigma_;
    std::size_t n_;
    double max_shift_ = 0.0;
};

/// Theodorsen fixed-point iteration σ_{k+1}(t) = t + H[log ρ∘σ_k](t).
/// Throws DomainError when ρ is not positive or |ρ′/ρ| ≥ 1 at a node, and
/// NumericalError (with the residual history) after max_iter iterations.
ConformalMap theodorsen_map(RadiusFunction rho, const TheodorsenParams& params = {});

/// φ̃(t) = φ(σ(t)) for data given as a function of the polar angle; jumps
/// at polar angle c move to t = σ^{-1}(c).
BoundaryFunction pull_back(const BoundaryFunction& phi, const ConformalMap& map);

/// λ̃(t) = ν(ω(e^{it})) for a direction field given on boundary points.
DirectionField pull_back_direction(const std::function<cplx(cplx)>& nu, const ConformalMap& map, double cut = 0.0);

/// Inner normal of the image curve, λ̃(t) = −e^{it}ω′/|ω′|, sign-checked
/// against the domain.
DirectionField map_normal(const ConformalMap& map, double cut = 0.0);

/// Arclength s(t) of the image curve at the nodes, with s(2π) appended.
std::vector<double> natural_parameter(const ConformalMap& map);

/// Solves Re(λ̃·g̃) = φ̃ on the disk and returns u(w) = Re F̃(ω^{-1}(w)) + d₀
/// with F̃′ = g̃·ω′.
HarmonicSolution transplant_solve(std::shared_ptr<const ConformalMap> map, const DirectionField& lambda,
                                  const BoundaryFunction& phi, const SolverParams& params = {});

}  // namespace hbvp

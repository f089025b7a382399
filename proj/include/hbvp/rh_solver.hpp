#pragma once

#include "hbvp/boundary_function.hpp"
#include "hbvp/disk_harmonic.hpp"
#include "hbvp/series.hpp"

#include <string>
#include <vector>

namespace hbvp {

struct SolverParams {
    /// Homogeneous poles ζ_k (unit modulus, pairwise distinct).
    std::vector<cplx> hom_points;
    /// c_0..c_m; c_0 multiplies the constant member, c_k the pole ζ_k.
    /// Missing entries are zero.
    std::vector<double> hom_coeffs;
    /// Additive constant of u.
    double d0 = 0.0;
    /// Antiderivative sampling radius; 0 selects 1 − 4/N.
    double rho_sample = 0.0;
    /// Antiderivative sample count; 0 selects 16N.
    std::size_t samples = 0;
    bool fejer = false;
};

/// Solution f of Re(ν·f) = φ on the circle, in factored form
/// f = e^{−iA}(g + i·p).
struct AnalyticSolution {
    BoundaryFunction alpha;
    SeriesEvaluator A;
    BoundaryFunction conjugate_alpha;
    BoundaryFunction weight;
    BoundaryFunction psi;
    SeriesEvaluator g;
    std::vector<cplx> hom_points;
    std::vector<double> hom_coeffs;
    /// Nodes where the conjugate of α was clamped.
    std::size_t clamped = 0;
    std::vector<std::string> notes;

    /// Homogeneous part p(z) = c_0 + Σ c_k·i(ζ_k + z)/(ζ_k − z).
    cplx p(cplx z) const;

    cplx f(cplx z) const;
    cplx operator()(cplx z) const { return f(z); }

    /// Poles of the homogeneous part carrying a nonzero coefficient.
    std::vector<double> active_pole_angles() const;
};

/// Builds f for direction field ν and real data φ with the same node count.
/// Throws ConfigError on mismatched N or bad homogeneous points and
/// NumericalError when ψ cannot be represented.
AnalyticSolution solve_rh(const DirectionField& nu, const BoundaryFunction& phi, const SolverParams& params = {});

/// Members f_0 = i·e^{−iA} and f_j = e^{−iA}·i·i(ζ_j + z)/(ζ_j − z).
std::vector<AnalyticSolution> homogeneous_family(const DirectionField& nu, const std::vector<cplx>& points);

/// k poles e^{iπ(2j−1)/k}, j = 1..k, rotated jointly so every pole keeps
/// a distance of at least 0.05 from the angles in `avoid` when possible.
std::vector<cplx> default_hom_points(std::size_t k, const std::vector<double>& avoid);

/// Throws ConfigError for duplicate or non-unimodular points, or points
/// on a jump of ν.
void check_hom_points(const std::vector<cplx>& points, const DirectionField& nu);

}  // namespace hbvp

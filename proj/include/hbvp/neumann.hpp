#pragma once

#include "hbvp/boundary_function.hpp"
#include "hbvp/direction_solver.hpp"
#include "hbvp/jordan_domain.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace hbvp {

enum class NormalSource { disk, parametrization };

struct NormalField {
    DirectionField underlying;
    NormalSource provenance;
};

/// Natural parametrization ζ(s), s in [0, length), with unit tangent ζ′(s).
struct BoundaryParametrization {
    std::function<cplx(double)> point;
    std::function<cplx(double)> tangent;
    double length = two_pi;
    /// A point of the domain used to fix the sign of the normal.
    cplx interior_point{};
    /// Closed curves are sign-checked by winding number, open arcs by the
    /// side of the interior point.
    bool closed = true;
};

/// Inward unit normal i·τ sampled at s_j = length·j/N, stored against the
/// angle 2πs/length. Throws ParametrizationError when |τ| deviates from 1
/// by more than 1e-8 and OrientationError when i·τ does not point inward.
NormalField inner_normal(const BoundaryParametrization& boundary, std::size_t n, double cut = 0.0);

/// ν(θ) = −e^{iθ}.
NormalField disk_normal(std::size_t n, double cut = 0.0);

/// ∮ φ ds on the unit circle.
double boundary_flux(const BoundaryFunction& phi);

/// Informational note when ∮ φ ds differs from zero, i.e. when the data
/// admit no classical Neumann solution.
std::optional<std::string> compatibility_note(const BoundaryFunction& phi);

HarmonicSolution solve_neumann(const BoundaryFunction& phi, const SolverParams& params = {}, double cut = 0.0);

/// Neumann problem on a mapped domain; φ is given against the polar angle
/// of the boundary point.
HarmonicSolution solve_neumann(const BoundaryFunction& phi, std::shared_ptr<const ConformalMap> map,
                               const SolverParams& params = {}, double cut = 0.0);

}  // namespace hbvp

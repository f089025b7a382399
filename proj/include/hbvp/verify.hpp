#pragma once

#include "hbvp/boundary_function.hpp"
#include "hbvp/direction_solver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hbvp {

enum class Exclusion { none, jump, cut, pole };

std::string_view exclusion_name(Exclusion reason);

struct VerifySettings {
    std::size_t vertices = 500;
    std::vector<double> apertures{0.0, 0.5, -0.5, 1.0, -1.0};
    double tol = 1e-3;
    double delta = 1e-2;
    int j_min = 3;
    /// 0 selects StolzPath::default_depth(N).
    int j_max = 0;
    bool radial = true;
    /// Difference quotients along ν; disk solutions only.
    bool quotients = true;
    double quotient_tol = 1e-2;
    /// Random chords for the line-integral recovery of u; disk only.
    std::size_t chords = 20;
    std::uint64_t seed = 0;
    bool residual = true;
};

struct VertexRecord {
    double angle = 0.0;
    double target = 0.0;
    double estimate = 0.0;
    /// Largest error over all apertures.
    double error = 0.0;
    bool converged = false;
    bool excluded = false;
    Exclusion reason = Exclusion::none;
    bool passed = false;
    std::vector<bool> aperture_pass;
    bool radial_converged = false;
    double radial_limit = 0.0;
    bool quotient_checked = false;
    double quotient = 0.0;
    bool quotient_pass = false;
};

struct ResidualStats {
    double max = 0.0;
    double mean = 0.0;
    std::size_t points = 0;
    std::size_t skipped = 0;
};

struct ChordStats {
    std::size_t count = 0;
    double max_error = 0.0;
};

struct VerificationReport {
    std::vector<VertexRecord> per_vertex;
    std::size_t eligible = 0;
    std::size_t excluded = 0;
    std::size_t converged = 0;
    /// Passing vertices over non-excluded, converged vertices.
    double pass_fraction = 0.0;
    double converged_fraction = 0.0;
    /// Non-excluded vertices whose pass/fail verdict is the same for every aperture.
    double aperture_agreement = 0.0;
    double radial_fraction = 0.0;
    std::size_t quotient_checked = 0;
    double quotient_fraction = 0.0;
    /// Measure of the exclusion arcs as a share of the circle, and the
    /// bound 2δ(#jumps + #poles + 1)/2π.
    double excluded_fraction = 0.0;
    double excluded_bound = 0.0;
    ChordStats chords;
    ResidualStats residual;
    VerifySettings settings;
    int j_max = 0;
    std::vector<std::string> notes;
};

/// Certifies the boundary behaviour of sol against ν and φ given on the
/// disk (for mapped domains: the pulled-back λ̃ and φ̃).
/// Throws ConfigError for V < 8 or mismatched node counts.
VerificationReport verify_solution(const HarmonicSolution& sol, const DirectionField& nu, const BoundaryFunction& phi,
                                   const VerifySettings& settings = {});

struct GridSpec {
    std::size_t n = 101;
    double extent = 0.95;
};

/// n×n uniform grid on [−extent, extent]², row-major in y then x.
std::vector<cplx> grid_points(const GridSpec& grid);

/// Five-point Laplacian at each point. Points whose stencil leaves the
/// domain (default: |z| + h < 1 fails) are skipped and counted.
ResidualStats laplacian_residual(const std::function<double(cplx)>& u, std::span<const cplx> points, double h,
                                 const std::function<bool(cplx)>& inside = {});

/// Residual on the grid points with |z| ≤ radius of a disk solution or
/// the image of |z| ≤ radius for mapped solutions.
ResidualStats solution_residual(const HarmonicSolution& sol, const GridSpec& grid = {}, double h = 1e-3,
                                double radius = 0.9);

/// Smallest singular value of the row-normalized matrix of u-values.
/// A zero row yields 0 and a diagnostic. Throws ConfigError when there
/// are fewer than 2·family.size() points.
double dimension_certificate(const std::vector<HarmonicSolution>& family, std::span<const cplx> points,
                             std::string* diagnostic = nullptr);

/// m points at radii in [0.3, 0.8] whose angles keep 0.05 away from
/// `avoid`. Golden-angle spiral by default, seeded uniform sampling
/// otherwise.
std::vector<cplx> certificate_points(std::size_t m, const std::vector<double>& avoid,
                                     std::optional<std::uint64_t> seed = std::nullopt);

/// Writes the text report: header, config line, one CSV record per
/// vertex and a key=value summary block.
void write_report(std::ostream& out, const VerificationReport& report, std::string_view config_json);

}  // namespace hbvp

#pragma once

#include "hbvp/boundary_function.hpp"
#include "hbvp/series.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace hbvp {

struct SchwarzOptions {
    /// Fejér (Cesàro) damping of the polynomial part; diagnostics only.
    bool fejer = false;
};

/// Analytic completion S[μ] with Re S = Poisson extension of μ and
/// Im S(0) = 0. Finite jumps of μ are represented by exact logarithmic
/// terms; the remaining smooth part by its truncated Fourier series up to
/// degree N/2 − 1. Throws DataError for complex-valued μ.
SeriesEvaluator schwarz_integral(const BoundaryFunction& mu, SchwarzOptions options = {});

/// Poisson integral of μ at |z| < 1. Throws DomainError for |z| ≥ 1.
double poisson_extend(const BoundaryFunction& mu, cplx z);

/// Conjugate function H[μ] = boundary trace of Im S[μ] at the same nodes.
/// At a node lying on a jump of μ the logarithmic singularity is replaced
/// by its value half a node spacing away. Jumps of μ are inherited with
/// infinite one-sided limits.
BoundaryFunction conjugate_boundary(const BoundaryFunction& mu);

/// Dyadic approach path z_j = ζ·r_j·e^{iκ(1−r_j)}, r_j = 1 − 2^{−j}.
class StolzPath {
public:
    StolzPath(cplx vertex, double aperture, int j_min, int j_max);

    cplx vertex() const { return vertex_; }
    double aperture() const { return aperture_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    const std::vector<cplx>& points() const { return points_; }

    /// C(κ) with |ζ − z_j| ≤ C(κ)(1 − |z_j|) for every path point.
    static double stolz_constant(double aperture) { return 1.0 + std::abs(aperture); }

    /// Deepest level used for data with N nodes.
    static int default_depth(std::size_t n);

private:
    cplx vertex_;
    double aperture_;
    int j_min_;
    int j_max_;
    std::vector<cplx> points_;
};

struct LimitEstimate {
    cplx estimate{};
    bool converged = false;
    std::vector<cplx> points;
    std::vector<cplx> values;
    std::vector<double> differences;
    /// Path points beyond the evaluator's radius cap.
    std::size_t flagged = 0;
};

/// Deepest-probe limit estimate. Converged iff the last three successive
/// differences do not increase and the final one is below tol; differences
/// under max(64·eps·(1 + max|v|), 1e−6·tol) count as equal.
LimitEstimate nontangential_eval(const std::function<cplx(cplx)>& h, const StolzPath& path, double tol,
                                 double radius_cap = 1.0);

/// Same assessment for values already computed along a path.
LimitEstimate assess_limit(std::vector<cplx> points, std::vector<cplx> values, double tol,
                           double radius_cap = 1.0);

}  // namespace hbvp

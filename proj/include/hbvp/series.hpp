#pragma once

#include "hbvp/expression.hpp"

#include <span>
#include <vector>

namespace hbvp {

/// Exact logarithmic term weight·i·log(1 − z·e^{−i·angle}). Its boundary
/// real part is weight·σ(θ − angle), σ(x) = (π − x mod 2π)/2, which jumps
/// by π·weight at `angle`; a real jump J is represented with weight J/π.
struct LogTerm {
    double angle = 0.0;
    double weight = 0.0;
};

/// Truncated power series Σ c_n z^n plus finitely many logarithmic terms
/// with branch points on the unit circle.
class SeriesEvaluator {
public:
    SeriesEvaluator() = default;
    explicit SeriesEvaluator(std::vector<cplx> coefficients, std::vector<LogTerm> logs = {},
                             double radius_cap = 1.0);

    const std::vector<cplx>& coefficients() const { return coefficients_; }
    const std::vector<LogTerm>& log_terms() const { return logs_; }
    double radius_cap() const { return radius_cap_; }

    /// True when |z| lies beyond the radius cap (evaluation still allowed).
    bool flagged(cplx z) const { return std::abs(z) > radius_cap_; }

    /// Value at |z| ≤ 1. Throws DomainError outside the closed disk.
    cplx operator()(cplx z) const;

    /// Complex derivative at |z| < 1.
    cplx derivative(cplx z) const;

    /// Value at e^{iθ}; a log term at its own branch point contributes an
    /// infinite imaginary part.
    cplx boundary(double theta) const;

    /// Series of the derivative. Requires no log terms.
    SeriesEvaluator differentiated() const;

    /// Antiderivative vanishing at 0. Requires no log terms.
    SeriesEvaluator integrated() const;

    SeriesEvaluator scaled(cplx factor) const;

private:
    cplx polynomial(cplx z) const;
    std::size_t effective_length(double r) const;

    std::vector<cplx> coefficients_;
    std::vector<LogTerm> logs_;
    double radius_cap_ = 1.0;
};

/// Horner evaluation of Σ c_n z^n.
cplx horner(std::span<const cplx> coefficients, cplx z);

}  // namespace hbvp

#include "hbvp/series.hpp"

#include "hbvp/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hbvp {

namespace {

// weight·i·log(1 − z e^{−ic}) written out so that the branch point gives an
// infinite imaginary part instead of a NaN real part
cplx log_term(const LogTerm& t, cplx z) {
    const cplx q = 1.0 - z * std::polar(1.0, -t.angle);
    const double modulus = std::abs(q);
    const double lg = modulus == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(modulus);
    return {-t.weight * std::arg(q), t.weight * lg};
}

}  // namespace

cplx horner(std::span<const cplx> coefficients, cplx z) {
    cplx acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
}

SeriesEvaluator::SeriesEvaluator(std::vector<cplx> coefficients, std::vector<LogTerm> logs,
                                 double radius_cap)
    : coefficients_(std::move(coefficients)), logs_(std::move(logs)), radius_cap_(radius_cap) {
    for (const cplx& c : coefficients_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NumericalError("non-finite series coefficient");
    }
}

std::size_t SeriesEvaluator::effective_length(double r) const {
    // terms past K contribute at most max|c|·r^K/(1 − r) ≤ 1e−17·max|c|
    if (r >= 1.0 || coefficients_.size() < 64) return coefficients_.size();
    if (r == 0.0) return 1;
    const double k = std::log(1e-17 * (1.0 - r)) / std::log(r);
    return k >= static_cast<double>(coefficients_.size()) ? coefficients_.size() : static_cast<std::size_t>(k) + 1;
}

cplx SeriesEvaluator::polynomial(cplx z) const {
    return horner(std::span<const cplx>(coefficients_).first(effective_length(std::abs(z))), z);
}

cplx SeriesEvaluator::operator()(cplx z) const {
    if (std::abs(z) > 1.0 + 1e-14) throw DomainError("series evaluated outside the closed unit disk");
    cplx v = polynomial(z);
    for (const auto& t : logs_) v += log_term(t, z);
    return v;
}

cplx SeriesEvaluator::derivative(cplx z) const {
    if (std::abs(z) >= 1.0) throw DomainError("series derivative requires |z| < 1");
    cplx acc = 0.0;
    // n·r^n decays more slowly than r^n; the extra terms keep the same bound
    const std::size_t length = std::min(coefficients_.size(), 2 * effective_length(std::abs(z)));
    for (std::size_t n = length; n-- > 1;) acc = acc * z + static_cast<double>(n) * coefficients_[n];
    for (const auto& t : logs_) acc += cplx(0.0, -t.weight) / (std::polar(1.0, t.angle) - z);
    return acc;
}

cplx SeriesEvaluator::boundary(double theta) const {
    const cplx z = std::polar(1.0, theta);
    cplx v = polynomial(z);
    for (const auto& t : logs_) {
        const double x = std::remainder(theta - t.angle, 2.0 * std::numbers::pi);
        if (x == 0.0) {
            v += cplx(0.0, -t.weight * std::numeric_limits<double>::infinity());
        } else {
            v += log_term(t, z);
        }
    }
    return v;
}

SeriesEvaluator SeriesEvaluator::differentiated() const {
    if (!logs_.empty()) throw NumericalError("cannot differentiate a series with log terms termwise");
    std::vector<cplx> d(coefficients_.size() > 1 ? coefficients_.size() - 1 : 1, 0.0);
    for (std::size_t n = 1; n < coefficients_.size(); ++n) d[n - 1] = static_cast<double>(n) * coefficients_[n];
    return SeriesEvaluator(std::move(d), {}, radius_cap_);
}

SeriesEvaluator SeriesEvaluator::integrated() const {
    if (!logs_.empty()) throw NumericalError("cannot integrate a series with log terms termwise");
    std::vector<cplx> a(coefficients_.size() + 1, 0.0);
    for (std::size_t n = 0; n < coefficients_.size(); ++n) a[n + 1] = coefficients_[n] / static_cast<double>(n + 1);
    return SeriesEvaluator(std::move(a), {}, radius_cap_);
}

SeriesEvaluator SeriesEvaluator::scaled(cplx factor) const {
    std::vector<cplx> c = coefficients_;
    for (auto& v : c) v *= factor;
    std::vector<LogTerm> logs = logs_;
    if (factor.imag() != 0.0 && !logs.empty())
        throw NumericalError("log terms only scale by real factors");
    for (auto& t : logs) t.weight *= factor.real();
    return SeriesEvaluator(std::move(c), std::move(logs), radius_cap_);
}

}  // namespace hbvp

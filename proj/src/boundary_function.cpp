#include "hbvp/boundary_function.hpp"

#include "hbvp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <sstream>

namespace hbvp {

namespace {

constexpr double unit_modulus_tolerance = 1e-12;

std::string format_angle(double a) {
    std::ostringstream os;
    os.precision(17);
    os << a;
    return os.str();
}

double node_angle(std::size_t j, std::size_t n) {
    return two_pi * static_cast<double>(j) / static_cast<double>(n);
}

bool same_angle(double a, double b) { return std::abs(angular_distance(a, b)) <= angle_tolerance; }

// Maps a difference of arguments to [−π, π).
double principal_step(double x) {
    return x - two_pi * std::floor((x + std::numbers::pi) / two_pi);
}

double principal_arg(cplx v) {
    double a = std::arg(v);
    if (a >= std::numbers::pi) a -= two_pi;
    return a;
}

std::size_t piece_at(const std::vector<BoundaryFunction::Piece>& pieces, double theta) {
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (theta < pieces[k].to - angle_tolerance) return k;
    }
    return pieces.size() - 1;
}

}  // namespace

bool Jump::finite() const {
    return std::isfinite(left.real()) && std::isfinite(left.imag()) && std::isfinite(right.real()) &&
           std::isfinite(right.imag());
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t -= two_pi;
    return t;
}

double angular_distance(double a, double b) { return principal_step(a - b); }

void require_node_count(std::size_t n, std::size_t minimum, const std::string& what) {
    if (n < minimum || !std::has_single_bit(n)) {
        throw ConfigError(what + " must be a power of two >= " + std::to_string(minimum) + " (got " +
                          std::to_string(n) + ")");
    }
}

BoundaryFunction BoundaryFunction::from_pieces(std::vector<Piece> pieces, std::size_t n,
                                               ValueKind kind) {
    require_node_count(n, 8);
    if (pieces.empty()) throw ConfigError("boundary function needs at least one piece");
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.from < b.from; });

    if (std::abs(pieces.front().from) > angle_tolerance)
        throw ConfigError("pieces must start at angle 0 (first piece starts at " +
                          format_angle(pieces.front().from) + ")");
    if (std::abs(pieces.back().to - two_pi) > angle_tolerance)
        throw ConfigError("pieces must end at 2*pi (last piece ends at " +
                          format_angle(pieces.back().to) + ")");
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (!(pieces[k].to > pieces[k].from + angle_tolerance))
            throw ConfigError("empty or reversed interval [" + format_angle(pieces[k].from) + ", " +
                              format_angle(pieces[k].to) + ")");
        if (!pieces[k].value) throw ConfigError("piece without a value expression");
        if (k + 1 < pieces.size()) {
            const double gap = pieces[k + 1].from - pieces[k].to;
            if (gap > angle_tolerance)
                throw ConfigError("gap between " + format_angle(pieces[k].to) + " and " +
                                  format_angle(pieces[k + 1].from));
            if (gap < -angle_tolerance)
                throw ConfigError("overlapping intervals at " + format_angle(pieces[k + 1].from));
        }
    }
    pieces.front().from = 0.0;
    pieces.back().to = two_pi;

    auto check = [kind](cplx v, double theta) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DataError("non-finite boundary value at angle " + format_angle(theta));
        if (kind == ValueKind::real && std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
            throw DataError("complex value for real-valued data at angle " + format_angle(theta));
        return kind == ValueKind::real ? cplx(v.real(), 0.0) : v;
    };

    BoundaryFunction bf;
    bf.kind_ = kind;
    bf.samples_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = node_angle(j, n);
        bf.samples_[j] = check(pieces[piece_at(pieces, theta)].value(theta), theta);
    }

    // a piece boundary is a jump when the one-sided limits differ
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const double at = pieces[k].from;
        const Piece& before = k == 0 ? pieces.back() : pieces[k - 1];
        const cplx left = check(before.value(k == 0 ? two_pi : at), at);
        const cplx right = check(pieces[k].value(at), at);
        if (std::abs(left - right) > 1e-12 * (1.0 + std::abs(left) + std::abs(right)))
            bf.jumps_.push_back({at, left, right});
    }

    bf.pieces_ = std::move(pieces);
    auto shared = std::make_shared<std::vector<Piece>>(bf.pieces_);
    bf.evaluate_ = [shared, kind](double theta) {
        const double t = wrap_angle(theta);
        const cplx v = (*shared)[piece_at(*shared, t)].value(t);
        return kind == ValueKind::real ? cplx(v.real(), 0.0) : v;
    };
    return bf;
}

BoundaryFunction BoundaryFunction::from_samples(std::vector<cplx> samples, ValueKind kind,
                                                std::vector<Jump> jumps, Evaluator evaluate) {
    require_node_count(samples.size(), 8);
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (!std::isfinite(samples[j].real()) || !std::isfinite(samples[j].imag()))
            throw DataError("non-finite sample at node " + std::to_string(j));
        if (kind == ValueKind::real) samples[j] = {samples[j].real(), 0.0};
    }
    for (auto& jump : jumps) jump.angle = wrap_angle(jump.angle);
    std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.angle < b.angle; });

    BoundaryFunction bf;
    bf.kind_ = kind;
    bf.samples_ = std::move(samples);
    bf.jumps_ = std::move(jumps);
    bf.evaluate_ = std::move(evaluate);
    return bf;
}

BoundaryFunction BoundaryFunction::from_samples(std::span<const double> samples,
                                                std::vector<Jump> jumps, Evaluator evaluate) {
    std::vector<cplx> values(samples.begin(), samples.end());
    return from_samples(std::move(values), ValueKind::real, std::move(jumps), std::move(evaluate));
}

double BoundaryFunction::node(std::size_t j) const { return node_angle(j, samples_.size()); }

std::vector<double> BoundaryFunction::real_samples() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](cplx v) { return v.real(); });
    return out;
}

std::vector<double> BoundaryFunction::jump_angles() const {
    std::vector<double> out;
    out.reserve(jumps_.size());
    for (const auto& j : jumps_) out.push_back(j.angle);
    return out;
}

cplx BoundaryFunction::operator()(double theta) const {
    if (evaluate_) return evaluate_(theta);
    const std::size_t n = samples_.size();
    const double x = wrap_angle(theta) / two_pi * static_cast<double>(n);
    const auto j = static_cast<std::size_t>(std::floor(x)) % n;
    const double frac = x - std::floor(x);
    return (1.0 - frac) * samples_[j] + frac * samples_[(j + 1) % n];
}

std::pair<cplx, cplx> BoundaryFunction::limits(double theta) const {
    for (const auto& jump : jumps_) {
        if (same_angle(jump.angle, theta)) return {jump.left, jump.right};
    }
    const cplx v = (*this)(theta);
    return {v, v};
}

BoundaryFunction BoundaryFunction::resample(std::size_t n) const {
    if (!pieces_.empty()) return from_pieces(pieces_, n, kind_);
    if (!evaluate_) throw ConfigError("cannot resample a sample-only boundary function");
    std::vector<cplx> values(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = evaluate_(node_angle(j, n));
    return from_samples(std::move(values), kind_, jumps_, evaluate_);
}

BoundaryFunction build_boundary_function(
    const std::vector<PieceSpec>& specs, std::size_t n, ValueKind kind,
    const std::vector<std::string>& variables,
    std::function<std::map<std::string, cplx, std::less<>>(double)> bind) {
    if (!bind) {
        const std::string var = variables.empty() ? std::string("theta") : variables.front();
        bind = [var](double theta) {
            return std::map<std::string, cplx, std::less<>>{{var, cplx(theta, 0.0)}};
        };
    }
    std::vector<BoundaryFunction::Piece> pieces;
    pieces.reserve(specs.size());
    for (const auto& spec : specs) {
        auto expr = std::make_shared<Expression>(Expression::parse(spec.expr, variables));
        BoundaryFunction::Piece piece;
        piece.from = parse_constant(spec.from);
        piece.to = parse_constant(spec.to);
        piece.text = spec.expr;
        piece.value = [expr, bind](double theta) { return expr->evaluate(bind(theta)); };
        if (piece.from < 0.0 || piece.from >= two_pi)
            throw ConfigError("piece start " + spec.from + " outside [0, 2*pi)");
        pieces.push_back(std::move(piece));
    }
    return BoundaryFunction::from_pieces(std::move(pieces), n, kind);
}

DirectionField::DirectionField(BoundaryFunction base, double cut)
    : base_(std::move(base)), cut_(wrap_angle(cut)) {
    if (base_.kind() != ValueKind::complex)
        throw DataError("direction field must be complex-valued");
    const auto s = base_.samples();
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (std::abs(std::abs(s[j]) - 1.0) > unit_modulus_tolerance)
            throw InvariantError("direction field has |nu| = " + format_angle(std::abs(s[j])) +
                                 " at node " + std::to_string(j));
    }
}

namespace {

struct ArgTrack {
    double cut = 0.0;
    double start = 0.0;                 // α just after the cut
    std::vector<double> positions;      // node positions in [cut, cut + 2π), ascending
    std::vector<double> values;         // α at those nodes
    std::vector<std::pair<double, Jump>> jump_events;  // (position, jump with α limits)
};

}  // namespace

BoundaryFunction measurable_arg(const DirectionField& nu) {
    const BoundaryFunction& base = nu.base();
    const std::size_t n = base.size();
    const double cut = nu.cut();

    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(std::abs(base.samples()[j]) - 1.0) > unit_modulus_tolerance)
            throw InvariantError("|nu| != 1 at node " + std::to_string(j));
    }

    auto position = [cut](double theta) {
        double p = wrap_angle(theta - cut);
        if (p > two_pi - angle_tolerance) p = 0.0;
        return cut + p;
    };

    // events: ν jumps away from the cut, then nodes; jumps sort first on ties
    struct Event {
        double pos;
        int type;  // 0 jump, 1 node
        std::size_t index;
    };
    std::vector<Event> events;
    for (std::size_t k = 0; k < base.jumps().size(); ++k) {
        const double p = position(base.jumps()[k].angle);
        if (p - cut > angle_tolerance) events.push_back({p, 0, k});
    }
    for (std::size_t j = 0; j < n; ++j) events.push_back({position(base.node(j)), 1, j});
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (std::abs(a.pos - b.pos) > angle_tolerance) return a.pos < b.pos;
        return a.type < b.type;
    });

    auto track = std::make_shared<ArgTrack>();
    track->cut = cut;
    const auto [cut_left, cut_right] = base.limits(cut);
    track->start = principal_arg(cut_right);

    std::vector<double> alpha(n);
    std::vector<Jump> jumps;
    double current = track->start;
    for (const Event& e : events) {
        if (e.type == 0) {
            const Jump& nj = base.jumps()[e.index];
            const double left = current + principal_step(std::arg(nj.left) - current);
            const double right = left + principal_step(std::arg(nj.right) - left);
            jumps.push_back({nj.angle, left, right});
            track->jump_events.emplace_back(e.pos, Jump{nj.angle, left, right});
            current = right;
        } else {
            current += principal_step(std::arg(base.samples()[e.index]) - current);
            alpha[e.index] = current;
            track->positions.push_back(e.pos);
            track->values.push_back(current);
        }
    }
    const double end_left = current + principal_step(std::arg(cut_left) - current);
    if (std::abs(end_left - track->start) > 1e-12) jumps.push_back({cut, end_left, track->start});

    auto evaluate = [track, base](double theta) {
        double p = wrap_angle(theta - track->cut);
        if (p > two_pi - angle_tolerance) p = 0.0;
        p += track->cut;
        const auto it = std::upper_bound(track->positions.begin(), track->positions.end(),
                                         p + angle_tolerance);
        double current = track->start;
        double from = track->cut;
        if (it != track->positions.begin()) {
            const auto k = static_cast<std::size_t>(std::distance(track->positions.begin(), it) - 1);
            current = track->values[k];
            from = track->positions[k];
        }
        for (const auto& [pos, jump] : track->jump_events) {
            if (pos > from + angle_tolerance && pos <= p + angle_tolerance) current = jump.right.real();
        }
        return cplx(current + principal_step(std::arg(base(theta)) - current), 0.0);
    };

    std::vector<cplx> values(alpha.begin(), alpha.end());
    return BoundaryFunction::from_samples(std::move(values), ValueKind::real, std::move(jumps),
                                          std::move(evaluate));
}

}  // namespace hbvp

#pragma once

#include "hbvp/expression.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hbvp {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Angles closer than this are treated as the same point of the circle.
inline constexpr double angle_tolerance = 1e-12;

enum class ValueKind { real, complex };

/// Discontinuity of a boundary representative. Limits may be non-finite
/// (e.g. logarithmic singularities inherited by a conjugate function); only
/// finite jumps take part in spectral jump correction.
struct Jump {
    double angle = 0.0;
    cplx left{};
    cplx right{};

    cplx size() const { return right - left; }
    bool finite() const;
};

/// Reduces an angle to [0, 2π).
double wrap_angle(double theta);

/// Shortest signed angular distance between two points of the circle.
double angular_distance(double a, double b);

/// Measurable boundary datum on the unit circle, represented by a
/// piecewise-smooth representative with finitely many jumps.
///
/// Samples live on θ_j = 2πj/N. At a node coinciding with a jump the value
/// of the right-hand piece is stored. Objects are immutable after
/// construction and may be shared across threads.
class BoundaryFunction {
public:
    using Evaluator = std::function<cplx(double)>;

    struct Piece {
        double from = 0.0;
        double to = 0.0;
        Evaluator value;
        std::string text;
    };

    BoundaryFunction() = default;

    /// Samples piecewise data at N nodes. Pieces must partition [0, 2π).
    /// Throws ConfigError for gaps/overlaps or a bad node count and
    /// DataError for non-finite samples or complex values on real data.
    static BoundaryFunction from_pieces(std::vector<Piece> pieces, std::size_t n, ValueKind kind);

    /// Wraps existing node samples. `evaluate` (optional) gives values
    /// between nodes; otherwise periodic linear interpolation is used.
    static BoundaryFunction from_samples(std::vector<cplx> samples, ValueKind kind,
                                         std::vector<Jump> jumps = {}, Evaluator evaluate = {});
    static BoundaryFunction from_samples(std::span<const double> samples,
                                         std::vector<Jump> jumps = {}, Evaluator evaluate = {});

    std::size_t size() const { return samples_.size(); }
    ValueKind kind() const { return kind_; }
    bool is_real() const { return kind_ == ValueKind::real; }
    double node(std::size_t j) const;

    std::span<const cplx> samples() const { return samples_; }
    std::vector<double> real_samples() const;
    double real(std::size_t j) const { return samples_[j].real(); }

    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    std::vector<double> jump_angles() const;

    /// Value of the representative at an arbitrary angle (right-piece
    /// convention at jumps).
    cplx operator()(double theta) const;

    /// One-sided limits at θ; equal unless θ is a recorded jump.
    std::pair<cplx, cplx> limits(double theta) const;

    /// Re-samples at a different node count. Requires pieces or an evaluator.
    BoundaryFunction resample(std::size_t n) const;

private:
    std::vector<Piece> pieces_;
    std::vector<Jump> jumps_;
    std::vector<cplx> samples_;
    Evaluator evaluate_;
    ValueKind kind_ = ValueKind::real;
};

/// Throws ConfigError unless n is a power of two and n >= minimum.
void require_node_count(std::size_t n, std::size_t minimum, const std::string& what = "N");

/// Piecewise description in the config micro-grammar.
struct PieceSpec {
    std::string from;
    std::string to;
    std::string expr;
};

/// Parses each piece expression with the given variables and samples it.
/// Angles are constants such as "0", "pi/2", "2*pi". `bind` maps the piece
/// angle to the variable bindings of the expression (e.g. theta, x, y).
BoundaryFunction build_boundary_function(
    const std::vector<PieceSpec>& pieces, std::size_t n, ValueKind kind,
    const std::vector<std::string>& variables = {"theta"},
    std::function<std::map<std::string, cplx, std::less<>>(double)> bind = {});

/// Direction field ν with |ν| = 1 and a branch cut for its argument.
class DirectionField {
public:
    /// Empty field; only useful as a placeholder before assignment.
    DirectionField() = default;

    /// Throws InvariantError if |ν| deviates from 1 by more than 1e-12 at a
    /// node, DataError if `base` is not complex-valued.
    DirectionField(BoundaryFunction base, double cut = 0.0);

    const BoundaryFunction& base() const { return base_; }
    double cut() const { return cut_; }
    std::size_t size() const { return base_.size(); }
    cplx operator()(double theta) const { return base_(theta); }
    DirectionField with_cut(double cut) const { return DirectionField(base_, cut); }

private:
    BoundaryFunction base_;
    double cut_ = 0.0;
};

/// Real argument α with e^{iα} = ν at every node.
///
/// The value at the cut is taken in [−π, π) and α is continued
/// counterclockwise by minimal steps, passing through the one-sided limits
/// at every jump of ν. α is continuous on each arc free of ν's jumps and
/// the cut; its jumps (including the 2π·winding jump at the cut) are
/// recorded with exact one-sided limits.
BoundaryFunction measurable_arg(const DirectionField& nu);

}  // namespace hbvp

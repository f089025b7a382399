#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hbvp {

using cplx = std::complex<double>;

/// Parsed expression of the boundary-data micro-grammar.
///
/// Grammar: numbers, variables, the constants `pi`, `e` and `i`, binary
/// `+ - * / ^`, unary minus, parentheses and the functions cos, sin, tan,
/// exp, log, sqrt, abs, re, im, arg, conj. Evaluation is carried out in
/// complex arithmetic so direction fields such as `-exp(i*theta)` can be
/// written directly; real-valued callers check the imaginary part.
class Expression {
public:
    /// Parses `text`; identifiers outside `variables` are rejected.
    /// Throws ConfigError with the offending position on syntax errors.
    static Expression parse(std::string_view text, const std::vector<std::string>& variables);

    /// Evaluates with the given variable bindings (missing bindings are 0).
    cplx evaluate(const std::map<std::string, cplx, std::less<>>& bindings) const;

    /// Convenience for single-variable expressions.
    cplx evaluate(std::string_view variable, double value) const;

    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

/// Parses an angle given either as a number or as an expression without
/// variables (e.g. "pi/2").
double parse_constant(std::string_view text);

}  // namespace hbvp

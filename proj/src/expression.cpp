#include "hbvp/expression.hpp"

#include "hbvp/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>

namespace hbvp {

struct Expression::Node {
    enum class Kind { constant, variable, unary_minus, add, sub, mul, div, pow, call };
    Kind kind = Kind::constant;
    cplx value{};
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

const std::map<std::string, std::function<cplx(cplx)>, std::less<>>& functions() {
    static const std::map<std::string, std::function<cplx(cplx)>, std::less<>> table = {
        {"cos", [](cplx x) { return std::cos(x); }},
        {"sin", [](cplx x) { return std::sin(x); }},
        {"tan", [](cplx x) { return std::tan(x); }},
        {"exp", [](cplx x) { return std::exp(x); }},
        {"log", [](cplx x) { return std::log(x); }},
        {"sqrt", [](cplx x) { return std::sqrt(x); }},
        {"abs", [](cplx x) { return cplx(std::abs(x), 0.0); }},
        {"re", [](cplx x) { return cplx(x.real(), 0.0); }},
        {"im", [](cplx x) { return cplx(x.imag(), 0.0); }},
        {"arg", [](cplx x) { return cplx(std::arg(x), 0.0); }},
        {"conj", [](cplx x) { return std::conj(x); }},
    };
    return table;
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& variables)
        : text_(text), variables_(variables) {}

    NodePtr parse() {
        auto node = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return node;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression '" + std::string(text_) + "': " + what + " at position " +
                          std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr make(Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
        auto node = std::make_shared<Expression::Node>();
        node->kind = kind;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    NodePtr parse_sum() {
        auto lhs = parse_product();
        while (true) {
            if (accept('+')) {
                lhs = make(Kind::add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make(Kind::sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        auto lhs = parse_unary();
        while (true) {
            if (accept('*')) {
                lhs = make(Kind::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make(Kind::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Kind::unary_minus, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    // right associative; -x^2 parses as -(x^2)
    NodePtr parse_power() {
        auto base = parse_primary();
        if (accept('^')) return make(Kind::pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (accept('(')) {
            auto inner = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        auto node = std::make_shared<Expression::Node>();
        node->kind = Kind::constant;
        node->value = value;
        return node;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));

        if (accept('(')) {
            if (!functions().contains(name)) fail("unknown function '" + name + "'");
            auto argument = parse_sum();
            if (!accept(')')) fail("expected ')'");
            auto node = std::make_shared<Expression::Node>();
            node->kind = Kind::call;
            node->name = name;
            node->lhs = std::move(argument);
            return node;
        }

        auto node = std::make_shared<Expression::Node>();
        if (std::find(variables_.begin(), variables_.end(), name) != variables_.end()) {
            node->kind = Kind::variable;
            node->name = name;
        } else if (name == "pi") {
            node->value = std::numbers::pi;
        } else if (name == "e") {
            node->value = std::numbers::e;
        } else if (name == "i") {
            node->value = cplx(0.0, 1.0);
        } else {
            fail("unknown identifier '" + name + "'");
        }
        return node;
    }

    std::string_view text_;
    const std::vector<std::string>& variables_;
    std::size_t pos_ = 0;
};

cplx eval_node(const Expression::Node& node,
               const std::map<std::string, cplx, std::less<>>& bindings) {
    switch (node.kind) {
    case Kind::constant:
        return node.value;
    case Kind::variable: {
        auto it = bindings.find(node.name);
        return it == bindings.end() ? cplx{} : it->second;
    }
    case Kind::unary_minus:
        return -eval_node(*node.lhs, bindings);
    case Kind::add:
        return eval_node(*node.lhs, bindings) + eval_node(*node.rhs, bindings);
    case Kind::sub:
        return eval_node(*node.lhs, bindings) - eval_node(*node.rhs, bindings);
    case Kind::mul:
        return eval_node(*node.lhs, bindings) * eval_node(*node.rhs, bindings);
    case Kind::div:
        return eval_node(*node.lhs, bindings) / eval_node(*node.rhs, bindings);
    case Kind::pow: {
        const cplx base = eval_node(*node.lhs, bindings);
        const cplx exponent = eval_node(*node.rhs, bindings);
        // keep real powers of real bases real, including integer powers of negatives
        if (base.imag() == 0.0 && exponent.imag() == 0.0 &&
            (base.real() >= 0.0 || exponent.real() == std::round(exponent.real())))
            return std::pow(base.real(), exponent.real());
        return std::pow(base, exponent);
    }
    case Kind::call:
        return functions().find(node.name)->second(eval_node(*node.lhs, bindings));
    }
    return {};
}

}  // namespace

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
    Expression expr;
    expr.text_ = std::string(text);
    expr.root_ = Parser(text, variables).parse();
    return expr;
}

cplx Expression::evaluate(const std::map<std::string, cplx, std::less<>>& bindings) const {
    return eval_node(*root_, bindings);
}

cplx Expression::evaluate(std::string_view variable, double value) const {
    return evaluate({{std::string(variable), cplx(value, 0.0)}});
}

double parse_constant(std::string_view text) {
    const cplx v = Expression::parse(text, {}).evaluate({});
    if (v.imag() != 0.0 || !std::isfinite(v.real()))
        throw ConfigError("'" + std::string(text) + "' is not a finite real constant");
    return v.real();
}

}  // namespace hbvp

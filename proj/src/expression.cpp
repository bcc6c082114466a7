/// @file src/expression.cpp
/// @brief Recursive-descent parser, evaluator and printer for Expression.

#include "lorcyl/expression.hpp"

#include "lorcyl/errors.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace lorcyl {

namespace {

using Kind = Expression::Kind;
using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double number = 0.0) {
    return std::make_shared<const Expression::Node>(
        Expression::Node{kind, number, std::move(lhs), std::move(rhs)});
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

// ─── Parser ───────────────────────────────────────────────────────────────────

class Parser {
public:
    Parser(std::string_view text, std::size_t line, std::size_t column_offset)
        : text_(text), line_(line), column_offset_(column_offset) {}

    NodePtr parse_all() {
        NodePtr n = parse_expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

    [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
        throw ParseError(message, line_, column_offset_ + at + 1);
    }

    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Kind::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = make_node(Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Kind::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_node(Kind::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_node(Kind::Negate, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make_node(Kind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (is_digit(c) || c == '.') return parse_number();
        if (is_alpha(c)) return parse_identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && is_digit(text_[p])) {
                while (p < text_.size() && is_digit(text_[p])) ++p;
                pos_ = p;
            }
        }
        const std::string_view lexeme = text_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (ec != std::errc() || ptr != lexeme.data() + lexeme.size()) {
            fail_at("malformed number '" + std::string(lexeme) + "'", start);
        }
        if (!std::isfinite(value)) fail_at("number out of range", start);
        return make_node(Kind::Number, nullptr, nullptr, value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return make_node(Kind::VarX);
        if (name == "y") return make_node(Kind::VarY);
        if (name == "pi") return make_node(Kind::Pi);

        Kind fn;
        if (name == "sin") {
            fn = Kind::Sin;
        } else if (name == "cos") {
            fn = Kind::Cos;
        } else if (name == "exp") {
            fn = Kind::Exp;
        } else if (name == "log") {
            fn = Kind::Log;
        } else {
            fail_at("unknown identifier '" + std::string(name) + "'", start);
        }
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        NodePtr arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return make_node(fn, arg);
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t column_offset_;
    std::size_t pos_ = 0;
};

// ─── Evaluation ───────────────────────────────────────────────────────────────

double checked(double v, const char* what) {
    if (std::isnan(v)) throw DomainError(std::string(what) + " is not a real number");
    if (std::isinf(v)) throw OverflowError(std::string(what) + " overflowed to infinity");
    return v;
}

double eval_node(const Expression::Node& n, double x, double y) {
    switch (n.kind) {
        case Kind::Number: return n.number;
        case Kind::VarX:   return x;
        case Kind::VarY:   return y;
        case Kind::Pi:     return std::numbers::pi;
        case Kind::Negate: return -eval_node(*n.lhs, x, y);
        case Kind::Add:    return checked(eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y), "sum");
        case Kind::Sub:    return checked(eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y), "difference");
        case Kind::Mul:    return checked(eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y), "product");
        case Kind::Div: {
            const double num = eval_node(*n.lhs, x, y);
            const double den = eval_node(*n.rhs, x, y);
            if (den == 0.0) throw OverflowError("division by zero");
            return checked(num / den, "quotient");
        }
        case Kind::Pow: {
            const double base = eval_node(*n.lhs, x, y);
            const double exponent = eval_node(*n.rhs, x, y);
            if (base == 0.0 && exponent < 0.0) {
                throw DomainError("zero raised to a negative power");
            }
            return checked(std::pow(base, exponent), "power");
        }
        case Kind::Sin: return std::sin(eval_node(*n.lhs, x, y));
        case Kind::Cos: return std::cos(eval_node(*n.lhs, x, y));
        case Kind::Exp: return checked(std::exp(eval_node(*n.lhs, x, y)), "exp");
        case Kind::Log: {
            const double arg = eval_node(*n.lhs, x, y);
            if (!(arg > 0.0)) throw DomainError("log of a non-positive number");
            return std::log(arg);
        }
    }
    throw DomainError("corrupt expression tree");
}

// ─── Printing ─────────────────────────────────────────────────────────────────

// Binding strength, higher binds tighter.
int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub:    return 1;
        case Kind::Mul:
        case Kind::Div:    return 2;
        case Kind::Negate: return 3;
        case Kind::Pow:    return 4;
        default:           return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string print(const Expression::Node& n);

std::string print_wrapped(const Expression::Node& n, int min_precedence) {
    std::string s = print(n);
    return precedence(n.kind) >= min_precedence ? s : "(" + s + ")";
}

std::string print_binary(const Expression::Node& n, const char* op) {
    const int p = precedence(n.kind);
    return print_wrapped(*n.lhs, p) + " " + op + " " + print_wrapped(*n.rhs, p + 1);
}

std::string print_call(const Expression::Node& n, const char* name) {
    return std::string(name) + "(" + print(*n.lhs) + ")";
}

std::string print(const Expression::Node& n) {
    switch (n.kind) {
        case Kind::Number: return format_number(n.number);
        case Kind::VarX:   return "x";
        case Kind::VarY:   return "y";
        case Kind::Pi:     return "pi";
        case Kind::Negate: return "-" + print_wrapped(*n.lhs, 3);
        case Kind::Add:    return print_binary(n, "+");
        case Kind::Sub:    return print_binary(n, "-");
        case Kind::Mul:    return print_binary(n, "*");
        case Kind::Div:    return print_binary(n, "/");
        case Kind::Pow:    return print_wrapped(*n.lhs, 5) + "^" + print_wrapped(*n.rhs, 3);
        case Kind::Sin:    return print_call(n, "sin");
        case Kind::Cos:    return print_call(n, "cos");
        case Kind::Exp:    return print_call(n, "exp");
        case Kind::Log:    return print_call(n, "log");
    }
    return "?";
}

bool equal_nodes(const Expression::Node* a, const Expression::Node* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::Number && a->number != b->number) return false;
    return equal_nodes(a->lhs.get(), b->lhs.get()) && equal_nodes(a->rhs.get(), b->rhs.get());
}

double radical_inverse(unsigned index, unsigned base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * (index % base);
        index /= base;
        f /= base;
    }
    return result;
}

}  // namespace

// ─── Expression ───────────────────────────────────────────────────────────────

Expression Expression::parse(std::string_view text) { return parse(text, 1, 0); }

Expression Expression::parse(std::string_view text, std::size_t line, std::size_t column_offset) {
    return Expression(Parser(text, line, column_offset).parse_all());
}

double Expression::evaluate(double x, double y) const { return eval_node(*root_, x, y); }

std::string Expression::to_string() const { return print(*root_); }

bool operator==(const Expression& lhs, const Expression& rhs) {
    return equal_nodes(lhs.root_.get(), rhs.root_.get());
}

bool validate_periodicity(const Expression& e, int samples, double tol) {
    if (samples < 8) throw DomainError("periodicity check needs at least 8 samples");

    auto close = [tol](double a, double b) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); };

    const unsigned count = static_cast<unsigned>(samples) * static_cast<unsigned>(samples);
    for (unsigned k = 1; k <= count; ++k) {
        const double x = radical_inverse(k, 2);
        const double y = -2.0 + 4.0 * radical_inverse(k, 3);
        const double at_zero = e.evaluate(0.0, y);
        if (!close(at_zero, e.evaluate(1.0, y))) return false;
        const double here = e.evaluate(x, y);
        if (!close(here, e.evaluate(x + 1.0, y))) return false;
    }
    return true;
}

}  // namespace lorcyl

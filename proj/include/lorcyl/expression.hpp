/// @file include/lorcyl/expression.hpp
/// @brief Small arithmetic expression language in x, y for conformal factors and
///        variable metric coefficients.
///
/// Grammar (whitespace-insensitive):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?          right-associative
///     primary := number | 'x' | 'y' | 'pi' | func '(' expr ')' | '(' expr ')'
///     func    := 'sin' | 'cos' | 'exp' | 'log'
///
/// `-x^2` is `-(x^2)` and `2^-1` is `2^(-1)`. Numbers are `.`-decimal literals with an
/// optional exponent, parsed independently of the locale.

#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace lorcyl {

class Expression {
public:
    enum class Kind { Number, VarX, VarY, Pi, Negate, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Log };

    struct Node;

    /// Throws ParseError with line 1 and the 1-based column of the offending character.
    static Expression parse(std::string_view text);

    /// Same as parse(), reporting errors at the given line and column offset.
    static Expression parse(std::string_view text, std::size_t line, std::size_t column_offset);

    /// Throws DomainError (log of non-positive, 0 to a negative power, non-real power)
    /// or OverflowError (division by zero, non-finite intermediate).
    double evaluate(double x, double y) const;

    /// Canonical text that parses back to an equal tree.
    std::string to_string() const;

    friend bool operator==(const Expression& lhs, const Expression& rhs);

    const Node& root() const noexcept { return *root_; }

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

struct Expression::Node {
    Kind kind;
    double number = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

/// Convenience wrapper around Expression::evaluate.
inline double eval_expression(const Expression& e, double x, double y) { return e.evaluate(x, y); }

/// Numeric check that e(x+1, y) == e(x, y). Compares x = 0 against x = 1 at every
/// sampled y, and x against x+1 on a samples×samples Halton set covering
/// [0,1) × [-2, 2], with bound tol·(1 + |e(x,y)|). Throws DomainError if samples < 8;
/// evaluation errors propagate.
bool validate_periodicity(const Expression& e, int samples = 16, double tol = 1e-9);

}  // namespace lorcyl

/// @file include/lorcyl/specfile.hpp
/// @brief Line-oriented metric specification files.
///
///     # comment
///     type = conformal
///     E = 0
///     F = 1
///     G = 0
///     psi = sin(2*pi*x) + 0.5*y
///
/// `type` is one of flat, conformal, general. flat and conformal take decimal numbers
/// for E, F, G; general takes expressions in x, y. psi is required for conformal and
/// rejected otherwise. LF and CRLF line endings are accepted.

#pragma once

#include "lorcyl/expression.hpp"
#include "lorcyl/metric.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace lorcyl {

enum class SpecKind { Flat, Conformal, General };

std::string_view to_string(SpecKind k) noexcept;

class MetricSpec {
public:
    static MetricSpec flat(const FlatMetric& m);
    static MetricSpec conformal(const FlatMetric& m, Expression psi);
    static MetricSpec general(Expression E, Expression F, Expression G);

    SpecKind kind() const noexcept { return kind_; }

    /// Constant part; present for flat and conformal specs.
    const std::optional<FlatMetric>& flat_part() const noexcept { return flat_; }
    /// Conformal exponent Ψ in g = e^{2Ψ}·(flat); present iff kind() == Conformal.
    const std::optional<Expression>& psi() const noexcept { return psi_; }
    /// Coefficient expressions; present iff kind() == General.
    const std::optional<Expression>& E_expr() const noexcept { return e_expr_; }
    const std::optional<Expression>& F_expr() const noexcept { return f_expr_; }
    const std::optional<Expression>& G_expr() const noexcept { return g_expr_; }

    /// Pointwise coefficients including any conformal factor. Expression errors propagate.
    PointCoefficients coefficients_at(double x, double y) const;

    friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

private:
    MetricSpec() = default;

    SpecKind kind_ = SpecKind::Flat;
    std::optional<FlatMetric> flat_;
    std::optional<Expression> psi_;
    std::optional<Expression> e_expr_;
    std::optional<Expression> f_expr_;
    std::optional<Expression> g_expr_;
};

/// Throws ParseError (with line and, for syntax errors, column) or SignatureError.
MetricSpec parse_metric_spec(std::string_view text);

/// Reads and parses a file. Throws Error if the file cannot be read.
MetricSpec load_metric_spec(const std::string& path);

/// Serialises with LF line endings; parse_metric_spec(print_metric_spec(s)) == s.
std::string print_metric_spec(const MetricSpec& spec);

}  // namespace lorcyl

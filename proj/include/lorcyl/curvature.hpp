/// @file include/lorcyl/curvature.hpp
/// @brief Gaussian curvature of (possibly variable) Lorentzian metrics on a periodic grid
///        via Brioschi's formula, plus Killing-field and translation-isometry checks.

#pragma once

#include "lorcyl/metric.hpp"

#include <functional>
#include <ostream>
#include <vector>

namespace lorcyl {

class MetricSpec;

// ─── Grid ─────────────────────────────────────────────────────────────────────

/// nx × ny grid on [0,1) × [y_min, y_max]. x is periodic.
///
/// Curvature nodes sit at x = i/nx and y = y_min + j·(y_max - y_min)/(ny - 1), so both
/// y boundaries carry a node row. The causal-graph oracle uses cell centres instead.
class GridSpec {
public:
    /// Throws ConfigError unless nx >= 4, ny >= 4 and y_min < y_max (both finite).
    GridSpec(int nx, int ny, double y_min, double y_max);

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    double y_min() const noexcept { return y_min_; }
    double y_max() const noexcept { return y_max_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }

    double hx() const noexcept { return 1.0 / nx_; }
    double node_hy() const noexcept { return (y_max_ - y_min_) / (ny_ - 1); }
    double node_x(int i) const noexcept { return static_cast<double>(i) / nx_; }
    double node_y(int j) const noexcept { return y_min_ + j * node_hy(); }

    double cell_hy() const noexcept { return (y_max_ - y_min_) / ny_; }
    double cell_x(int i) const noexcept { return (i + 0.5) / nx_; }
    double cell_y(int j) const noexcept { return y_min_ + (j + 0.5) * cell_hy(); }

    /// Row-major index, x fastest.
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(i);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int nx_;
    int ny_;
    double y_min_;
    double y_max_;
};

/// One value per grid node, row-major.
class ScalarField {
public:
    explicit ScalarField(const GridSpec& grid, double fill = 0.0)
        : grid_(grid), values_(grid.size(), fill) {}

    const GridSpec& grid() const noexcept { return grid_; }
    double& at(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
    double at(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    GridSpec grid_;
    std::vector<double> values_;
};

/// Gaussian curvature per node.
using CurvatureField = ScalarField;

/// Components g_xx = -E, g_xy = F, g_yy = G sampled at the curvature nodes.
class MetricField {
public:
    using Sampler = std::function<PointCoefficients(double x, double y)>;

    /// Samples (E, F, G) at every node. Throws SignatureError naming the first node
    /// (in row-major order) where g_xx·g_yy - g_xy² >= 0, DomainError on non-finite values.
    static MetricField sample(const GridSpec& grid, const Sampler& coefficients);
    static MetricField constant(const GridSpec& grid, const FlatMetric& m);
    static MetricField from_spec(const GridSpec& grid, const MetricSpec& spec);

    const GridSpec& grid() const noexcept { return gxx_.grid(); }
    const ScalarField& gxx() const noexcept { return gxx_; }
    const ScalarField& gxy() const noexcept { return gxy_; }
    const ScalarField& gyy() const noexcept { return gyy_; }

    /// Same field with every component multiplied by c > 0.
    MetricField scaled(double c) const;

private:
    MetricField(ScalarField gxx, ScalarField gxy, ScalarField gyy);

    ScalarField gxx_;
    ScalarField gxy_;
    ScalarField gyy_;
};

// ─── Finite differences ───────────────────────────────────────────────────────
//
// Second-order central differences; x wraps, the two y boundary rows use one-sided
// second-order stencils. Every stencil is written as a combination of neighbour
// differences, so a constant field differentiates to exactly zero.

ScalarField partial_x(const ScalarField& f);
ScalarField partial_y(const ScalarField& f);
ScalarField partial_xx(const ScalarField& f);
ScalarField partial_yy(const ScalarField& f);
ScalarField partial_xy(const ScalarField& f);

// ─── Curvature ────────────────────────────────────────────────────────────────

/// Brioschi determinant formula applied verbatim to (g_xx, g_xy, g_yy):
/// K = (det M₁ - det M₂) / (g_xx g_yy - g_xy²)².
CurvatureField brioschi_curvature(const MetricField& f);

/// The two Brioschi determinants from pointwise first-fundamental-form data. Shared by
/// brioschi_curvature and by callers that supply their own derivatives.
struct FirstFormJet {
    double E, F, G;                    // coefficients (E = g_xx, not the flat-metric E)
    double E_u, E_v, F_u, F_v, G_u, G_v;
    double E_vv, F_uv, G_uu;
};
double brioschi_formula(const FirstFormJet& jet) noexcept;

/// R₁₂₁₂ = K·(g_xx g_yy - g_xy²). Throws GridMismatchError if the grids differ.
ScalarField riemann_component(const MetricField& f, const CurvatureField& K);

enum class Axis { X, Y };

/// max over nodes and components of |∂_axis g_ij|, the Lie derivative of g along the
/// coordinate field ∂_axis.
double killing_residual(const MetricField& f, Axis direction);

/// Writes `x,y,K` rows (row-major, x fastest) with 17 significant digits.
void write_curvature_csv(std::ostream& out, const CurvatureField& K);

// ─── Translations ─────────────────────────────────────────────────────────────

/// Φ(x, y) = (x + dx mod 1, y + dy), with dx in [0,1).
struct Translation {
    double dx = 0.0;
    double dy = 0.0;
};

/// The translation mapping p to q. It is an isometry of every flat metric.
Translation translation_isometry(const CylinderPoint& p, const CylinderPoint& q) noexcept;
CylinderPoint apply_translation(const Translation& t, const CylinderPoint& p) noexcept;
/// Apply `first`, then `second`.
Translation compose(const Translation& first, const Translation& second) noexcept;

}  // namespace lorcyl

/// @file src/curvature.cpp
/// @brief Brioschi curvature, Killing residuals and translations on the periodic grid.

#include "lorcyl/curvature.hpp"

#include "lorcyl/errors.hpp"
#include "lorcyl/io.hpp"
#include "lorcyl/specfile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lorcyl {

// ─── GridSpec / MetricField ───────────────────────────────────────────────────

GridSpec::GridSpec(int nx, int ny, double y_min, double y_max)
    : nx_(nx), ny_(ny), y_min_(y_min), y_max_(y_max) {
    if (nx < 4 || ny < 4) throw ConfigError("grid needs at least 4x4 nodes");
    if (!std::isfinite(y_min) || !std::isfinite(y_max) || !(y_min < y_max)) {
        throw ConfigError("grid y-range must be finite with y_min < y_max");
    }
}

MetricField::MetricField(ScalarField gxx, ScalarField gxy, ScalarField gyy)
    : gxx_(std::move(gxx)), gxy_(std::move(gxy)), gyy_(std::move(gyy)) {}

MetricField MetricField::sample(const GridSpec& grid, const Sampler& coefficients) {
    ScalarField gxx(grid), gxy(grid), gyy(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const double x = grid.node_x(i);
            const double y = grid.node_y(j);
            const PointCoefficients c = coefficients(x, y);
            if (!std::isfinite(c.E) || !std::isfinite(c.F) || !std::isfinite(c.G)) {
                throw DomainError("non-finite metric coefficient at node (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ")");
            }
            const double det = -c.E * c.G - c.F * c.F;
            if (!(det < 0.0)) {
                std::ostringstream os;
                os.precision(17);
                os << "metric is not Lorentzian at node (" << i << ", " << j << ") = (x=" << x
                   << ", y=" << y << "): g_xx*g_yy - g_xy^2 = " << det << " >= 0";
                throw SignatureError(os.str(), -det);
            }
            gxx.at(i, j) = -c.E;
            gxy.at(i, j) = c.F;
            gyy.at(i, j) = c.G;
        }
    }
    return MetricField(std::move(gxx), std::move(gxy), std::move(gyy));
}

MetricField MetricField::constant(const GridSpec& grid, const FlatMetric& m) {
    const PointCoefficients c{m.E(), m.F(), m.G()};
    return sample(grid, [c](double, double) { return c; });
}

MetricField MetricField::from_spec(const GridSpec& grid, const MetricSpec& spec) {
    return sample(grid, [&spec](double x, double y) { return spec.coefficients_at(x, y); });
}

MetricField MetricField::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be positive");
    ScalarField a = gxx_, b = gxy_, d = gyy_;
    for (int j = 0; j < grid().ny(); ++j) {
        for (int i = 0; i < grid().nx(); ++i) {
            a.at(i, j) *= c;
            b.at(i, j) *= c;
            d.at(i, j) *= c;
        }
    }
    return MetricField(std::move(a), std::move(b), std::move(d));
}

// ─── Finite differences ───────────────────────────────────────────────────────

namespace {

int wrap(int i, int n) { return (i % n + n) % n; }

}  // namespace

ScalarField partial_x(const ScalarField& f) {
    const GridSpec& g = f.grid();
    const double inv = 1.0 / (2.0 * g.hx());
    ScalarField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            out.at(i, j) = (f.at(wrap(i + 1, g.nx()), j) - f.at(wrap(i - 1, g.nx()), j)) * inv;
        }
    }
    return out;
}

ScalarField partial_xx(const ScalarField& f) {
    const GridSpec& g = f.grid();
    const double inv = 1.0 / (g.hx() * g.hx());
    ScalarField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double c = f.at(i, j);
            out.at(i, j) =
                ((f.at(wrap(i + 1, g.nx()), j) - c) - (c - f.at(wrap(i - 1, g.nx()), j))) * inv;
        }
    }
    return out;
}

ScalarField partial_y(const ScalarField& f) {
    const GridSpec& g = f.grid();
    const int ny = g.ny();
    const double inv = 1.0 / (2.0 * g.node_hy());
    ScalarField out(g);
    for (int i = 0; i < g.nx(); ++i) {
        // (-3f0 + 4f1 - f2) and its mirror, as neighbour differences.
        out.at(i, 0) =
            (3.0 * (f.at(i, 1) - f.at(i, 0)) - (f.at(i, 2) - f.at(i, 1))) * inv;
        out.at(i, ny - 1) =
            (3.0 * (f.at(i, ny - 1) - f.at(i, ny - 2)) - (f.at(i, ny - 2) - f.at(i, ny - 3))) * inv;
        for (int j = 1; j < ny - 1; ++j) out.at(i, j) = (f.at(i, j + 1) - f.at(i, j - 1)) * inv;
    }
    return out;
}

ScalarField partial_yy(const ScalarField& f) {
    const GridSpec& g = f.grid();
    const int ny = g.ny();
    const double inv = 1.0 / (g.node_hy() * g.node_hy());
    ScalarField out(g);
    // (2f0 - 5f1 + 4f2 - f3) = 2(f0-f1) - 3(f1-f2) + (f2-f3)
    auto one_sided = [&](int i, int j0, int step) {
        const double f0 = f.at(i, j0);
        const double f1 = f.at(i, j0 + step);
        const double f2 = f.at(i, j0 + 2 * step);
        const double f3 = f.at(i, j0 + 3 * step);
        return (2.0 * (f0 - f1) - 3.0 * (f1 - f2) + (f2 - f3)) * inv;
    };
    for (int i = 0; i < g.nx(); ++i) {
        out.at(i, 0) = one_sided(i, 0, 1);
        out.at(i, ny - 1) = one_sided(i, ny - 1, -1);
        for (int j = 1; j < ny - 1; ++j) {
            const double c = f.at(i, j);
            out.at(i, j) = ((f.at(i, j + 1) - c) - (c - f.at(i, j - 1))) * inv;
        }
    }
    return out;
}

ScalarField partial_xy(const ScalarField& f) { return partial_x(partial_y(f)); }

// ─── Curvature ────────────────────────────────────────────────────────────────

double brioschi_formula(const FirstFormJet& j) noexcept {
    auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23,
                   double a31, double a32, double a33) {
        return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
               a13 * (a21 * a32 - a22 * a31);
    };
    const double m1 = det3(-0.5 * j.E_vv + j.F_uv - 0.5 * j.G_uu, 0.5 * j.E_u, j.F_u - 0.5 * j.E_v,
                           j.F_v - 0.5 * j.G_u, j.E, j.F,
                           0.5 * j.G_v, j.F, j.G);
    const double m2 = det3(0.0, 0.5 * j.E_v, 0.5 * j.G_u,
                           0.5 * j.E_v, j.E, j.F,
                           0.5 * j.G_u, j.F, j.G);
    const double det = j.E * j.G - j.F * j.F;
    return (m1 - m2) / (det * det);
}

CurvatureField brioschi_curvature(const MetricField& f) {
    const ScalarField E_u = partial_x(f.gxx()), E_v = partial_y(f.gxx());
    const ScalarField F_u = partial_x(f.gxy()), F_v = partial_y(f.gxy());
    const ScalarField G_u = partial_x(f.gyy()), G_v = partial_y(f.gyy());
    const ScalarField E_vv = partial_yy(f.gxx());
    const ScalarField F_uv = partial_xy(f.gxy());
    const ScalarField G_uu = partial_xx(f.gyy());

    const GridSpec& g = f.grid();
    CurvatureField K(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const FirstFormJet jet{f.gxx().at(i, j), f.gxy().at(i, j), f.gyy().at(i, j),
                                   E_u.at(i, j),     E_v.at(i, j),     F_u.at(i, j),
                                   F_v.at(i, j),     G_u.at(i, j),     G_v.at(i, j),
                                   E_vv.at(i, j),    F_uv.at(i, j),    G_uu.at(i, j)};
            K.at(i, j) = brioschi_formula(jet);
        }
    }
    return K;
}

ScalarField riemann_component(const MetricField& f, const CurvatureField& K) {
    if (!(f.grid() == K.grid())) throw GridMismatchError("metric and curvature grids differ");
    const GridSpec& g = f.grid();
    ScalarField R(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double det =
                f.gxx().at(i, j) * f.gyy().at(i, j) - f.gxy().at(i, j) * f.gxy().at(i, j);
            R.at(i, j) = K.at(i, j) * det;
        }
    }
    return R;
}

double killing_residual(const MetricField& f, Axis direction) {
    auto d = [direction](const ScalarField& s) {
        return direction == Axis::X ? partial_x(s) : partial_y(s);
    };
    double worst = 0.0;
    for (const ScalarField* comp : {&f.gxx(), &f.gxy(), &f.gyy()}) {
        const ScalarField derivative = d(*comp);
        for (double v : derivative.values()) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

void write_curvature_csv(std::ostream& out, const CurvatureField& K) {
    const GridSpec& g = K.grid();
    out << "x,y,K\n";
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            out << format_g17(g.node_x(i)) << ',' << format_g17(g.node_y(j)) << ','
                << format_g17(K.at(i, j)) << '\n';
        }
    }
}

// ─── Translations ─────────────────────────────────────────────────────────────

Translation translation_isometry(const CylinderPoint& p, const CylinderPoint& q) noexcept {
    return {wrap_unit(q.x() - p.x()), q.y() - p.y()};
}

CylinderPoint apply_translation(const Translation& t, const CylinderPoint& p) noexcept {
    return CylinderPoint(p.x() + t.dx, p.y() + t.dy);
}

Translation compose(const Translation& first, const Translation& second) noexcept {
    return {wrap_unit(first.dx + second.dx), first.dy + second.dy};
}

}  // namespace lorcyl

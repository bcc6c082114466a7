/// @file src/metric.cpp
/// @brief Exact algebra of flat Lorentzian metrics on the cylinder.

#include "lorcyl/metric.hpp"

#include "lorcyl/errors.hpp"

#include <cmath>
#include <sstream>

namespace lorcyl {

namespace {

std::string format_triple(double e, double f, double g) {
    std::ostringstream os;
    os.precision(17);
    os << "(E=" << e << ", F=" << f << ", G=" << g << ")";
    return os.str();
}

}  // namespace

std::string_view to_string(CausalCharacter c) noexcept {
    switch (c) {
        case CausalCharacter::Timelike:  return "Timelike";
        case CausalCharacter::Null:      return "Null";
        case CausalCharacter::Spacelike: return "Spacelike";
    }
    return "Unknown";
}

double wrap_unit(double x) noexcept {
    double r = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    return r >= 1.0 ? 0.0 : r;
}

CylinderPoint::CylinderPoint(double x, double y) noexcept : x_(wrap_unit(x)), y_(y) {}

TimeOrientation TimeOrientation::make(const FlatMetric& m, TangentVector t) {
    if (!(quadratic_form(m, t) < 0.0)) {
        throw DomainError("time orientation vector is not timelike");
    }
    return TimeOrientation(t);
}

// ─── validate_lorentzian ──────────────────────────────────────────────────────

FlatMetric validate_lorentzian(double E, double F, double G) {
    if (!std::isfinite(E) || !std::isfinite(F) || !std::isfinite(G)) {
        throw DomainError("metric coefficients must be finite " + format_triple(E, F, G));
    }
    const double disc = E * G + F * F;
    if (!(disc > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "metric " << format_triple(E, F, G)
           << " is not Lorentzian: E*G + F^2 = " << disc << " <= 0";
        throw SignatureError(os.str(), disc);
    }
    return FlatMetric(E, F, G);
}

// ─── Forms ────────────────────────────────────────────────────────────────────

double quadratic_form(const FlatMetric& m, TangentVector v) noexcept {
    return -m.E() * v.a * v.a + 2.0 * m.F() * v.a * v.b + m.G() * v.b * v.b;
}

double metric_pairing(const FlatMetric& m, TangentVector u, TangentVector v) noexcept {
    return -m.E() * (u.a * v.a) + m.F() * (u.a * v.b + u.b * v.a) + m.G() * (u.b * v.b);
}

CausalCharacter classify_vector(const FlatMetric& m, TangentVector v, double eps) {
    if (v.is_zero()) throw DomainError("causal character of the zero vector is undefined");
    if (!(eps >= 0.0)) throw DomainError("null tolerance must be non-negative");

    const double q = quadratic_form(m, v);
    const double scale = (std::abs(m.E()) + 2.0 * std::abs(m.F()) + std::abs(m.G())) *
                         (v.a * v.a + v.b * v.b);
    if (std::abs(q) <= eps * scale) return CausalCharacter::Null;
    return q < 0.0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike;
}

FlatMetric negate_metric(const FlatMetric& m) noexcept {
    return FlatMetric(-m.E(), -m.F(), -m.G());
}

// ─── Cones ────────────────────────────────────────────────────────────────────

std::pair<TangentVector, TangentVector> null_directions(const FlatMetric& m) noexcept {
    const double E = m.E();
    const double F = m.F();
    const double G = m.G();
    if (E == 0.0) return {TangentVector{1.0, 0.0}, TangentVector{-G, 2.0 * F}};

    // Roots of E s² - 2F s - G = 0. The root with the cancelling sign is taken from
    // the product s₊·s₋ = -G/E.
    const double root = std::sqrt(m.discriminant());
    double s_plus = 0.0;
    double s_minus = 0.0;
    if (F >= 0.0) {
        const double big = F + root;
        s_plus = big / E;
        s_minus = -G / big;
    } else {
        const double big = F - root;
        s_minus = big / E;
        s_plus = -G / big;
    }
    return {TangentVector{s_plus, 1.0}, TangentVector{s_minus, 1.0}};
}

TimeOrientation canonical_time_orientation(const FlatMetric& m) {
    const double E = m.E();
    const double F = m.F();
    const double G = m.G();
    TangentVector t;
    if (E < 0.0) {
        t = {F / E, 1.0};
    } else if (E == 0.0) {
        t = {(-1.0 - G) / (2.0 * F), 1.0};
    } else if (G > 0.0) {
        t = {1.0, -F / G};
    } else if (G < 0.0) {
        t = {0.0, 1.0};
    } else {
        t = {1.0, 0.0};
    }
    return TimeOrientation::make(m, t);
}

bool is_future_directed(const FlatMetric& m, const TimeOrientation& t, TangentVector v,
                        double eps) {
    if (classify_vector(m, v, eps) == CausalCharacter::Spacelike) {
        throw DomainError("future-directedness is only defined for causal vectors");
    }
    return metric_pairing(m, v, t.vector()) < 0.0;
}

}  // namespace lorcyl

/// @file include/lorcyl/metric.hpp
/// @brief Constant-coefficient Lorentzian metrics g = -E dx² + 2F dx dy + G dy² on the
///        cylinder S¹×ℝ (x ~ x+1).

#pragma once

#include <string_view>
#include <utility>

namespace lorcyl {

// ─── Value types ──────────────────────────────────────────────────────────────

/// Components along (∂x, ∂y).
struct TangentVector {
    double a = 0.0;
    double b = 0.0;

    friend constexpr TangentVector operator+(TangentVector u, TangentVector v) noexcept {
        return {u.a + v.a, u.b + v.b};
    }
    friend constexpr TangentVector operator-(TangentVector u, TangentVector v) noexcept {
        return {u.a - v.a, u.b - v.b};
    }
    friend constexpr TangentVector operator-(TangentVector v) noexcept { return {-v.a, -v.b}; }
    friend constexpr TangentVector operator*(double s, TangentVector v) noexcept {
        return {s * v.a, s * v.b};
    }
    friend constexpr bool operator==(TangentVector, TangentVector) = default;

    constexpr bool is_zero() const noexcept { return a == 0.0 && b == 0.0; }
};

/// The three constants of g = -E dx² + 2F dx dy + G dy².
///
/// F is half the cross term. Instances always satisfy E·G + F² > 0; build them with
/// validate_lorentzian().
class FlatMetric {
public:
    double E() const noexcept { return e_; }
    double F() const noexcept { return f_; }
    double G() const noexcept { return g_; }

    /// E·G + F²; strictly positive for every instance.
    double discriminant() const noexcept { return e_ * g_ + f_ * f_; }

    friend bool operator==(const FlatMetric&, const FlatMetric&) = default;

private:
    FlatMetric(double e, double f, double g) noexcept : e_(e), f_(f), g_(g) {}

    friend FlatMetric validate_lorentzian(double E, double F, double G);
    friend FlatMetric negate_metric(const FlatMetric& m) noexcept;

    double e_;
    double f_;
    double g_;
};

/// Coefficients of -E dx² + 2F dx dy + G dy² at one point, not validated.
struct PointCoefficients {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
};

enum class CausalCharacter { Timelike, Null, Spacelike };

std::string_view to_string(CausalCharacter c) noexcept;

/// A timelike vector selecting the future cone. Constant on the cylinder.
class TimeOrientation {
public:
    /// Throws DomainError unless quadratic_form(m, t) < 0.
    static TimeOrientation make(const FlatMetric& m, TangentVector t);

    TangentVector vector() const noexcept { return t_; }

private:
    explicit TimeOrientation(TangentVector t) noexcept : t_(t) {}
    TangentVector t_;
};

/// Point on S¹×ℝ with x stored in [0,1).
class CylinderPoint {
public:
    CylinderPoint() = default;
    CylinderPoint(double x, double y) noexcept;

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

    friend bool operator==(const CylinderPoint&, const CylinderPoint&) = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

/// Representative of x modulo 1 in [0,1).
double wrap_unit(double x) noexcept;

// ─── Operations ───────────────────────────────────────────────────────────────

/// Checks finiteness and signature (-,+). Throws SignatureError naming E·G + F² when
/// the form is degenerate or definite, DomainError on non-finite input.
FlatMetric validate_lorentzian(double E, double F, double G);

/// q(v) = -E a² + 2F a b + G b².
double quadratic_form(const FlatMetric& m, TangentVector v) noexcept;

/// Symmetric bilinear form with metric_pairing(m, v, v) == quadratic_form(m, v).
double metric_pairing(const FlatMetric& m, TangentVector u, TangentVector v) noexcept;

/// Null when |q(v)| <= eps·(|E|+2|F|+|G|)·(a²+b²); eps = 0 is an exact comparison.
/// Throws DomainError for the zero vector or negative eps.
CausalCharacter classify_vector(const FlatMetric& m, TangentVector v, double eps = 0.0);

/// (-E, -F, -G). Same discriminant, opposite quadratic form.
FlatMetric negate_metric(const FlatMetric& m) noexcept;

/// The two null directions. For E ≠ 0 they are (s₊, 1), (s₋, 1) with
/// s± = (F ± √(F²+EG))/E; for E = 0 they are (1, 0) and (-G, 2F).
std::pair<TangentVector, TangentVector> null_directions(const FlatMetric& m) noexcept;

/// Deterministic global timelike field. Future is +y whenever a timelike vector with
/// b > 0 can be chosen by the branch table, otherwise +x.
TimeOrientation canonical_time_orientation(const FlatMetric& m);

/// true iff g(v, T) < 0. Throws DomainError for the zero vector or when v is spacelike
/// at tolerance eps.
bool is_future_directed(const FlatMetric& m, const TimeOrientation& t, TangentVector v,
                        double eps = 0.0);

}  // namespace lorcyl

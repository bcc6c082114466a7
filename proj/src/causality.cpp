/// @file src/causality.cpp
/// @brief Causal classifier and winding-number membership tests.

#include "lorcyl/causality.hpp"

#include "lorcyl/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace lorcyl {

std::string_view to_string(CausalClass c) noexcept {
    switch (c) {
        case CausalClass::TotallyVicious:         return "TotallyVicious";
        case CausalClass::ChronologicalNonCausal: return "ChronologicalNonCausal";
        case CausalClass::GloballyHyperbolic:     return "GloballyHyperbolic";
    }
    return "Unknown";
}

CausalClass classify_spacetime(const FlatMetric& m) noexcept {
    if (m.E() > 0.0) return CausalClass::TotallyVicious;
    if (m.E() == 0.0) return CausalClass::ChronologicalNonCausal;
    return CausalClass::GloballyHyperbolic;
}

CausalClass dual_class(CausalClass c) noexcept {
    switch (c) {
        case CausalClass::TotallyVicious:         return CausalClass::GloballyHyperbolic;
        case CausalClass::GloballyHyperbolic:     return CausalClass::TotallyVicious;
        case CausalClass::ChronologicalNonCausal: return CausalClass::ChronologicalNonCausal;
    }
    return c;
}

CausalClass classify_conformal(const FlatMetric& flat, const Expression& psi) {
    if (!validate_periodicity(psi)) {
        throw DomainError("conformal factor psi = " + psi.to_string() + " is not periodic in x");
    }
    return classify_spacetime(flat);
}

// ─── Membership ───────────────────────────────────────────────────────────────

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool admissible(const FlatMetric& m, const TimeOrientation& t, TangentVector v, FutureMode mode) {
    if (v.is_zero()) return false;
    const double q = quadratic_form(m, v);
    const bool character_ok = mode == FutureMode::Chronological ? q < 0.0 : q <= 0.0;
    return character_ok && metric_pairing(m, v, t.vector()) < 0.0;
}

// Real solution set {u : α u + β < 0} (or <= 0), intersected into [lo, hi].
// Returns false when the set is empty.
bool restrict_linear(double alpha, double beta, bool strict, double& lo, double& hi) {
    if (alpha == 0.0) return strict ? beta < 0.0 : beta <= 0.0;
    const double root = -beta / alpha;
    if (alpha > 0.0) {
        hi = std::min(hi, root);
    } else {
        lo = std::max(lo, root);
    }
    return lo <= hi;
}

bool any_winding(const FlatMetric& m, const TimeOrientation& t, double dx, double dy,
                 FutureMode mode, const std::vector<double>& ks) {
    for (double k : ks) {
        if (admissible(m, t, TangentVector{dx + k, dy}, mode)) return true;
    }
    return false;
}

// Candidate windings around u (in cover coordinates): the integers k with dx + k
// adjacent to u, padded by one on each side.
void push_near(std::vector<double>& ks, double u, double dx) {
    const double base = std::floor(u - dx);
    for (int d = -1; d <= 2; ++d) ks.push_back(base + d);
}

}  // namespace

bool future_membership(const FlatMetric& m, const TimeOrientation& t, const CylinderPoint& p,
                       const CylinderPoint& target, FutureMode mode) {
    const double dx = wrap_unit(target.x() - p.x());
    const double dy = target.y() - p.y();
    if (mode == FutureMode::Causal && dx == 0.0 && dy == 0.0) return true;

    // ∂x timelike: -E k² dominates q for large |k| and g(∂x, T) != 0 fixes the sign of k.
    if (m.E() > 0.0) return true;

    std::vector<double> ks;
    if (m.E() < 0.0) {
        // q((u, dy)) is an upward parabola in u with vertex at u = (F/E)·dy, so the
        // winding nearest the vertex minimises q. The future sheet is selected by the
        // sign of dy alone, which the exact check below enforces.
        if (dy == 0.0) return false;
        push_near(ks, m.F() / m.E() * dy, dx);
        return any_winding(m, t, dx, dy, mode, ks);
    }

    // E == 0: q = 2F dy u + G dy² and g(v, T) are both affine in u.
    const TangentVector tv = t.vector();
    double lo = -kInf;
    double hi = kInf;
    const bool strict_q = mode == FutureMode::Chronological;
    if (!restrict_linear(2.0 * m.F() * dy, m.G() * dy * dy, strict_q, lo, hi)) return false;
    if (!restrict_linear(m.F() * tv.b, m.F() * dy * tv.a + m.G() * dy * tv.b, true, lo, hi)) {
        return false;
    }

    if (std::isinf(lo) && std::isinf(hi)) {
        push_near(ks, 0.0, dx);
    } else if (std::isinf(lo)) {
        push_near(ks, hi - 2.0, dx);
        push_near(ks, hi, dx);
    } else if (std::isinf(hi)) {
        push_near(ks, lo, dx);
        push_near(ks, lo + 2.0, dx);
    } else if (hi - lo > 3.0) {
        push_near(ks, 0.5 * (lo + hi), dx);
    } else {
        for (double k = std::floor(lo - dx) - 1.0; k <= std::ceil(hi - dx) + 1.0; k += 1.0) {
            ks.push_back(k);
        }
    }
    return any_winding(m, t, dx, dy, mode, ks);
}

bool diamond_membership(const FlatMetric& m, const TimeOrientation& t, const CylinderPoint& p,
                        const CylinderPoint& q, const CylinderPoint& r) {
    return future_membership(m, t, p, r, FutureMode::Causal) &&
           future_membership(m, t, r, q, FutureMode::Causal);
}

std::optional<ClosedCurveWitness> closed_causal_curve(const FlatMetric& m,
                                                      const CylinderPoint& base) {
    if (m.E() < 0.0) return std::nullopt;
    return ClosedCurveWitness{base, classify_vector(m, TangentVector{1.0, 0.0}, 0.0)};
}

}  // namespace lorcyl

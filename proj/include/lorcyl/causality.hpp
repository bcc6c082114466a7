/// @file include/lorcyl/causality.hpp
/// @brief Exact causal structure of flat (and conformally flat) Lorentzian cylinders.
///
/// Only the sign of q(∂x) = -E matters: ∂x timelike gives a totally vicious spacetime,
/// ∂x null a chronological but non-causal one, ∂x spacelike a globally hyperbolic one.
/// Causal relations are decided on the universal cover ℝ², where a point of the cylinder
/// lifts to (x + k, y) for every winding number k.

#pragma once

#include "lorcyl/expression.hpp"
#include "lorcyl/metric.hpp"

#include <optional>
#include <string_view>

namespace lorcyl {

enum class CausalClass { TotallyVicious, ChronologicalNonCausal, GloballyHyperbolic };

std::string_view to_string(CausalClass c) noexcept;

/// Exact sign-of-E rule. E is compared with zero on the stored value.
CausalClass classify_spacetime(const FlatMetric& m) noexcept;

/// Class of (Z, -g) given the class of (Z, g).
CausalClass dual_class(CausalClass c) noexcept;

/// Class of e^{2ψ}·g. ψ must be x-periodic (checked numerically); it cannot change the
/// answer. Throws DomainError for an aperiodic ψ and propagates evaluation errors.
CausalClass classify_conformal(const FlatMetric& flat, const Expression& psi);

enum class FutureMode { Chronological, Causal };

/// Is `target` in I⁺(p) (Chronological) or J⁺(p) (Causal)?
///
/// True iff some winding k makes v = (Δx + k, Δy) future-directed and timelike
/// (resp. causal and non-zero), with Δx = (target.x - p.x) mod 1 and Δy = target.y - p.y.
/// J⁺ is reflexive: target == p is always in J⁺(p). Decided in closed form, without
/// unbounded iteration over k.
bool future_membership(const FlatMetric& m, const TimeOrientation& t, const CylinderPoint& p,
                       const CylinderPoint& target, FutureMode mode);

/// r ∈ J⁺(p) ∩ J⁻(q).
bool diamond_membership(const FlatMetric& m, const TimeOrientation& t, const CylinderPoint& p,
                        const CylinderPoint& q, const CylinderPoint& r);

/// The loop s ↦ (base.x + s mod 1, base.y), s ∈ [0, 1], an integral curve of ∂x.
struct ClosedCurveWitness {
    CylinderPoint base;
    CausalCharacter character;

    CylinderPoint at(double s) const noexcept { return {base.x() + s, base.y()}; }
};

/// A closed causal curve through `base` when one exists (E >= 0); Timelike for E > 0,
/// Null for E = 0. Empty for E < 0.
std::optional<ClosedCurveWitness> closed_causal_curve(const FlatMetric& m,
                                                      const CylinderPoint& base = {});

}  // namespace lorcyl

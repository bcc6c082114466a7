#include "lorcyl/causality.hpp"
#include "lorcyl/curvature.hpp"
#include "lorcyl/errors.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lorcyl {
namespace {

using testing::Gen;
using enum CausalClass;

FlatMetric M(double e, double f, double g) { return validate_lorentzian(e, f, g); }

// Brute-force reference: scan a generous window of windings on the universal cover.
bool brute_membership(const FlatMetric& m, const TimeOrientation& t, const CylinderPoint& p,
                      const CylinderPoint& r, FutureMode mode) {
    const double dx = wrap_unit(r.x() - p.x());
    const double dy = r.y() - p.y();
    if (mode == FutureMode::Causal && dx == 0.0 && dy == 0.0) return true;
    // For E != 0 the sign of q changes only at the two roots around the vertex F·dy/E,
    // which sit far out when |E| is small; scan past both of them.
    double centre = 0.0;
    int reach = 400;
    if (m.E() != 0.0) {
        centre = std::round(m.F() / m.E() * dy);
        reach += static_cast<int>(std::abs(dy) * std::sqrt(m.discriminant()) / std::abs(m.E()));
    }
    for (int k = -reach; k <= reach; ++k) {
        const TangentVector v{dx + centre + k, dy};
        if (v.is_zero()) continue;
        const double q = quadratic_form(m, v);
        const bool ok = mode == FutureMode::Chronological ? q < 0 : q <= 0;
        if (ok && metric_pairing(m, v, t.vector()) < 0) return true;
    }
    return false;
}

TEST(Classify, CanonicalMetrics) {
    EXPECT_EQ(classify_spacetime(M(1, 0, 1)), TotallyVicious);
    EXPECT_EQ(classify_spacetime(M(0, 1, 0)), ChronologicalNonCausal);
    EXPECT_EQ(classify_spacetime(M(-1, 0, -1)), GloballyHyperbolic);
}

TEST(Classify, DualClass) {
    EXPECT_EQ(dual_class(TotallyVicious), GloballyHyperbolic);
    EXPECT_EQ(dual_class(ChronologicalNonCausal), ChronologicalNonCausal);
    EXPECT_EQ(dual_class(GloballyHyperbolic), TotallyVicious);
}

TEST(Classify, Conformal) {
    EXPECT_EQ(classify_conformal(M(1, 0, 1), Expression::parse("sin(2*pi*x)+y")), TotallyVicious);
    EXPECT_EQ(classify_conformal(M(0, 1, 0), Expression::parse("0")), ChronologicalNonCausal);
    EXPECT_EQ(classify_conformal(M(-1, 0, -1), Expression::parse("exp(cos(2*pi*x))")), GloballyHyperbolic);
    EXPECT_THROW(classify_conformal(M(1, 0, 1), Expression::parse("x")), DomainError);
    EXPECT_THROW(classify_conformal(M(1, 0, 1), Expression::parse("log(y)")), DomainError);
}

TEST(Membership, Examples) {
    const FlatMetric gh = M(-1, 0, -1);
    const TimeOrientation up = TimeOrientation::make(gh, {0, 1});
    EXPECT_TRUE(future_membership(gh, up, {0, 0}, {0.5, 2}, FutureMode::Causal));
    EXPECT_FALSE(future_membership(gh, up, {0, 0}, {0.4, 0.3}, FutureMode::Causal));

    const FlatMetric tv = M(1, 0, 1);
    const TimeOrientation along_x = TimeOrientation::make(tv, {1, 0});
    EXPECT_TRUE(future_membership(tv, along_x, {0, 0}, {0.3, -5}, FutureMode::Chronological));
    // The witness winding from the example.
    const TangentVector w{6.3, -5};
    EXPECT_LT(quadratic_form(tv, w), 0.0);
    EXPECT_LT(metric_pairing(tv, w, along_x.vector()), 0.0);
}

TEST(Membership, CausalFutureIsReflexive) {
    const CylinderPoint p{0.3, 0.7};
    for (const FlatMetric& m : {M(1, 0, 1), M(0, 1, 0), M(-1, 0, -1)}) {
        EXPECT_TRUE(future_membership(m, canonical_time_orientation(m), p, p, FutureMode::Causal));
    }
    const FlatMetric gh = M(-1, 0, -1);
    EXPECT_FALSE(future_membership(gh, canonical_time_orientation(gh), p, p, FutureMode::Chronological));
}

TEST(Diamond, Examples) {
    const FlatMetric gh = M(-1, 0, -1);
    const TimeOrientation t = canonical_time_orientation(gh);
    EXPECT_TRUE(diamond_membership(gh, t, {0, 0}, {0, 1}, {0.2, 0.5}));
    EXPECT_FALSE(diamond_membership(gh, t, {0, 0}, {0, 1}, {0.2, 1.5}));

    Gen gen(31);
    const FlatMetric tv = M(1, 0, 1);
    const TimeOrientation tt = canonical_time_orientation(tv);
    for (int n = 0; n < 200; ++n) {
        ASSERT_TRUE(diamond_membership(tv, tt, gen.point(), gen.point(), gen.point()));
    }
}

TEST(ClosedCurve, Witnesses) {
    auto w = closed_causal_curve(M(1, 0, 1));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->character, CausalCharacter::Timelike);
    w = closed_causal_curve(M(0, 1, 0), {0.25, 3});
    ASSERT_TRUE(w);
    EXPECT_EQ(w->character, CausalCharacter::Null);
    EXPECT_EQ(w->at(0.0), w->at(1.0));
    EXPECT_EQ(w->at(0.5).y(), 3.0);
    EXPECT_FALSE(closed_causal_curve(M(-1, 0, -1)));
}

// ─── Properties ───────────────────────────────────────────────────────────────

TEST(CausalityProperty, TrichotomyAndDuality) {
    Gen gen(32);
    for (int n = 0; n < 10000; ++n) {
        const FlatMetric m = n % 10 == 0 ? gen.null_circle() : gen.lorentzian();
        const CausalClass c = classify_spacetime(m);
        const CausalClass rule = m.E() > 0 ? TotallyVicious : m.E() < 0 ? GloballyHyperbolic : ChronologicalNonCausal;
        ASSERT_EQ(c, rule);
        ASSERT_EQ(classify_spacetime(negate_metric(m)), dual_class(c));
    }
}

TEST(CausalityProperty, ClosedFormMatchesWindingScan) {
    Gen gen(33);
    for (int n = 0; n < 3000; ++n) {
        const FlatMetric m = n % 3 == 0 ? gen.null_circle() : gen.lorentzian();
        const TimeOrientation t = canonical_time_orientation(m);
        const CylinderPoint p = gen.point();
        const CylinderPoint r = gen.point();
        for (FutureMode mode : {FutureMode::Chronological, FutureMode::Causal}) {
            ASSERT_EQ(future_membership(m, t, p, r, mode), brute_membership(m, t, p, r, mode))
                << "case " << n << " E=" << m.E() << " F=" << m.F() << " G=" << m.G();
        }
    }
}

TEST(CausalityProperty, ChronologicalImpliesCausal) {
    Gen gen(34);
    for (int n = 0; n < 5000; ++n) {
        const FlatMetric m = n % 3 == 0 ? gen.null_circle() : gen.lorentzian();
        const TimeOrientation t = canonical_time_orientation(m);
        const CylinderPoint p = gen.point();
        const CylinderPoint r = gen.point();
        if (future_membership(m, t, p, r, FutureMode::Chronological)) {
            ASSERT_TRUE(future_membership(m, t, p, r, FutureMode::Causal));
        }
    }
}

TEST(CausalityProperty, TranslationInvariance) {
    Gen gen(35);
    for (int n = 0; n < 1000; ++n) {
        const FlatMetric m = n % 3 == 0 ? gen.null_circle() : gen.lorentzian();
        const TimeOrientation t = canonical_time_orientation(m);
        const CylinderPoint p = gen.point();
        const CylinderPoint r = gen.point();
        // Quarter-integer shifts keep the winding arithmetic exact.
        const Translation shift{gen.integer(0, 3) * 0.25, gen.integer(-8, 8) * 0.25};
        for (FutureMode mode : {FutureMode::Chronological, FutureMode::Causal}) {
            ASSERT_EQ(future_membership(m, t, p, r, mode),
                      future_membership(m, t, apply_translation(shift, p), apply_translation(shift, r), mode));
        }
    }
}

TEST(CausalityProperty, NullCircleIsChronologicalButNotCausal) {
    Gen gen(36);
    for (int n = 0; n < 1000; ++n) {
        const FlatMetric m = gen.null_circle();
        const TimeOrientation t = canonical_time_orientation(m);
        const CylinderPoint p = gen.point();
        ASSERT_FALSE(future_membership(m, t, p, p, FutureMode::Chronological));
        ASSERT_TRUE(future_membership(m, t, p, p, FutureMode::Causal));
        // The closed null loop through p returns to p after one turn.
        const TangentVector loop{1, 0};
        ASSERT_EQ(quadratic_form(m, loop), 0.0);
    }
}

TEST(CausalityProperty, ChronologicalFutureMovesMonotonicallyInY) {
    Gen gen(37);
    for (int n = 0; n < 3000; ++n) {
        const FlatMetric m = n % 2 == 0 ? gen.null_circle() : gen.dominant(-1, 0.0);
        const TimeOrientation t = canonical_time_orientation(m);
        const CylinderPoint p = gen.point();
        const CylinderPoint r = gen.point();
        const bool forward = future_membership(m, t, p, r, FutureMode::Chronological);
        const bool backward = future_membership(m, t, r, p, FutureMode::Chronological);
        ASSERT_NE(r.y() - p.y(), 0.0);
        // Every chronological pair moves in one fixed y-direction, and no pair goes both ways.
        ASSERT_FALSE(forward && backward);
        if (forward) {
            const double sign = t.vector().b > 0 ? 1.0 : -1.0;
            ASSERT_GT(sign * (r.y() - p.y()), 0.0) << "case " << n;
        }
    }
}

TEST(CausalityProperty, GloballyHyperbolicDiamondsAreYBounded) {
    Gen gen(38);
    int members = 0;
    for (int n = 0; n < 1000; ++n) {
        const FlatMetric m = gen.dominant(-1, 0.0);
        const TimeOrientation t = canonical_time_orientation(m);
        const CylinderPoint p = gen.point(-1, 0.5);
        const CylinderPoint q(gen.uniform(0, 1), p.y() + gen.uniform(0, 2));
        const CylinderPoint r(gen.uniform(0, 1), gen.uniform(-2, 3));
        if (diamond_membership(m, t, p, q, r)) {
            ++members;
            ASSERT_GE(r.y(), p.y());
            ASSERT_LE(r.y(), q.y());
        }
    }
    EXPECT_GT(members, 20);
}

TEST(CausalityProperty, ConformalFactorDoesNotChangeClassOrCharacter) {
    Gen gen(39);
    for (int n = 0; n < 200; ++n) {
        const FlatMetric m = n % 4 == 0 ? gen.null_circle() : gen.lorentzian();
        const Expression psi = Expression::parse(gen.periodic_expression());
        ASSERT_EQ(classify_conformal(m, psi), classify_spacetime(m));
        const double x = gen.uniform(0, 1);
        const double y = gen.uniform(-2, 2);
        const double factor = std::exp(2 * psi.evaluate(x, y));
        const TangentVector v = gen.nonzero_vector();
        const FlatMetric scaled = validate_lorentzian(factor * m.E(), factor * m.F(), factor * m.G());
        if (std::abs(quadratic_form(m, v)) > 1e-9) {
            ASSERT_EQ(classify_vector(scaled, v, 1e-12), classify_vector(m, v, 1e-12));
        }
    }
}

}  // namespace
}  // namespace lorcyl

#include "oracles.hpp"

#include "wolbachia/periodic_analysis.hpp"
#include "wolbachia/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wolbachia;

namespace {

PeriodicSystem sys(const char* name) { return to_system(preset(name)); }

const FixedPointRecord* nonzero_record(const std::vector<FixedPointRecord>& recs, double near, double tol = 1e-6)
{
    for (const auto& r : recs)
        if (std::abs(r.value - near) < tol) return &r;
    return nullptr;
}

}  // namespace

TEST(PeriodicSystem, MinimalPeriodAndRotation)
{
    MapParams a = MapParams::parse("0", "0.2", "0.45"), b = MapParams::parse("0", "0.4", "0.9");
    PeriodicSystem s({a, b, a, b});
    EXPECT_EQ(s.minimal_period(), 2);
    EXPECT_FALSE(s.period_is_minimal());
    EXPECT_EQ(s.rotated(1).map(0), b);
    EXPECT_EQ(s.rotated(3).map(0), b);
    EXPECT_TRUE(PeriodicSystem({a, b}).period_is_minimal());
}

TEST(Hypotheses, ReportsEachIndex)
{
    PeriodicSystem s({MapParams::parse("0", "0.5", "0.4"), MapParams::parse("0.5", "0.1", "0.9")});
    auto h = hypothesis_check(s);
    EXPECT_FALSE(h.satisfies_conjecture_hypotheses);
    EXPECT_FALSE(h.per_index_details[0].sf_below_sh);
    EXPECT_TRUE(h.per_index_details[1].sf_below_sh);
    EXPECT_FALSE(h.per_index_details[1].mu_at_most_mu_star);
    EXPECT_THROW(check_conjecture_bound(s), HypothesisError);
}

TEST(PresetExample1, DeflatedPolynomialIsTheQuartic)
{
    auto fpp = fixed_point_polynomial(compose_system(sys("example1")));
    auto quartic = deflate_root(fpp, BigRational(0));
    ExactPolynomial expected{BigRational(-4523020), BigRational(21055109), BigRational(-34761128), BigRational(26901936),
                             BigRational(-11197440)};
    ASSERT_EQ(quartic.degree(), 4);
    BigRational scale = quartic.leading() / expected.leading();
    EXPECT_EQ(quartic, expected * scale);
    EXPECT_EQ(count_real_roots(fpp, BigRational(0), BigRational(1)), 0);
    EXPECT_EQ(count_real_roots(fixed_point_polynomial(compose_system(sys("example1b"))), BigRational(0), BigRational(1)), 0);
}

TEST(PresetExample1, OnlyZeroIsRecorded)
{
    auto recs = enumerate_fixed_points(sys("example1"));
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].value, 0.0);
    EXPECT_EQ(recs[0].classification, Stability::ATTRACTING);
    EXPECT_TRUE(recs[0].is_common_fixed_point);
}

TEST(PresetFig1, CommonRepellingFixedPoint)
{
    auto recs = enumerate_fixed_points(sys("fig1"));
    auto* r = nonzero_record(recs, 4.0 / 9.0);
    ASSERT_NE(r, nullptr);
    ASSERT_TRUE(r->exact);
    EXPECT_EQ(*r->exact, make_rational(4, 9));
    EXPECT_EQ(r->classification, Stability::REPELLING);
    EXPECT_GT(r->multiplier, 1.0);
    EXPECT_EQ(r->lifted_period, 1);
    EXPECT_TRUE(r->is_common_fixed_point);
}

TEST(PresetPostex, RepellingCommonPointAndAttractingTwoCycle)
{
    auto s = sys("postex");
    EXPECT_EQ(s.map(1).mu(), make_rational(9, 64));
    auto recs = enumerate_fixed_points(s);
    auto* common = nonzero_record(recs, 0.625);
    ASSERT_NE(common, nullptr);
    EXPECT_EQ(*common->exact, make_rational(5, 8));
    EXPECT_EQ(common->classification, Stability::REPELLING);
    int others = 0;
    for (const auto& r : recs) {
        if (r.value == 0.0 || &r == common) continue;
        ++others;
        EXPECT_EQ(r.classification, Stability::ATTRACTING);
        EXPECT_EQ(r.lifted_period, 2);
        EXPECT_FALSE(r.is_common_fixed_point);
    }
    EXPECT_EQ(others, 1);
}

TEST(PresetFig3, NearTangentTouchPoint)
{
    auto s = sys("fig3");
    auto recs = enumerate_fixed_points(s);
    ASSERT_EQ(recs.size(), 2u);
    const auto& r = recs[1];
    EXPECT_NEAR(r.value, 0.7949203, 5e-7);
    EXPECT_TRUE(r.near_tangent);
    EXPECT_LT(std::abs(r.multiplier - 1.0), 1e-4);
    // The preset parameters are rounded decimals, so no certified root exists; the gap is tiny.
    EXPECT_FALSE(r.certified);
    auto F = compose_system(s);
    EXPECT_LT(std::abs(F.evaluate(r.value) - r.value), 1e-6);
}

TEST(PresetFig2, PanelBHasNoNonzeroFixedPoint)
{
    auto fpp = fixed_point_polynomial(compose_system(sys("fig2b")));
    EXPECT_EQ(count_real_roots(fpp, BigRational(0), BigRational(1)), 0);
    auto a = check_conjecture_bound(sys("fig2a"));
    EXPECT_EQ(a.count_nonzero, 2);
}

TEST(Records, ChainRuleMultiplierAgreesWithComposedDerivative)
{
    std::mt19937_64 rng(40);
    for (int i = 0; i < 150; ++i) {
        auto s = oracle::random_valid_system(rng, 2 + i % 3);
        for (const auto& r : enumerate_fixed_points(s)) {
            if (!r.certified) continue;
            EXPECT_LE(std::abs(r.multiplier - r.composed_derivative), 1e-8 * std::max(1.0, std::abs(r.multiplier)));
        }
    }
}

TEST(Records, OrbitPointsFollowTheMaps)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i) {
        auto s = oracle::random_valid_system(rng, 2 + i % 3);
        for (const auto& r : enumerate_fixed_points(s)) {
            ASSERT_EQ(static_cast<int>(r.orbit_points.size()), s.period());
            EXPECT_DOUBLE_EQ(r.orbit_points[0], r.value);
            for (int n = 0; n + 1 < s.period(); ++n)
                EXPECT_NEAR(r.orbit_points[static_cast<std::size_t>(n + 1)], eval_map(s.map(n), r.orbit_points[static_cast<std::size_t>(n)]), 1e-12);
        }
    }
}

TEST(Records, CommonFixedPointDetectedWhenConstructed)
{
    // Build f_2 through the fixed point x0 of f_1 by solving for mu_2.
    std::mt19937_64 rng(42);
    int built = 0;
    for (int i = 0; i < 400 && built < 40; ++i) {
        BigRational x0 = oracle::random_rational(rng, 1, 99, 100);
        auto solve_mu = [&](const BigRational& sf, const BigRational& sh) {
            BigRational den = sh * x0 * x0 - (sh + sf) * x0 + 1;
            BigRational mu = 1 - den / (1 - sf);
            mu.canonicalize();
            return mu;
        };
        MapParams g1 = oracle::random_valid_map(rng), g2 = oracle::random_valid_map(rng);
        BigRational mu1 = solve_mu(g1.sf(), g1.sh()), mu2 = solve_mu(g2.sf(), g2.sh());
        if (mu1 < 0 || mu2 < 0 || mu1 > mu_star(g1) || mu2 > mu_star(g2)) continue;
        PeriodicSystem s({MapParams(mu1, g1.sf(), g1.sh()), MapParams(mu2, g2.sf(), g2.sh())});
        auto recs = enumerate_fixed_points(s);
        const FixedPointRecord* hit = nullptr;
        for (const auto& r : recs)
            if (r.exact && *r.exact == x0) hit = &r;
        ASSERT_NE(hit, nullptr) << to_string(x0);
        EXPECT_TRUE(hit->is_common_fixed_point);
        EXPECT_EQ(hit->lifted_period, 1);
        ++built;
    }
    EXPECT_GE(built, 10);
}

TEST(Records, NonCommonPointsAreGenuinelyMoved)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        auto s = oracle::random_valid_system(rng, 2);
        for (const auto& r : enumerate_fixed_points(s)) {
            double moved = std::abs(eval_map(s.map(0), r.value) - r.value);
            if (r.is_common_fixed_point) {
                EXPECT_LT(moved, 1e-10);
            } else {
                EXPECT_GT(moved, 1e-10);
                EXPECT_EQ(r.lifted_period, 2);
            }
        }
    }
}

TEST(Records, LiftingUsesMinimalParameterPeriod)
{
    auto base = sys("postex");
    PeriodicSystem doubled({base.map(0), base.map(1), base.map(0), base.map(1)});
    auto recs = enumerate_fixed_points(doubled);
    ASSERT_TRUE(nonzero_record(recs, 0.625));
    EXPECT_EQ(nonzero_record(recs, 0.625)->lifted_period, 1);
    for (const auto& r : recs)
        EXPECT_LE(r.lifted_period, 2);
}

TEST(Bound, RotationDoesNotChangeTheCount)
{
    std::mt19937_64 rng(44);
    for (int i = 0; i < 100; ++i) {
        int t = 2 + i % 3;
        auto s = oracle::random_valid_system(rng, t);
        int c = check_conjecture_bound(s).count_nonzero;
        for (int k = 1; k < t; ++k) EXPECT_EQ(check_conjecture_bound(s.rotated(k)).count_nonzero, c);
    }
}

TEST(Bound, AtMostTwoNonzeroFixedPointsSmallSweep)
{
    std::mt19937_64 rng(45);
    for (int i = 0; i < 300; ++i) {
        auto s = oracle::random_valid_system(rng, 2 + i % 3);
        auto b = check_conjecture_bound(s);
        EXPECT_TRUE(b.bound_satisfied);
        EXPECT_EQ(b.count_nonzero, oracle::descartes_count_unit(fixed_point_polynomial(compose_system(s))));
    }
}

TEST(Bound, UniqueInteriorFixedPointWhenMuIsZero)
{
    std::mt19937_64 rng(46);
    int checked = 0;
    while (checked < 200) {
        MapParams a = oracle::random_valid_map(rng), b = oracle::random_valid_map(rng);
        if (a.sf() == 0 && b.sf() == 0) continue;
        PeriodicSystem s({MapParams(BigRational(0), a.sf(), a.sh()), MapParams(BigRational(0), b.sf(), b.sh())});
        auto r = check_conjecture_bound(s);
        ASSERT_TRUE(r.unique_interior);
        EXPECT_TRUE(*r.unique_interior);
        EXPECT_TRUE(r.one_is_fixed);
        ++checked;
    }
}

TEST(Bound, AllSfZeroCornerHasNoInteriorFixedPoint)
{
    // With sf_1 = sf_2 = 0 and mu = 0 each map fixes exactly 0 and 1, so the composition has no interior fixed point.
    PeriodicSystem s({MapParams::parse("0", "0", "0.3"), MapParams::parse("0", "0", "0.8")});
    auto r = check_conjecture_bound(s);
    ASSERT_TRUE(r.interior_count);
    EXPECT_EQ(*r.interior_count, 0);
    EXPECT_FALSE(*r.unique_interior);
}

TEST(Extinction, GuaranteedNoneImpliesNoNonzeroFixedPoint)
{
    std::mt19937_64 rng(47);
    int guaranteed = 0;
    for (int i = 0; i < 3000; ++i) {
        auto s = oracle::random_valid_system(rng, 2);
        if (s.map(0).mu() == 0) continue;
        if (extinction_condition(s) != ExtinctionVerdict::GUARANTEED_NONE) continue;
        ++guaranteed;
        EXPECT_EQ(check_conjecture_bound(s).count_nonzero, 0);
    }
    EXPECT_GT(guaranteed, 20);
}

TEST(Extinction, StatedConditionAloneIsNotSufficient)
{
    PeriodicSystem s({MapParams::parse("0.01438963", "0.06709324", "0.34179472"), MapParams::parse("0", "0.54157137", "0.54366929")});
    ASSERT_TRUE(hypothesis_check(s).satisfies_conjecture_hypotheses);
    EXPECT_TRUE(sufficient_condition_holds(s));
    EXPECT_GT(check_conjecture_bound(s).count_nonzero, 0);
    EXPECT_EQ(extinction_condition(s), ExtinctionVerdict::INCONCLUSIVE);
}

TEST(Extinction, RejectsWrongShape)
{
    EXPECT_THROW(extinction_condition(sys("fig1")), std::invalid_argument);  // mu_1 = 0
    PeriodicSystem t3({MapParams::parse("0.1", "0.1", "0.9"), MapParams::parse("0", "0.1", "0.9"), MapParams::parse("0", "0.1", "0.9")});
    EXPECT_THROW(extinction_condition(t3), std::invalid_argument);
}

TEST(UnimodalWindow, VerifiedOnRandomSystems)
{
    std::mt19937_64 rng(48);
    for (int i = 0; i < 100; ++i) {
        auto s = oracle::random_valid_system(rng, 2 + i % 3);
        auto w = unimodal_window(s);
        EXPECT_TRUE(w.verified) << w.diagnostics;
        EXPECT_GT(w.z, 1.0);
        EXPECT_TRUE(w.critical_value_below);
        EXPECT_EQ(w.fixed_points_beyond_one, 0);
    }
}

TEST(UnimodalWindow, AtMostOneAttractingOrbitBesidesZero)
{
    std::mt19937_64 rng(49);
    for (int i = 0; i < 150; ++i) {
        auto s = oracle::random_valid_system(rng, 2 + i % 3);
        auto recs = enumerate_fixed_points(s);
        EXPECT_LE(count_attracting(recs), 2);
    }
}

TEST(Records, FormatContainsKeyFields)
{
    auto recs = enumerate_fixed_points(sys("fig1"));
    std::string text = format_record(recs[1], 1);
    EXPECT_NE(text.find("exact=4/9"), std::string::npos);
    EXPECT_NE(text.find("classification=REPELLING"), std::string::npos);
    EXPECT_NE(text.find("lifted_period=1"), std::string::npos);
}

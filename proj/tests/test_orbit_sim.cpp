#include "oracles.hpp"

#include "wolbachia/orbit_sim.hpp"
#include "wolbachia/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace wolbachia;

namespace {

PeriodicSystem sys(const char* name) { return to_system(preset(name)); }

}  // namespace

TEST(Simulate, PointsFollowTheMapsInOrder)
{
    auto s = sys("fig1");
    auto trace = simulate(s, 0.3, 50);
    ASSERT_EQ(trace.points.size(), 50u);
    EXPECT_EQ(trace.points[0], 0.3);
    for (std::size_t n = 0; n + 1 < trace.points.size(); ++n)
        EXPECT_DOUBLE_EQ(trace.points[n + 1], eval_map(s.map(static_cast<int>(n % 2)), trace.points[n]));
}

TEST(Simulate, PresetExample1GoesExtinct)
{
    auto trace = simulate(sys("example1"), 0.9, 10000);
    EXPECT_EQ(trace.omega.kind, OmegaKind::FIXED);
    EXPECT_EQ(omega_label(trace.omega), "FIXED(0)");
}

TEST(Simulate, ZeroIsConstant)
{
    auto trace = simulate(sys("postex"), 0.0, 100);
    for (double x : trace.points) EXPECT_EQ(x, 0.0);
    EXPECT_EQ(trace.omega.kind, OmegaKind::FIXED);
}

TEST(Simulate, CommonFixedPointPersistsUpToRounding)
{
    // 4/9 is repelling, so rounding error grows; only the early steps stay within 1e-12.
    auto trace = simulate(sys("fig1"), 4.0 / 9.0, 20);
    for (std::size_t n = 0; n + 1 < trace.points.size(); ++n)
        EXPECT_LE(std::abs(trace.points[n + 1] - trace.points[n]), 1e-12) << n;
}

TEST(Simulate, PresetPostexConvergesToTheTwoCycle)
{
    auto s = sys("postex");
    auto trace = simulate(s, 0.9, 5000);
    ASSERT_EQ(trace.omega.kind, OmegaKind::PERIODIC);
    ASSERT_EQ(trace.omega.values.size(), 2u);
    const auto records = enumerate_fixed_points(s);
    const FixedPointRecord* attracting = nullptr;
    for (const auto& r : records)
        if (r.value > 0 && r.classification == Stability::ATTRACTING) attracting = &r;
    ASSERT_NE(attracting, nullptr);
    // The trace length is even, so phase 0 is the point fed to f_1.
    EXPECT_NEAR(trace.omega.values[0], attracting->orbit_points[0], 1e-9);
    EXPECT_NEAR(trace.omega.values[1], attracting->orbit_points[1], 1e-9);
}

TEST(Simulate, RejectsBadInput)
{
    EXPECT_THROW(simulate(sys("fig1"), 1.5, 10), std::domain_error);
    EXPECT_THROW(simulate(sys("fig1"), -0.1, 10), std::domain_error);
    EXPECT_THROW(simulate(sys("fig1"), 0.5, 1), std::invalid_argument);
}

TEST(EstimateOmega, SyntheticSequences)
{
    std::vector<double> constant(40, 0.25);
    EXPECT_EQ(estimate_omega(constant, 2).kind, OmegaKind::FIXED);

    std::vector<double> cycle;
    for (int n = 0; n < 40; ++n) cycle.push_back(n % 2 ? 0.7 : 0.6);
    auto e = estimate_omega(cycle, 2);
    ASSERT_EQ(e.kind, OmegaKind::PERIODIC);
    EXPECT_EQ(e.values, (std::vector<double>{0.6, 0.7}));

    // A 4-periodic system whose orbit actually has period 2.
    auto e4 = estimate_omega(cycle, 4);
    ASSERT_EQ(e4.kind, OmegaKind::PERIODIC);
    EXPECT_EQ(e4.values.size(), 2u);

    std::vector<double> drifting;
    for (int n = 0; n < 40; ++n) drifting.push_back(1.0 / (n + 1));
    EXPECT_EQ(estimate_omega(drifting, 2).kind, OmegaKind::UNRESOLVED);
    EXPECT_EQ(estimate_omega(std::vector<double>(3, 0.1), 2).kind, OmegaKind::UNRESOLVED);
}

TEST(Basin, PresetFig1SplitsBetweenZeroAndOne)
{
    auto b = basin_scan(sys("fig1"), 100, 2000);
    ASSERT_EQ(b.cells.size(), 100u);
    double total = 0.0;
    for (auto& [label, f] : b.fractions) total += f;
    EXPECT_NEAR(total, 1.0, 1e-12);
    // Below the repelling point 4/9 orbits die out, above it they go to 1.
    for (const auto& c : b.cells) {
        if (c.initial < 0.44) {
            EXPECT_EQ(omega_label(c.omega), "FIXED(0)");
        }
        if (c.initial > 0.45) {
            EXPECT_EQ(omega_label(c.omega), "FIXED(1)");
        }
    }
}

TEST(Basin, RejectsTinyGrid) { EXPECT_THROW(basin_scan(sys("fig1"), 5), std::invalid_argument); }

TEST(TraceCsv, HeaderAndFullPrecision)
{
    auto trace = simulate(sys("fig1"), 0.3, 3);
    std::ostringstream out;
    write_trace_csv(out, trace);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,x_n");
    std::getline(in, line);
    EXPECT_EQ(line, "0,0.29999999999999999");
    int rows = 1;
    while (std::getline(in, line)) {
        ++rows;
        double v = std::stod(line.substr(line.find(',') + 1));
        EXPECT_EQ(v, trace.points[static_cast<std::size_t>(rows - 1)]);
    }
    EXPECT_EQ(rows, 3);
}

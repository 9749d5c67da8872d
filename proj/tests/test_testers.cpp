#include "monolab/instances.hpp"
#include "monolab/oracle.hpp"
#include "monolab/random.hpp"
#include "monolab/testers.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace monolab;

namespace {

GridFunction random_monotone_line(Rng& rng, Index m, double L) {
    std::vector<double> v(static_cast<std::size_t>(m));
    double x = 0.0;
    for (auto& y : v) {
        y = x;
        x += L * rng.uniform01();
    }
    return make_grid({m}, std::move(v));
}

}  // namespace

TEST(Budgets, ClosedForms) {
    EXPECT_EQ(pd_budget_grid(1, 16, 1.0, 0.05), static_cast<std::uint64_t>(std::ceil(2 * 16 * std::log(3.0) / 0.05)));
    EXPECT_EQ(pd_budget_grid(8, 16, 1.0, 0.05),
              static_cast<std::uint64_t>(std::ceil(2 * 8 * 16 * std::log(3.0) / 0.05)));
    EXPECT_EQ(pd_budget_cube(3, 2.0, 0.1), static_cast<std::uint64_t>(std::ceil(2 * 3 * 2 * std::log(3.0) / 0.1)));
    EXPECT_THROW(pd_budget_grid(1, 4, 1.0, 0.0), Error);
    EXPECT_THROW(pd_budget_grid(1, 4, -1.0, 0.1), Error);
    EXPECT_EQ(spot_check_round_cost(1), 1u);
    EXPECT_EQ(spot_check_round_cost(2), 2u);
    EXPECT_EQ(spot_check_round_cost(4), 3u);
    EXPECT_EQ(spot_check_round_cost(5), 4u);
    EXPECT_EQ(spot_check_round_cost(4096), 13u);
}

TEST(PdTester, ConstantUsesWholeBudget) {
    DenseGridOracle o(make_grid({4, 4}, std::vector<double>(16, 3.0)));
    const TestReport r = pd_tester(o, 1.0, 0.5, 7);
    EXPECT_EQ(r.verdict, Verdict::accept);
    EXPECT_EQ(r.queries_used, r.budget);
    EXPECT_EQ(r.budget, pd_budget_grid(2, 4, 1.0, 0.5));
    EXPECT_FALSE(r.witness.has_value());
}

TEST(PdTester, WitnessIsARealNegativeEdge) {
    const GridFunction f = gen_slope_step_discrete(2, 12, 1, 5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        DenseGridOracle o(f);
        const TestReport r = pd_tester(o, 1.0, 0.1, seed);
        if (r.verdict == Verdict::accept) continue;
        const auto& w = std::get<GridEdgeWitness>(*r.witness);
        GridPoint y = w.x;
        ++y.coords[w.axis - 1];
        EXPECT_LT(f.at(y) - f.at(w.x), 0.0);
        EXPECT_EQ(w.derivative, f.at(y) - f.at(w.x));
        EXPECT_LE(r.queries_used, r.budget);
    }
}

TEST(PdTester, ReproducibleForFixedSeed) {
    const GridFunction f = gen_slope_step_discrete(1, 16, 1, 7);
    DenseGridOracle a(f), b(f);
    const TestReport ra = pd_tester(a, 1.0, 0.05, 99);
    const TestReport rb = pd_tester(b, 1.0, 0.05, 99);
    EXPECT_EQ(ra.verdict, rb.verdict);
    EXPECT_EQ(ra.queries_used, rb.queries_used);
}

TEST(PdTester, SlopeStepRejectsOften) {
    const GridFunction f = gen_slope_step_discrete(1, 16, 1, 7);
    int rejects = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        DenseGridOracle o(f);
        rejects += pd_tester(o, 1.0, 0.05, seed).verdict == Verdict::reject;
    }
    EXPECT_GE(rejects / 400.0, 2.0 / 3.0 - 3.0 * std::sqrt(2.0 / 9.0 / 400.0));
}

TEST(PdTester, ContinuousNeedsUnitCubeAndIgnoresBot) {
    PwlOracle long_line(PwlFunction({0.0, 2.0}, {0.0, 1.0}));
    EXPECT_THROW(pd_tester(long_line, 1.0, 0.1, 1), Error);

    // every derivative of the multilinear view of a monotone grid is >= 0 or BOT
    MultilinearView v(make_grid({3, 3}, {0, 1, 2, 1, 2, 3, 2, 3, 4}));
    const TestReport r = pd_tester(v, 4.0, 0.1, 5);
    EXPECT_EQ(r.verdict, Verdict::accept);
    EXPECT_EQ(r.queries_used, pd_budget_cube(2, 4.0, 0.1));

    const PwlFunction g = gen_slope_step_continuous(1.0 / 6.0, 1.0 / 3.0);
    AxisProfileBoxOracle box(2, 1, g);
    const TestReport rb = pd_tester(box, 1.0, 0.05, 3);
    EXPECT_EQ(rb.verdict, Verdict::reject);
    const auto& w = std::get<BoxWitness>(*rb.witness);
    EXPECT_EQ(w.axis, 1);
    EXPECT_GT(w.x[0], 1.0 / 3.0);
    EXPECT_LT(w.x[0], 0.5);
}

TEST(SpotChecker, SortedAlwaysAccepts) {
    Rng rng(41);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const GridFunction f = oracle::random_grid(rng, {17}, 3);
        std::vector<double> v(f.values().begin(), f.values().end());
        std::sort(v.begin(), v.end());
        DenseGridOracle o(make_grid({17}, v));
        const TestReport r = ekkrv_line_tester(o, 0.3, seed);
        EXPECT_EQ(r.verdict, Verdict::accept);
        EXPECT_LE(r.queries_used, r.budget);
    }
    DenseGridOracle one(make_grid({1}, {5}));
    EXPECT_EQ(ekkrv_line_tester(one, 0.5, 1).verdict, Verdict::accept);
}

TEST(SpotChecker, StepExampleRejectionRate) {
    // at most 2 of the 4 indices survive a binary search, so each round rejects
    // with probability >= 1/2, and 3 rounds reject with probability >= 7/8
    int rejects = 0;
    const int trials = 2000;
    for (int seed = 0; seed < trials; ++seed) {
        DenseGridOracle o(make_grid({4}, {1, 1, 0, 0}));
        const TestReport r = ekkrv_line_tester(o, 0.5, static_cast<std::uint64_t>(seed));
        EXPECT_EQ(r.params.rounds, 3u);
        if (r.verdict == Verdict::reject) {
            ++rejects;
            const auto& w = std::get<PairWitness>(*r.witness);
            EXPECT_LT(w.lower, w.upper);
            EXPECT_GT(w.f_lower, w.f_upper);
        }
    }
    EXPECT_GE(rejects / static_cast<double>(trials), 7.0 / 8.0 - 3.0 * std::sqrt(7.0 / 64.0 / trials));
}

TEST(L1LineTester, ThresholdArithmetic) {
    DenseGridOracle a(make_grid({4}, {0, 1, 2, 3}));
    const TestReport ra = l1_line_tester_discrete(a, 1.0, 2.0, 1);
    EXPECT_NEAR(*ra.params.epsilon_prime, std::sqrt(0.5), 1e-15);
    EXPECT_FALSE(ra.params.exhaustive);

    DenseGridOracle b(make_grid({4}, {0, 1, 2, 3}));
    const TestReport rb = l1_line_tester_discrete(b, 1.0, 0.004, 1);
    EXPECT_NEAR(*rb.params.epsilon_prime, std::sqrt(0.001), 1e-15);
    EXPECT_TRUE(rb.params.exhaustive);
    EXPECT_EQ(rb.queries_used, 4u);
    EXPECT_EQ(rb.verdict, Verdict::accept);
}

TEST(L1LineTester, OneSidedOnMonotoneLipschitzLines) {
    Rng rng(42);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        DenseGridOracle o(random_monotone_line(rng, 64, 1.0));
        const TestReport r = l1_line_tester_discrete(o, 1.0, 0.5, seed);
        EXPECT_EQ(r.verdict, Verdict::accept);
        EXPECT_FALSE(r.params.not_in_class);
    }
}

TEST(L1LineTester, FlagsBrokenLipschitzPromise) {
    // monotone but with a jump of 10 > L: any rejection must carry the flag
    std::vector<double> v(64, 0.0);
    for (std::size_t k = 32; k < 64; ++k) v[k] = 10.0;
    int flagged = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        DenseGridOracle o(make_grid({64}, v));
        const TestReport r = l1_line_tester_discrete(o, 1.0, 0.5, seed);
        if (r.verdict == Verdict::reject) {
            EXPECT_TRUE(r.params.not_in_class);
            ++flagged;
        }
    }
    EXPECT_GT(flagged, 0);
}

TEST(L1LineTester, ContinuousParameters) {
    const PwlFunction mono({0.0, 1.0}, {0.0, 0.5});
    const TestReport r = l1_line_tester_continuous(mono, 1.0, 0.1, 1);
    EXPECT_EQ(*r.params.m_prime, 40);
    EXPECT_NEAR(*r.params.epsilon_prime, std::sqrt(1.0 / 160.0), 1e-15);
    EXPECT_EQ(r.verdict, Verdict::accept);
    EXPECT_LE(r.queries_used, r.budget);

    const TestReport trivial = l1_line_tester_continuous(mono, 1.0, 2.0, 1);
    EXPECT_TRUE(trivial.params.trivial);
    EXPECT_EQ(trivial.queries_used, 0u);
    EXPECT_EQ(trivial.verdict, Verdict::accept);
}

TEST(L1LineTester, ContinuousOneSided) {
    Rng rng(43);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::vector<double> bp{0.0}, vals{0.0};
        for (int k = 1; k <= 6; ++k) {
            bp.push_back(bp.back() + 0.5 + rng.uniform01());
            vals.push_back(vals.back() + (bp[k] - bp[k - 1]) * rng.uniform01());
        }
        const TestReport r = l1_line_tester_continuous(PwlFunction(bp, vals), 1.0, 0.2, seed);
        EXPECT_EQ(r.verdict, Verdict::accept);
    }
}

TEST(L1LineTester, RejectsNonLines) {
    DenseGridOracle o(make_grid({2, 2}, {0, 1, 2, 3}));
    EXPECT_THROW(l1_line_tester_discrete(o, 1.0, 0.1, 1), Error);
    EXPECT_THROW(ekkrv_line_tester(o, 0.1, 1), Error);
}

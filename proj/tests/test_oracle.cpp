#include "monolab/instances.hpp"
#include "monolab/oracle.hpp"
#include "monolab/pwl.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace monolab;

namespace {

double at(BoxOracle& o, std::vector<double> x) { return o.value(x); }
Derivative d_at(BoxOracle& o, std::vector<double> x, int axis) { return o.derivative(x, axis); }

}  // namespace

TEST(Pwl, EvaluationAndSlopes) {
    const PwlFunction f({0.0, 0.4, 0.5, 1.0}, {0.1, 0.1, 0.0, 0.0});
    EXPECT_DOUBLE_EQ(f(0.2), 0.1);
    EXPECT_DOUBLE_EQ(f(0.45), 0.05);
    EXPECT_DOUBLE_EQ(f(1.0), 0.0);
    EXPECT_DOUBLE_EQ(f.slope(0.45), -1.0);
    EXPECT_DOUBLE_EQ(f.slope(0.7), 0.0);
    EXPECT_TRUE(f.is_breakpoint(0.4));
    EXPECT_FALSE(f.is_breakpoint(0.0));
    EXPECT_FALSE(f.is_breakpoint(0.41));
    EXPECT_DOUBLE_EQ(f.max_slope(), 1.0);
    EXPECT_DOUBLE_EQ(f.length(), 1.0);
    EXPECT_THROW(f(1.5), Error);
}

TEST(Pwl, Validation) {
    EXPECT_THROW(PwlFunction({0.0}, {1.0}), Error);
    EXPECT_THROW(PwlFunction({0.1, 1.0}, {1.0, 2.0}), Error);
    EXPECT_THROW(PwlFunction({0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), Error);
    EXPECT_THROW(PwlFunction({0.0, 1.0}, {1.0}), Error);
}

TEST(Oracle, DenseGridCountsQueries) {
    DenseGridOracle o(make_grid({4}, {1, 1, 0, 0}));
    EXPECT_EQ(o.value(GridPoint{{1}}), 1.0);
    EXPECT_EQ(*o.derivative(GridPoint{{2}}, 1), -1.0);
    EXPECT_EQ(*o.derivative(GridPoint{{4}}, 1), 0.0);
    EXPECT_EQ(o.queries(), 3u);
}

TEST(Oracle, AxisProfileMatchesMaterializedGrid) {
    const GridFunction dense = gen_slope_step_discrete(3, 6, 2, 3);
    AxisProfileOracle lazy({6, 6, 6}, 2, slope_step_profile(6, 3));
    DenseGridOracle ref(dense);
    for (Index k = 0; k < dense.size(); ++k) {
        EXPECT_EQ(lazy.value(k), ref.value(k));
        for (int a = 1; a <= 3; ++a) EXPECT_EQ(*lazy.derivative(k, a), *ref.derivative(k, a));
    }
}

TEST(Oracle, MultilinearViewExamples) {
    MultilinearView lin(make_grid({2}, {0, 1}));
    EXPECT_DOUBLE_EQ(at(lin, {0.25}), 0.25);
    EXPECT_DOUBLE_EQ(*d_at(lin, {0.25}, 1), 1.0);

    MultilinearView tent(make_grid({3}, {0, 1, 0}));
    EXPECT_DOUBLE_EQ(*d_at(tent, {0.8}, 1), -2.0);
    EXPECT_TRUE(is_bot(d_at(tent, {0.5}, 1)));
    EXPECT_DOUBLE_EQ(at(tent, {0.5}), 1.0);
    EXPECT_EQ(tent.queries(), 3u);
    EXPECT_THROW(at(tent, {1.5}), Error);
}

TEST(Oracle, MultilinearViewInterpolatesInTwoDimensions) {
    const GridFunction f = make_grid({2, 2}, {2, 1, 0, 3});
    MultilinearView v(f);
    // corners reproduce the grid values
    EXPECT_DOUBLE_EQ(at(v, {0, 0}), 2.0);
    EXPECT_DOUBLE_EQ(at(v, {0, 1}), 1.0);
    EXPECT_DOUBLE_EQ(at(v, {1, 0}), 0.0);
    EXPECT_DOUBLE_EQ(at(v, {1, 1}), 3.0);
    EXPECT_DOUBLE_EQ(at(v, {0.5, 0.5}), 1.5);
    // along axis 1 at x_2 = 0.5: from 1.5 to 1.5, slope 0
    EXPECT_NEAR(*d_at(v, {0.3, 0.5}, 1), 0.0, 1e-12);
    // along axis 1 at x_2 = 0: 2 -> 0
    EXPECT_NEAR(*d_at(v, {0.3, 0.0}, 1), -2.0, 1e-12);
}

TEST(Oracle, LinearTightnessContinuousView) {
    // continuous view of samples of 1 - t: every derivative is -1, so the l1 mass is 1
    MultilinearView v(gen_linear_tightness(1, 9));
    for (double t : {0.01, 0.2, 0.33, 0.71, 0.99}) EXPECT_NEAR(*d_at(v, {t}, 1), -1.0, 1e-12);
}

TEST(Oracle, PwlAndProfileBoxOracles) {
    const PwlFunction g = gen_slope_step_continuous(0.1, 0.4);
    PwlOracle p(g);
    EXPECT_TRUE(is_bot(d_at(p, {0.4}, 1)));
    EXPECT_DOUBLE_EQ(*d_at(p, {0.45}, 1), -1.0);

    AxisProfileBoxOracle box(3, 2, g);
    EXPECT_TRUE(box.is_unit_cube());
    EXPECT_DOUBLE_EQ(at(box, {0.9, 0.45, 0.1}), 0.05);
    EXPECT_DOUBLE_EQ(*d_at(box, {0.9, 0.45, 0.1}, 2), -1.0);
    EXPECT_DOUBLE_EQ(*d_at(box, {0.9, 0.45, 0.1}, 1), 0.0);
    EXPECT_TRUE(is_bot(d_at(box, {0.9, 0.5, 0.1}, 2)));
    EXPECT_THROW(AxisProfileBoxOracle(2, 3, g), Error);
}

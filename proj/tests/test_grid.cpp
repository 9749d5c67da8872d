#include "monolab/calculus.hpp"
#include "monolab/grid.hpp"
#include "monolab/instances.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace monolab;

namespace {

GridFunction worked() { return make_grid({2, 2}, {2, 1, 0, 3}); }

}  // namespace

TEST(Grid, RowMajorIndexing) {
    const GridFunction f = worked();
    EXPECT_EQ(f.at({{1, 1}}), 2.0);
    EXPECT_EQ(f.at({{1, 2}}), 1.0);
    EXPECT_EQ(f.at({{2, 1}}), 0.0);
    EXPECT_EQ(f.at({{2, 2}}), 3.0);
}

TEST(Grid, OffsetPointRoundTrip) {
    const Shape s({3, 4, 2});
    for (Index k = 0; k < s.size(); ++k) EXPECT_EQ(s.offset(s.point(k)), k);
    EXPECT_EQ(s.point(s.size() - 1), (GridPoint{{3, 4, 2}}));
    for (Index k = 0; k < s.size(); ++k) {
        const GridPoint x = s.point(k);
        for (int a = 1; a <= 3; ++a) EXPECT_EQ(s.coord(k, a), x.coords[a - 1]);
    }
}

TEST(Grid, LinesCoverTheBoxOnce) {
    const Shape s({3, 4, 2});
    for (int axis = 1; axis <= 3; ++axis) {
        std::vector<int> seen(static_cast<std::size_t>(s.size()), 0);
        for (Index l = 0; l < s.line_count(axis); ++l) {
            const Index start = s.line_start(axis, l);
            EXPECT_EQ(s.coord(start, axis), 1);
            for (Index t = 0; t < s.dim(axis); ++t) ++seen[start + t * s.stride(axis)];
        }
        for (int c : seen) EXPECT_EQ(c, 1);
    }
}

TEST(Grid, PrecedesMatchesCoordinateOrder) {
    const Shape s({3, 2, 2});
    for (Index a = 0; a < s.size(); ++a) {
        for (Index b = 0; b < s.size(); ++b) EXPECT_EQ(s.precedes(a, b), oracle::leq(s.point(a), s.point(b)));
    }
}

TEST(Grid, StepExampleValues) {
    const GridFunction f = make_grid({4}, {1, 1, 0, 0});
    EXPECT_EQ(f, gen_step_tightness(1, 4));
}

TEST(Grid, RejectsNonFiniteAndBadShapes) {
    try {
        make_grid({2}, {0.0, std::numeric_limits<double>::quiet_NaN()});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::non_finite);
    }
    EXPECT_THROW(make_grid({2}, {0.0, INFINITY}), Error);
    EXPECT_THROW(make_grid({2, 2}, {1, 2, 3}), Error);
    EXPECT_THROW(make_grid({0}, {}), Error);
    EXPECT_THROW(make_grid({}, {}), Error);
    EXPECT_THROW(worked().at({{3, 1}}), Error);
    EXPECT_THROW(worked().at({{1}}), Error);
}

TEST(Calculus, PartialDerivativeExamples) {
    const GridFunction f = make_grid({4}, {1, 1, 0, 0});
    const auto d2 = partial_derivative(f, {{2}}, 1);
    EXPECT_EQ(d2.forward, -1.0);
    EXPECT_EQ(d2.directed, -1.0);
    const auto d4 = partial_derivative(f, {{4}}, 1);
    EXPECT_EQ(d4.forward, 0.0);
    EXPECT_EQ(d4.directed, 0.0);
    const GridFunction c = make_grid({3, 3}, std::vector<double>(9, 7.5));
    for (Index k = 0; k < 9; ++k) {
        for (int a = 1; a <= 2; ++a) {
            const auto d = partial_derivative(c, c.shape().point(k), a);
            EXPECT_EQ(d.forward, 0.0);
            EXPECT_EQ(d.directed, 0.0);
        }
    }
    EXPECT_THROW(partial_derivative(f, {{1}}, 2), Error);
}

TEST(Calculus, GradientMassExamples) {
    for (Index m : {4, 16, 64}) {
        EXPECT_DOUBLE_EQ(gradient_mass(gen_step_tightness(1, m), GradientNorm::l1), 1.0 / m);
    }
    EXPECT_DOUBLE_EQ(gradient_mass(worked(), GradientNorm::l1), 0.75);
    // l2 at (1,1): sqrt(2^2 + 1^2); nothing else is negative
    EXPECT_DOUBLE_EQ(gradient_mass(worked(), GradientNorm::l2), std::sqrt(5.0) / 4.0);
    const GridFunction mono = make_grid({2, 2}, {0, 1, 2, 3});
    EXPECT_EQ(gradient_mass(mono, GradientNorm::l1), 0.0);
    EXPECT_EQ(gradient_mass(mono, GradientNorm::l2), 0.0);
}

TEST(Calculus, AxisMassesOfWorkedExample) {
    const auto masses = axis_masses(worked());
    ASSERT_EQ(masses.size(), 2u);
    EXPECT_DOUBLE_EQ(masses[0], 0.5);
    EXPECT_DOUBLE_EQ(masses[1], 0.25);
    EXPECT_DOUBLE_EQ(weighted_axis_mass(worked()), 2 * 0.5 + 2 * 0.25);
}

TEST(Calculus, Lip1AndMonotone) {
    EXPECT_EQ(lip1(make_grid({3}, {0, 2, 3})), 2.0);
    EXPECT_TRUE(is_monotone(make_grid({4}, {0, 0, 1, 1})));
    EXPECT_FALSE(is_monotone(make_grid({4}, {1, 1, 0, 0})));
    EXPECT_TRUE(is_monotone(make_grid({2, 2}, {0, 1, 2, 3})));
    EXPECT_FALSE(is_monotone(worked()));
}

TEST(Calculus, MeanAbsDiffAndEquimeasurable) {
    EXPECT_EQ(mean_abs_diff(worked(), worked()), 0.0);
    EXPECT_DOUBLE_EQ(mean_abs_diff(worked(), make_grid({2, 2}, {0, 1, 2, 3})), 1.0);
    EXPECT_TRUE(equimeasurable(make_grid({2}, {0, 1}), make_grid({2}, {1, 0})));
    EXPECT_FALSE(equimeasurable(make_grid({2}, {0, 1}), make_grid({2}, {0, 2})));
    EXPECT_THROW(mean_abs_diff(worked(), make_grid({4}, {0, 1, 2, 3})), Error);
}

TEST(Calculus, MassesAgreeWithPointwiseOracle) {
    Rng rng(11);
    const std::vector<std::vector<Index>> shapes{{7}, {3, 5}, {2, 3, 4}, {2, 2, 2, 3}};
    for (int rep = 0; rep < 50; ++rep) {
        const GridFunction f = oracle::random_real_grid(rng, shapes[rep % shapes.size()]);
        EXPECT_NEAR(gradient_mass(f, GradientNorm::l1), oracle::directed_mass_l1(f), 1e-12);
        double sum = 0.0;
        for (double a : axis_masses(f)) sum += a;
        EXPECT_NEAR(sum, oracle::directed_mass_l1(f), 1e-12);
        // monotone by neighbours agrees with monotone by all comparable pairs
        EXPECT_EQ(is_monotone(f), oracle::monotone_by_pairs(f));
    }
}

TEST(Calculus, ParallelKernelsMatchSerialReference) {
    Rng rng(12);
    const std::vector<std::vector<Index>> shapes{{257}, {31, 17}, {9, 8, 7}, {5, 4, 3, 6}};
    for (const auto& dims : shapes) {
        const GridFunction f = oracle::random_real_grid(rng, dims);
        for (int a = 1; a <= static_cast<int>(dims.size()); ++a) {
            EXPECT_NEAR(axis_mass(f, a), reference::axis_mass(f, a), 1e-12);
        }
        EXPECT_NEAR(gradient_mass(f, GradientNorm::l1), reference::gradient_mass(f, GradientNorm::l1), 1e-12);
        EXPECT_NEAR(gradient_mass(f, GradientNorm::l2), reference::gradient_mass(f, GradientNorm::l2), 1e-12);
        EXPECT_EQ(lip1(f), reference::lip1(f));
        EXPECT_EQ(is_monotone(f), reference::is_monotone(f));
    }
}

#pragma once

#include "monolab/grid.hpp"

#include <vector>

namespace monolab {

struct PartialDerivative {
    double forward;   // f(x + e_i) - f(x), or 0 on the far face
    double directed;  // min(0, forward)
};

PartialDerivative partial_derivative(const GridFunction& f, const GridPoint& x, int axis);

enum class GradientNorm { l1, l2 };

/// Mean over the box of |directed partial along `axis`|.
double axis_mass(const GridFunction& f, int axis);
std::vector<double> axis_masses(const GridFunction& f);

/// (1/N) sum_x ||directed gradient of f at x||, aggregated with the given norm.
double gradient_mass(const GridFunction& f, GradientNorm norm);

/// Sum_i m_i * axis_mass_i: the right-hand side of the box inequality, up to the factor 2.
double weighted_axis_mass(const GridFunction& f);

/// Max |f(x + e_i) - f(x)| over axis-adjacent pairs. On a grid this is the
/// best l1-Lipschitz constant since l1 distance is unit-step path length.
double lip1(const GridFunction& f);

/// Every axis-adjacent forward difference is nonnegative.
bool is_monotone(const GridFunction& f);

double mean_abs_diff(const GridFunction& f, const GridFunction& g);

/// Sorted value multisets coincide (exact comparison).
bool equimeasurable(const GridFunction& f, const GridFunction& g);

namespace reference {

// Straightforward serial versions. The parallel kernels above reduce in a
// fixed line order; these reduce point by point and are kept as test oracles.
double axis_mass(const GridFunction& f, int axis);
double gradient_mass(const GridFunction& f, GradientNorm norm);
double lip1(const GridFunction& f);
bool is_monotone(const GridFunction& f);

}  // namespace reference

}  // namespace monolab

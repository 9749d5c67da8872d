#pragma once

#include "monolab/grid.hpp"
#include "monolab/pwl.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace monolab {

enum class Family { step_tightness, linear_tightness, hole, slope_step, walsh_step, random_lipschitz };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Everything needed to regenerate an instance bit-exactly. `params` holds the
/// family-specific fields (see README for the per-family keys).
struct InstanceSpec {
    Family family;
    nlohmann::json params = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::optional<double> certified_d1_lb;
    std::string certificate;  // "exact", "line_restriction", "matching", or empty
};

using Instance = std::variant<GridFunction, PwlFunction>;

Instance regenerate(const InstanceSpec& spec);

/// f = 1 where x_1 <= m/2, else 0, on [m]^n. m even.
GridFunction gen_step_tightness(int n, Index m);

/// Samples of 1 - x_1 at x_1 = (k-1)/(m-1), on [m]^n. m >= 2.
GridFunction gen_linear_tightness(int n, Index m);

// Hole instances: -r + ||x - c||_1 inside the l1 ball of radius r around c,
// 0 outside. Lip1 = 1.

GridFunction hole_function(int n, Index m, const std::vector<Index>& center, Index radius);

/// Centers of the disjoint balls on the packing grid of cells of side 2r + 1.
std::vector<std::vector<Index>> hole_packing_centers(int n, Index m, Index radius);

struct HoleInstance {
    GridFunction f;
    InstanceSpec spec;
};

/// Centered hole whose radius starts at max(1, round(2 m^{n/(n+1)} eps^{1/(n+1)}))
/// and doubles (capped by fit) until d1 >= epsilon is certified: exactly when
/// N <= cap, otherwise by the line-restriction lower bound.
HoleInstance gen_hole(int n, Index m, double epsilon, Index cap = 4096);

/// Window of locations for the discrete slope step: z in [floor(m/3)+1, floor(2m/3)].
std::pair<Index, Index> slope_step_window(Index m);

/// g_z(t) = 1 for t < z, else 0, on [m].
std::vector<double> slope_step_profile(Index m, Index z);

/// f(x) = g_z(x_axis) on [m]^n.
GridFunction gen_slope_step_discrete(int n, Index m, int axis, Index z);

/// Three-piece profile on [0,1]: eps on [0,z], slope -1 on [z, z+eps], 0 after.
/// Requires eps <= 1/6 and z in [1/3, 2/3 - eps].
PwlFunction gen_slope_step_continuous(double epsilon, double z);

/// Fine-grid estimate of d1 of a piecewise-linear function on [0, m] with a
/// stated error bound: |estimate - d1| <= error.
struct PwlDistance {
    double estimate;
    double error;
    double lower() const { return estimate - error; }
};
PwlDistance pwl_distance_to_monotone(const PwlFunction& f, Index cells = 4096);

/// s_i(x) = floor((x-1)/2^i) + 1.
Index walsh_step_s(int i, Index x);
/// w_S(x) = prod_{i in S} (-1)^{bit_i(x-1)}, bits indexed from 1 = least significant.
int walsh_w(const std::vector<int>& S, Index x);

/// h(x) = 2 sum_j s_{i_j}(x_j) + prod_j w_{S_j}(x_j) on [2^ell]^n.
GridFunction gen_walsh_step(int ell, int n, const std::vector<int>& i_vec,
                            const std::vector<std::vector<int>>& S_vec);

/// Exact l1 inf-convolution min_y raw(y) + L ||x - y||_1 by forward and
/// backward min-plus sweeps along each axis.
GridFunction lipschitz_regularize(const GridFunction& raw, double L);

/// Raw values uniform on [0, L * sum(m_i - 1)], then lipschitz_regularize.
GridFunction gen_random_lipschitz(const std::vector<Index>& dims, double L, std::uint64_t seed);

enum class BallMode { discrete, continuous };

/// Lattice points of Z^n with ||x||_1 <= r, by the recursion over dimension.
std::uint64_t l1_ball_volume_discrete(int n, Index r);
/// (2r)^n / n!.
double l1_ball_volume_continuous(int n, double r);
double l1_ball_volume(int n, double r, BallMode mode);

}  // namespace monolab

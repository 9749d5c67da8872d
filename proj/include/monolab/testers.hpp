#pragma once

#include "monolab/grid.hpp"
#include "monolab/oracle.hpp"
#include "monolab/pwl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace monolab {

enum class Verdict { accept, reject };

/// A negative axis derivative observed at a grid point.
struct GridEdgeWitness {
    GridPoint x;
    int axis;
    double derivative;
};

/// A negative axis derivative observed at a point of a continuous box.
struct BoxWitness {
    std::vector<double> x;
    int axis;
    double derivative;
};

/// Line indices lower < upper with f(lower) > f(upper), or, when the report
/// is flagged not_in_class, a pair whose slope exceeds the Lipschitz promise.
struct PairWitness {
    Index lower;
    Index upper;
    double f_lower;
    double f_upper;
};

using Witness = std::variant<GridEdgeWitness, BoxWitness, PairWitness>;

struct TestParams {
    double L = 0.0;
    double epsilon = 0.0;
    std::optional<Index> m_prime;          // discretization length (continuous line tester)
    std::optional<double> epsilon_prime;   // proximity handed to the spot-checker
    std::uint64_t rounds = 0;              // iterations (pd) or spot-checker rounds
    bool exhaustive = false;               // every point queried
    bool trivial = false;                  // accepted with no queries, distance cannot exceed epsilon
    bool not_in_class = false;             // the Lipschitz promise was observed to fail
    std::string line_tester;               // Hamming line tester actually run
};

struct TestReport {
    std::string tester;
    Verdict verdict = Verdict::accept;
    std::uint64_t queries_used = 0;
    std::uint64_t budget = 0;
    std::optional<Witness> witness;
    std::uint64_t seed = 0;
    TestParams params;
};

/// Iteration counts certified by the per-iteration rejection bounds
/// epsilon/(2 n m L) (grid) and epsilon/(2 n L) (unit cube) with (1-p)^q <= 1/3.
std::uint64_t pd_budget_grid(std::size_t n, Index m_max, double L, double epsilon);
std::uint64_t pd_budget_cube(std::size_t n, double L, double epsilon);

/// Partial-derivative tester: sample a point and an axis, reject on a
/// strictly negative derivative. BOT answers count as queries and never reject.
TestReport pd_tester(GridOracle& f, double L, double epsilon, std::uint64_t seed);
TestReport pd_tester(BoxOracle& f, double L, double epsilon, std::uint64_t seed);

/// Queries per spot-checker round on a line of length m: ceil(log2 m) + 1.
std::uint64_t spot_check_round_cost(Index m);

/// Binary-search spot-checker for sortedness of the keys (f(i), i) on [m].
TestReport ekkrv_line_tester(GridOracle& f, double epsilon0, std::uint64_t seed);

/// L1 tester for L-Lipschitz functions on the line [m]: Hamming proximity
/// sqrt(epsilon/(mL)), or every point when that falls below 2/m.
TestReport l1_line_tester_discrete(GridOracle& f, double L, double epsilon, std::uint64_t seed);

/// L1 tester for L-Lipschitz piecewise-linear f on [0, m], via the
/// discretization i -> f(i m / m') with m' = ceil(4 m L / epsilon).
TestReport l1_line_tester_continuous(const PwlFunction& f, double L, double epsilon, std::uint64_t seed);

std::string to_string(Verdict v);

}  // namespace monolab

#pragma once

#include "monolab/grid.hpp"

#include <vector>

namespace monolab {

inline constexpr Index kDefaultExactCap = 4096;

struct ThresholdRow {
    double level;  // v_j: the indicator is 1{f > v_j}
    double gap;    // v_{j+1} - v_j
    Index flips;   // minimum changes to make the indicator monotone
};

enum class DistanceMethod { threshold_matching, brute_force };

struct DistanceReport {
    double exact_d1 = 0.0;
    std::vector<ThresholdRow> thresholds;
    /// f*, monotone and within a factor 2 of optimal.
    GridFunction witness;
    DistanceMethod method = DistanceMethod::threshold_matching;
};

struct BooleanRepair {
    double fraction;               // min changes / N
    std::vector<GridPoint> flips;  // a minimum repair set
};

/// Exact Hamming distance to monotone for a 0/1-valued function, through a
/// maximum matching of violating pairs.
BooleanRepair boolean_hamming_to_monotone(const GridFunction& f);

/// Changes f only on `flips`: each flipped point takes the largest value of an
/// unflipped point below it (or the minimum of f if there is none). The
/// result is monotone whenever `flips` covers every violating pair.
GridFunction monotone_closure_repair(const GridFunction& f, const std::vector<GridPoint>& flips);

/// Exact L1 distance to monotone by threshold decomposition: one Boolean
/// repair problem per gap between consecutive distinct values.
DistanceReport l1_distance_exact(const GridFunction& f, Index cap = kDefaultExactCap);

/// Exhaustive search over monotone g valued in f's distinct values. N <= 10.
double l1_distance_bruteforce(const GridFunction& f);

/// 1 - LNDS/m on a line: the exact Hamming distance to monotone.
double hamming_line(const GridFunction& f);

struct MatchedPair {
    GridPoint lower;  // x ⪯ y with f(x) > f(y)
    GridPoint upper;
    double gap;       // f(x) - f(y)
};

struct ViolationMatching {
    std::vector<MatchedPair> pairs;
};

struct MatchingBound {
    double d1_lb = 0.0;
    double d0_lb = 0.0;
    ViolationMatching matching;
};

/// Greedy endpoint-disjoint matching of violating pairs, scanned in
/// decreasing gap order with ties broken by row-major index of (x, y).
/// Certifies d1 >= sum(gap) / 2N and d0 >= |pairs| / N.
MatchingBound matching_lower_bound(const GridFunction& f);

/// Average over lines parallel to `axis` of the exact d1 of each line. A
/// monotone g is monotone on every line, so this is a lower bound on d1(f)
/// that stays cheap for boxes above the exact cap.
double line_restriction_lower_bound(const GridFunction& f, int axis);

namespace reference {

/// Same decomposition with the all-pairs Hopcroft-Karp matcher, serially.
DistanceReport l1_distance_exact(const GridFunction& f, Index cap = kDefaultExactCap);

}  // namespace reference

}  // namespace monolab

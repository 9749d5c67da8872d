#pragma once

#include "monolab/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace monolab {

/// Maximum matching in the violation graph of a Boolean function (1-points x
/// joined to 0-points y with x ⪯ y) together with a minimum vertex cover.
/// By König the two have the same size, which is the minimum number of
/// points to change to make the function monotone.
struct BooleanCover {
    Index matching_size = 0;
    std::vector<Index> cover;  // offsets, ascending
};

/// Solves the matching as a unit-capacity closure flow: source -> 1-points,
/// 0-points -> sink, and infinite arcs x -> x + e_i. Any flow path is a
/// monotone lattice path from a 1-point to a 0-point, so flows decompose into
/// matchings of comparable violating pairs, and only the O(nN) adjacency arcs
/// are needed. The cover is read off the minimum cut.
BooleanCover boolean_violation_cover(const Shape& shape, std::span<const std::uint8_t> bits);

namespace reference {

/// Hopcroft-Karp on the explicit violation graph, all O(N^2) comparable
/// pairs enumerated; the cover comes from König's alternating-path construction.
BooleanCover boolean_violation_cover(const Shape& shape, std::span<const std::uint8_t> bits);

}  // namespace reference

}  // namespace monolab

#pragma once

#include <cstddef>
#include <string_view>
#include <optional>
#include <vector>

#include "pwcn/conllu.hpp"
#include "pwcn/instance.hpp"

namespace pwcn::proximity {

// Per-token tree distance to the nearest aspect token. Real-valued: tokens
// in a tree without any aspect token get n / 2.
using DistanceVector = std::vector<double>;

// Per-token weight; exactly zero on the aspect span.
using ProximityVector = std::vector<double>;

enum class Mode { kPosition, kDependency };

std::string_view mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

// Linear decay with the distance to the nearest aspect border:
//   p_i = 1 - (start - i) / n           for i < start
//   p_i = 0                             on the span
//   p_i = 1 - (i - start - len + 1) / n for i >= start + len
// Throws ArgumentError unless len >= 1 and start + len <= n.
ProximityVector position_proximity(std::size_t n, std::size_t start,
                                   std::size_t len);

// Undirected shortest-path distance from every token to the closest aspect
// token, by BFS from each aspect token over head links.
DistanceVector tree_distances(const corpus::DepForest& forest,
                              std::size_t start, std::size_t len);

// p_i = 1 - d_i / n off the span, 0 on it. Throws DataError if some
// d_i > n (the weight would turn negative) and ShapeError on a length
// mismatch.
ProximityVector dependency_proximity(const DistanceVector& distances,
                                     std::size_t n, std::size_t start,
                                     std::size_t len);

// Dispatches on mode. `forest` is required for kDependency only.
ProximityVector compute(Mode mode, const Instance& instance,
                        const corpus::DepForest* forest = nullptr);

}  // namespace pwcn::proximity

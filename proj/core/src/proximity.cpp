#include "pwcn/proximity.hpp"

#include <deque>
#include <limits>
#include <string>

#include "pwcn/error.hpp"

namespace pwcn::proximity {

namespace {

void check_span(std::size_t n, std::size_t start, std::size_t len) {
  if (len < 1 || start + len > n) {
    throw ArgumentError("aspect span [" + std::to_string(start) + ", " +
                        std::to_string(start + len) +
                        ") is invalid for sentence length " +
                        std::to_string(n));
  }
}

}  // namespace

std::string_view mode_name(Mode mode) {
  return mode == Mode::kPosition ? "pos" : "dep";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "pos" || name == "position") return Mode::kPosition;
  if (name == "dep" || name == "dependency") return Mode::kDependency;
  return std::nullopt;
}

ProximityVector position_proximity(std::size_t n, std::size_t start,
                                   std::size_t len) {
  check_span(n, start, len);
  const double nd = static_cast<double>(n);
  ProximityVector p(n, 0.0);
  for (std::size_t i = 0; i < start; ++i) {
    p[i] = 1.0 - static_cast<double>(start - i) / nd;
  }
  for (std::size_t i = start + len; i < n; ++i) {
    p[i] = 1.0 - static_cast<double>(i - start - len + 1) / nd;
  }
  return p;
}

DistanceVector tree_distances(const corpus::DepForest& forest,
                              std::size_t start, std::size_t len) {
  const std::size_t n = forest.size();
  check_span(n, start, len);

  std::vector<std::vector<int>> adjacent(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int head = forest.heads[i];
    if (head == corpus::DepForest::kRoot) continue;
    adjacent[i].push_back(head);
    adjacent[head].push_back(static_cast<int>(i));
  }

  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> best(n, kUnreached);
  std::vector<int> dist(n);
  std::deque<int> queue;
  for (std::size_t a = start; a < start + len; ++a) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    dist[a] = 0;
    queue.assign(1, static_cast<int>(a));
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacent[u]) {
        if (dist[v] == kUnreached) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) best[i] = std::min(best[i], dist[i]);
  }

  const double fallback = static_cast<double>(n) / 2.0;
  DistanceVector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = best[i] == kUnreached ? fallback : static_cast<double>(best[i]);
  }
  return d;
}

ProximityVector dependency_proximity(const DistanceVector& distances,
                                     std::size_t n, std::size_t start,
                                     std::size_t len) {
  if (distances.size() != n) {
    throw ShapeError("distance vector has " + std::to_string(distances.size()) +
                     " entries for " + std::to_string(n) + " tokens");
  }
  check_span(n, start, len);
  const double nd = static_cast<double>(n);
  ProximityVector p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= start && i < start + len) continue;
    if (distances[i] < 0.0 || distances[i] > nd) {
      throw DataError("tree distance " + std::to_string(distances[i]) +
                      " at token " + std::to_string(i) +
                      " outside [0, " + std::to_string(n) + "]");
    }
    p[i] = 1.0 - distances[i] / nd;
  }
  return p;
}

ProximityVector compute(Mode mode, const Instance& instance,
                        const corpus::DepForest* forest) {
  const std::size_t n = instance.size();
  if (mode == Mode::kPosition) {
    return position_proximity(n, instance.aspect_start, instance.aspect_len);
  }
  if (forest == nullptr) {
    throw ArgumentError("dependency proximity needs a parse for sentence " +
                        instance.sentence_id);
  }
  if (forest->size() != n) {
    throw ShapeError("parse of sentence " + instance.sentence_id + " has " +
                     std::to_string(forest->size()) + " nodes for " +
                     std::to_string(n) + " tokens");
  }
  const DistanceVector d =
      tree_distances(*forest, instance.aspect_start, instance.aspect_len);
  return dependency_proximity(d, n, instance.aspect_start, instance.aspect_len);
}

}  // namespace pwcn::proximity

#pragma once

#include <string_view>

#include "pctopo/core.hpp"

namespace pctopo {

enum class GroundMetric { chebyshev, euclidean };

GroundMetric parse_metric(std::string_view name);
std::string_view metric_name(GroundMetric metric);

// Cost of pairing two finite intervals viewed as points (birth, death).
double point_cost(const Interval& a, const Interval& b, GroundMetric metric);

// Cost of sending a finite interval to its nearest diagonal point:
// (d - b) / 2 under chebyshev, (d - b) / sqrt(2) under euclidean.
double diagonal_cost(const Interval& a, GroundMetric metric);

// Max assignment cost of a matching; +inf if it pairs finite with infinite.
double matching_cost(const PersistenceDiagram& a, const PersistenceDiagram& b, const Matching& m,
                     GroundMetric metric);

struct BottleneckOptions {
  GroundMetric metric = GroundMetric::chebyshev;
  // All-births-zero diagrams are solved on the line; off forces the general path.
  bool allow_fast_path = true;
};

struct BottleneckResult {
  double value = 0.0;
  Matching witness;  // attains `value`; empty when the infinite bar counts differ
};

// Bottleneck distance with diagonal enrichment. Infinite bars only match
// infinite bars (sorted by birth); differing counts give +inf.
BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b,
                            const BottleneckOptions& options = {});

inline BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, GroundMetric metric) {
  return bottleneck(a, b, BottleneckOptions{metric, true});
}

}  // namespace pctopo

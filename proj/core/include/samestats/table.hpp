#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "samestats/graph.hpp"
#include "samestats/properties.hpp"

namespace samestats {

/// Rows of (graph6 code, raw properties, normalized properties) for graphs of
/// one order. This is the in-memory form of a property CSV and the input of
/// the finder and the HTTP service.
struct PropertyTable {
  int n = 0;
  std::vector<std::string> graph6;
  std::vector<PropertyVector> raw;
  std::vector<NormalizedVector> normalized;
  double apl_divisor = 1.0;

  std::size_t size() const noexcept { return raw.size(); }
  bool empty() const noexcept { return raw.empty(); }
};

/// Computes properties for every graph (in parallel, order preserved) and
/// normalizes them with the given apl scaling.
PropertyTable build_property_table(const std::vector<Graph>& graphs, AplScaling scaling,
                                   unsigned threads = 1);

}  // namespace samestats

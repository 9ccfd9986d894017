#include "samestats/table.hpp"

#include "samestats/error.hpp"
#include "samestats/graph6.hpp"
#include "samestats/parallel.hpp"

namespace samestats {

PropertyTable build_property_table(const std::vector<Graph>& graphs, AplScaling scaling,
                                   unsigned threads) {
  if (graphs.empty()) throw ValidationError("cannot build a property table from no graphs");
  PropertyTable t;
  t.n = graphs.front().order();
  for (const auto& g : graphs) {
    if (g.order() != t.n) throw ValidationError("all graphs of a property table must share one order");
  }
  t.graph6.resize(graphs.size());
  t.raw.resize(graphs.size());
  parallel_for(graphs.size(), threads, [&](unsigned, std::size_t i) {
    t.graph6[i] = encode_graph6(graphs[i]);
    t.raw[i] = property_vector(graphs[i]);
  });
  auto norm = normalize(t.raw, t.n, scaling);
  t.normalized = std::move(norm.rows);
  t.apl_divisor = norm.apl_divisor;
  return t;
}

}  // namespace samestats

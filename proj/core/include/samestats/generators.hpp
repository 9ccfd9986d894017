#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "samestats/graph.hpp"
#include "samestats/rng.hpp"

namespace samestats {

/// The five random graph models compared against the ground truth.
enum class Model {
  kEr,  ///< Erdos-Renyi G(n, p), p = 1/2 unless overridden
  kUn,  ///< Erdos-Renyi with p drawn uniformly per graph
  kGe,  ///< random geometric graph in the unit square
  kWs,  ///< Newman-Watts small world (shortcuts added, never rewired)
  kBa,  ///< Barabasi-Albert preferential attachment
};

inline constexpr Model kAllModels[] = {Model::kEr, Model::kUn, Model::kGe, Model::kWs, Model::kBa};

std::string_view model_name(Model m);  // "er", "un", "ge", "ws", "ba"
std::optional<Model> parse_model(std::string_view name);

/// Parameters drawn for (or used by) one generated graph. Unused fields stay
/// unset.
struct GraphParams {
  std::optional<double> p;       // ER, UN, WS
  std::optional<int> k;          // WS lattice degree (even)
  std::optional<int> m;          // BA attachment count
  std::optional<double> radius;  // GE
  friend bool operator==(const GraphParams&, const GraphParams&) = default;
};

struct GeneratedGraph {
  Graph graph;
  GraphParams params;
};

/// Each of the C(n,2) pairs, in lexicographic order, is an edge with
/// probability p. Throws ValidationError if p is outside [0,1].
Graph gen_er(int n, double p, Rng& rng);

/// Draws p ~ U[0,1) and runs gen_er.
GeneratedGraph gen_un(int n, Rng& rng);

struct GeometricGraph {
  Graph graph;
  std::vector<std::pair<double, double>> positions;
  double radius = 0.0;
};
/// n points uniform in the unit square; u ~ v iff their distance <= radius.
GeometricGraph gen_ge_with_radius(int n, double radius, Rng& rng);
/// Radius drawn uniformly in [0, sqrt 2].
GeneratedGraph gen_ge(int n, Rng& rng);

/// Ring lattice with k/2 neighbours on each side (k even, 2 <= k <= n-1).
Graph ring_lattice(int n, int k);
/// Newman-Watts: for each lattice edge, with probability p, add an edge
/// between a uniformly chosen non-adjacent pair. Requires n >= 3.
Graph gen_ws_with(int n, int k, double p, Rng& rng);
/// k drawn uniformly in [2, n-1] and rounded down to even; p ~ U[0,1).
GeneratedGraph gen_ws(int n, Rng& rng);

/// Preferential attachment starting from m isolated vertices; each new
/// vertex joins m distinct existing vertices chosen proportionally to degree
/// (uniformly while all degrees are zero). Yields (n - m) * m edges.
Graph gen_ba_with(int n, int m, Rng& rng);
/// m drawn uniformly in [1, n-1]. Requires n >= 2.
GeneratedGraph gen_ba(int n, Rng& rng);

struct GeneratorSpec {
  Model model = Model::kEr;
  int n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  /// Edge probability for ER; ignored by the other models.
  double p = 0.5;

  /// Throws ValidationError on count == 0, n < 2 (n < 3 for WS) or p out of
  /// range.
  void validate() const;
};

struct GraphSample {
  GeneratorSpec spec;
  std::vector<Graph> graphs;
  std::vector<GraphParams> params;
};

/// Generates one graph of the model from an explicit generator.
GeneratedGraph generate_one(const GeneratorSpec& spec, Rng& rng);

/// Graph i is drawn from Rng::for_stream(spec.seed, i), so the sample is
/// bit-identical for any thread count.
GraphSample sample(const GeneratorSpec& spec, unsigned threads = 1);

/// Union bound for k graphs drawn from G(n, 1/2): any fixed pair is
/// isomorphic with probability at most n! / 2^(n(n-1)/2), so
/// max(0, 1 - C(k,2) * n! / 2^(n(n-1)/2)) bounds from below the probability
/// that no two of them are isomorphic. Evaluated in log space; requires
/// n >= 1 and k >= 1.
double iso_collision_bound(int n, std::uint64_t k);

}  // namespace samestats

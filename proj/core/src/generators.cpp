#include "samestats/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "samestats/error.hpp"
#include "samestats/parallel.hpp"

namespace samestats {

namespace {

void require_order(int n, int min_n, std::string_view who) {
  if (n < min_n) {
    throw ValidationError(std::string(who) + " requires n >= " + std::to_string(min_n) + ", got " +
                          std::to_string(n));
  }
}

}  // namespace

std::string_view model_name(Model m) {
  switch (m) {
    case Model::kEr: return "er";
    case Model::kUn: return "un";
    case Model::kGe: return "ge";
    case Model::kWs: return "ws";
    case Model::kBa: return "ba";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view name) {
  for (Model m : kAllModels) {
    if (model_name(m) == name) return m;
  }
  return std::nullopt;
}

Graph gen_er(int n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("edge probability must lie in [0,1]");
  require_order(n, 0, "gen_er");
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) g.add_edge(u, v);
    }
  }
  return g;
}

GeneratedGraph gen_un(int n, Rng& rng) {
  const double p = rng.uniform();
  GeneratedGraph out{gen_er(n, p, rng), {}};
  out.params.p = p;
  return out;
}

GeometricGraph gen_ge_with_radius(int n, double radius, Rng& rng) {
  require_order(n, 0, "gen_ge");
  if (!(radius >= 0.0)) throw ValidationError("radius must be non-negative");
  GeometricGraph out{Graph(n), {}, radius};
  out.positions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    out.positions.emplace_back(x, y);
  }
  const double r2 = radius * radius;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double dx = out.positions[static_cast<std::size_t>(u)].first - out.positions[static_cast<std::size_t>(v)].first;
      const double dy = out.positions[static_cast<std::size_t>(u)].second - out.positions[static_cast<std::size_t>(v)].second;
      if (dx * dx + dy * dy <= r2) out.graph.add_edge(u, v);
    }
  }
  return out;
}

GeneratedGraph gen_ge(int n, Rng& rng) {
  const double radius = rng.uniform(0.0, std::numbers::sqrt2);
  auto geo = gen_ge_with_radius(n, radius, rng);
  GeneratedGraph out{std::move(geo.graph), {}};
  out.params.radius = radius;
  return out;
}

Graph ring_lattice(int n, int k) {
  require_order(n, 3, "ring_lattice");
  if (k < 2 || k > n - 1 || k % 2 != 0) {
    throw ValidationError("ring lattice degree must be even and in [2, n-1], got " + std::to_string(k));
  }
  Graph g(n);
  for (int v = 0; v < n; ++v) {
    for (int j = 1; j <= k / 2; ++j) g.add_edge(v, (v + j) % n);
  }
  return g;
}

Graph gen_ws_with(int n, int k, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("shortcut probability must lie in [0,1]");
  Graph g = ring_lattice(n, k);
  const auto lattice_edges = g.edges();
  std::vector<Edge> free_pairs;
  for (std::size_t e = 0; e < lattice_edges.size(); ++e) {
    if (!rng.bernoulli(p)) continue;
    free_pairs.clear();
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!g.has_edge(u, v)) free_pairs.emplace_back(u, v);
      }
    }
    if (free_pairs.empty()) break;
    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(free_pairs.size()) - 1);
    const auto& [u, v] = free_pairs[static_cast<std::size_t>(pick)];
    g.add_edge(u, v);
  }
  return g;
}

GeneratedGraph gen_ws(int n, Rng& rng) {
  require_order(n, 3, "gen_ws");
  int k = static_cast<int>(rng.uniform_int(2, n - 1));
  k -= k % 2;
  const double p = rng.uniform();
  GeneratedGraph out{gen_ws_with(n, k, p, rng), {}};
  out.params.k = k;
  out.params.p = p;
  return out;
}

Graph gen_ba_with(int n, int m, Rng& rng) {
  require_order(n, 2, "gen_ba");
  if (m < 1 || m >= n) throw ValidationError("attachment count must lie in [1, n-1]");
  Graph g(n);
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
  std::vector<int> chosen;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (int v = m; v < n; ++v) {
    chosen.clear();
    std::fill(taken.begin(), taken.begin() + v, 0);
    for (int pick = 0; pick < m; ++pick) {
      std::int64_t total = 0;
      int open = 0;
      for (int u = 0; u < v; ++u) {
        if (taken[static_cast<std::size_t>(u)]) continue;
        total += degree[static_cast<std::size_t>(u)];
        ++open;
      }
      int target = -1;
      if (total == 0) {
        auto idx = rng.uniform_int(0, open - 1);
        for (int u = 0; u < v; ++u) {
          if (taken[static_cast<std::size_t>(u)]) continue;
          if (idx-- == 0) {
            target = u;
            break;
          }
        }
      } else {
        auto x = rng.uniform_int(0, total - 1);
        for (int u = 0; u < v; ++u) {
          if (taken[static_cast<std::size_t>(u)]) continue;
          x -= degree[static_cast<std::size_t>(u)];
          if (x < 0) {
            target = u;
            break;
          }
        }
      }
      taken[static_cast<std::size_t>(target)] = 1;
      chosen.push_back(target);
    }
    for (int u : chosen) {
      g.add_edge(v, u);
      ++degree[static_cast<std::size_t>(u)];
    }
    degree[static_cast<std::size_t>(v)] += m;
  }
  return g;
}

GeneratedGraph gen_ba(int n, Rng& rng) {
  require_order(n, 2, "gen_ba");
  const int m = static_cast<int>(rng.uniform_int(1, n - 1));
  GeneratedGraph out{gen_ba_with(n, m, rng), {}};
  out.params.m = m;
  return out;
}

void GeneratorSpec::validate() const {
  if (count == 0) throw ValidationError("sample count must be at least 1");
  require_order(n, model == Model::kWs ? 3 : 2, model_name(model));
  if (model == Model::kEr && !(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("edge probability must lie in [0,1]");
  }
}

GeneratedGraph generate_one(const GeneratorSpec& spec, Rng& rng) {
  switch (spec.model) {
    case Model::kEr: {
      GeneratedGraph out{gen_er(spec.n, spec.p, rng), {}};
      out.params.p = spec.p;
      return out;
    }
    case Model::kUn: return gen_un(spec.n, rng);
    case Model::kGe: return gen_ge(spec.n, rng);
    case Model::kWs: return gen_ws(spec.n, rng);
    case Model::kBa: return gen_ba(spec.n, rng);
  }
  throw ValidationError("unknown model");
}

GraphSample sample(const GeneratorSpec& spec, unsigned threads) {
  spec.validate();
  GraphSample out;
  out.spec = spec;
  out.graphs.resize(spec.count);
  out.params.resize(spec.count);
  parallel_for(spec.count, threads, [&](unsigned, std::size_t i) {
    Rng rng = Rng::for_stream(spec.seed, i);
    auto g = generate_one(spec, rng);
    out.graphs[i] = std::move(g.graph);
    out.params[i] = g.params;
  });
  return out;
}

double iso_collision_bound(int n, std::uint64_t k) {
  if (n < 1) throw ValidationError("iso_collision_bound requires n >= 1");
  if (k < 1) throw ValidationError("iso_collision_bound requires k >= 1");
  if (k == 1) return 1.0;
  const double kd = static_cast<double>(k);
  const double log2_pairs = std::log2(kd) + std::log2(kd - 1.0) - 1.0;
  const double log2_factorial = std::lgamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
  const double log2_labelings = static_cast<double>(n) * (n - 1) / 2.0;
  const double exponent = log2_pairs + log2_factorial - log2_labelings;
  return std::max(0.0, 1.0 - std::exp2(exponent));
}

}  // namespace samestats

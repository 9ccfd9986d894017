#include "samestats/properties.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "samestats/error.hpp"

namespace samestats {

namespace {

using Word = Graph::Word;

constexpr std::array<std::string_view, kNumProperties> kNames = {
    "acc", "gcc", "scc", "apl", "r", "diam", "den", "rt", "cv", "ce"};

int and_count(std::span<const Word> a, std::span<const Word> b) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

// Number of edges inside N(v), i.e. triangles through v.
std::int64_t triangles_at(const Graph& g, int v) {
  std::int64_t twice = 0;
  const auto nv = g.row(v);
  for_each_bit(nv, [&](int u) { twice += and_count(nv, g.row(u)); });
  return twice / 2;
}

struct DistanceSummary {
  std::vector<std::int64_t> distance_sum;
  std::vector<int> reachable;
  std::vector<int> eccentricity;
};

// Bitset BFS from every vertex; eccentricities are within the component.
DistanceSummary distances(const Graph& g) {
  const int n = g.order();
  const auto words = static_cast<std::size_t>(g.words_per_row());
  DistanceSummary out{std::vector<std::int64_t>(static_cast<std::size_t>(n), 0),
                      std::vector<int>(static_cast<std::size_t>(n), 0),
                      std::vector<int>(static_cast<std::size_t>(n), 0)};
  std::vector<Word> visited(words), frontier(words), next(words);
  for (int s = 0; s < n; ++s) {
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[static_cast<std::size_t>(s / Graph::kWordBits)] |= Word{1} << (s % Graph::kWordBits);
    frontier = visited;
    int depth = 0;
    for (;;) {
      std::fill(next.begin(), next.end(), 0);
      for_each_bit(frontier, [&](int u) {
        const auto r = g.row(u);
        for (std::size_t w = 0; w < words; ++w) next[w] |= r[w];
      });
      int found = 0;
      for (std::size_t w = 0; w < words; ++w) {
        next[w] &= ~visited[w];
        visited[w] |= next[w];
        found += std::popcount(next[w]);
      }
      if (found == 0) break;
      ++depth;
      const auto i = static_cast<std::size_t>(s);
      out.distance_sum[i] += static_cast<std::int64_t>(depth) * found;
      out.reachable[i] += found;
      out.eccentricity[i] = depth;
      frontier.swap(next);
    }
  }
  return out;
}

double apl_from(const DistanceSummary& d, int n) {
  if (n < 2) return 0.0;
  std::int64_t total = 0;
  for (auto s : d.distance_sum) total += s;
  return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

// Unit-capacity max-flow on a small digraph held as adjacency bitsets. Every
// arc has capacity one, which is exact for the two networks built below
// because no arc ever needs to carry more than one unit.
class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(int nodes)
      : nodes_(nodes),
        words_((nodes + Graph::kWordBits - 1) / Graph::kWordBits),
        cap_(static_cast<std::size_t>(nodes) * words_, 0),
        flow_(cap_.size(), 0),
        flow_t_(cap_.size(), 0),
        parent_(static_cast<std::size_t>(nodes), -1),
        visited_(static_cast<std::size_t>(words_), 0),
        residual_(static_cast<std::size_t>(words_), 0) {}

  void add_arc(int u, int v) { set(cap_, u, v); }

  /// Max-flow value from s to t, stopping once `limit` units are routed.
  int max_flow(int s, int t, int limit) {
    std::fill(flow_.begin(), flow_.end(), 0);
    std::fill(flow_t_.begin(), flow_t_.end(), 0);
    int value = 0;
    while (value < limit && augment(s, t)) ++value;
    return value;
  }

 private:
  static bool test(const std::vector<Word>& m, std::size_t base, int v) {
    return (m[base + static_cast<std::size_t>(v / Graph::kWordBits)] >> (v % Graph::kWordBits)) & 1U;
  }
  void set(std::vector<Word>& m, int u, int v) {
    m[base(u) + static_cast<std::size_t>(v / Graph::kWordBits)] |= Word{1} << (v % Graph::kWordBits);
  }
  void clear(std::vector<Word>& m, int u, int v) {
    m[base(u) + static_cast<std::size_t>(v / Graph::kWordBits)] &= ~(Word{1} << (v % Graph::kWordBits));
  }
  std::size_t base(int u) const { return static_cast<std::size_t>(u) * static_cast<std::size_t>(words_); }

  bool augment(int s, int t) {
    std::fill(visited_.begin(), visited_.end(), 0);
    visited_[static_cast<std::size_t>(s / Graph::kWordBits)] |= Word{1} << (s % Graph::kWordBits);
    queue_.clear();
    queue_.push_back(s);
    bool reached = false;
    for (std::size_t head = 0; head < queue_.size() && !reached; ++head) {
      const int u = queue_[head];
      const std::size_t b = base(u);
      for (int w = 0; w < words_; ++w) {
        const auto i = static_cast<std::size_t>(w);
        residual_[i] = ((cap_[b + i] & ~flow_[b + i]) | flow_t_[b + i]) & ~visited_[i];
        visited_[i] |= residual_[i];
      }
      for_each_bit(std::span<const Word>(residual_), [&](int v) {
        parent_[static_cast<std::size_t>(v)] = u;
        queue_.push_back(v);
        if (v == t) reached = true;
      });
    }
    if (!reached) return false;
    for (int v = t; v != s;) {
      const int u = parent_[static_cast<std::size_t>(v)];
      if (test(flow_, base(v), u)) {
        clear(flow_, v, u);
        clear(flow_t_, u, v);
      } else {
        set(flow_, u, v);
        set(flow_t_, v, u);
      }
      v = u;
    }
    return true;
  }

  int nodes_;
  int words_;
  std::vector<Word> cap_, flow_, flow_t_;
  std::vector<int> parent_;
  std::vector<int> queue_;
  std::vector<Word> visited_, residual_;
};

int min_degree(const Graph& g) {
  int d = std::numeric_limits<int>::max();
  for (int v = 0; v < g.order(); ++v) d = std::min(d, g.degree(v));
  return d;
}

bool connected_from(const DistanceSummary& d, int n) {
  return n <= 1 || d.reachable[0] == n - 1;
}

int edge_connectivity_impl(const Graph& g, bool connected) {
  const int n = g.order();
  if (n <= 1 || !connected) return 0;
  UnitFlowNetwork net(n);
  for (const auto& [u, v] : g.edges()) {
    net.add_arc(u, v);
    net.add_arc(v, u);
  }
  int best = min_degree(g);
  for (int t = 1; t < n && best > 1; ++t) best = std::min(best, net.max_flow(0, t, best));
  return best;
}

int node_connectivity_impl(const Graph& g, bool connected, int edge_conn) {
  const int n = g.order();
  if (!connected) return 0;
  const auto full = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (g.edge_count() == full) return n - 1;
  // Vertex v is split into v (in) and n + v (out) joined by a unit arc.
  UnitFlowNetwork net(2 * n);
  for (int v = 0; v < n; ++v) net.add_arc(v, n + v);
  for (const auto& [u, v] : g.edges()) {
    net.add_arc(n + u, v);
    net.add_arc(n + v, u);
  }
  int best = edge_conn;
  for (int s = 0; s < n && best > 1; ++s) {
    for (int t = s + 1; t < n && best > 1; ++t) {
      if (g.has_edge(s, t)) continue;
      best = std::min(best, net.max_flow(n + s, t, best));
    }
  }
  return best;
}

// Per-vertex terms are added in sorted order so that relabeling a graph
// cannot change the rounding of the mean.
double label_free_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

std::string_view property_name(Property p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Property> parse_property(std::string_view name) {
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    if (kNames[i] == name) return kAllProperties[i];
  }
  return std::nullopt;
}

double PropertyVector::operator[](Property p) const {
  switch (p) {
    case Property::kAcc: return acc;
    case Property::kGcc: return gcc;
    case Property::kScc: return scc;
    case Property::kApl: return apl;
    case Property::kR: return r;
    case Property::kDiam: return diam;
    case Property::kDen: return den;
    case Property::kRt: return rt;
    case Property::kCv: return cv;
    case Property::kCe: return ce;
  }
  return 0.0;
}

PropertyValues PropertyVector::values() const {
  return {acc, gcc, scc, apl, r, diam, den, rt, cv, ce};
}

std::size_t triangle_count(const Graph& g) {
  std::int64_t t = 0;
  for (int v = 0; v < g.order(); ++v) t += triangles_at(g, v);
  return static_cast<std::size_t>(t / 3);
}

double acc(const Graph& g) {
  const int n = g.order();
  if (n == 0) return 0.0;
  std::vector<double> local;
  for (int v = 0; v < n; ++v) {
    const std::int64_t d = g.degree(v);
    if (d < 2) continue;
    local.push_back(static_cast<double>(triangles_at(g, v)) / static_cast<double>(d * (d - 1) / 2));
  }
  return label_free_sum(local) / n;
}

double gcc(const Graph& g) {
  std::int64_t closed = 0;
  std::int64_t triples = 0;
  for (int v = 0; v < g.order(); ++v) {
    const std::int64_t d = g.degree(v);
    triples += d * (d - 1) / 2;
    closed += triangles_at(g, v);
  }
  return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

double scc_square(const Graph& g) {
  const int n = g.order();
  if (n == 0) return 0.0;
  const auto deg = g.degrees();
  std::vector<double> local;
  for (int v = 0; v < n; ++v) {
    if (deg[static_cast<std::size_t>(v)] < 2) continue;
    const auto nb = g.neighbors(v);
    std::int64_t squares = 0;
    std::int64_t potential = 0;
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        const int u = nb[a];
        const int w = nb[b];
        // v is a common neighbour of u and w by construction
        const std::int64_t q = and_count(g.row(u), g.row(w)) - 1;
        const std::int64_t theta = g.has_edge(u, w) ? 1 : 0;
        const std::int64_t du = deg[static_cast<std::size_t>(u)] - (1 + q + theta);
        const std::int64_t dw = deg[static_cast<std::size_t>(w)] - (1 + q + theta);
        squares += q;
        potential += du * dw + q;
      }
    }
    if (potential > 0) local.push_back(static_cast<double>(squares) / static_cast<double>(potential));
  }
  return label_free_sum(local) / n;
}

double apl(const Graph& g) { return apl_from(distances(g), g.order()); }

Assortativity assortativity(const Graph& g) {
  if (g.edge_count() == 0) return {0.0, true};
  const auto deg = g.degrees();
  // Sums over the 2|E| oriented edge copies (x, y) = (deg u, deg v).
  std::int64_t sx = 0, sxx = 0, sxy = 0;
  for (int v = 0; v < g.order(); ++v) {
    const std::int64_t d = deg[static_cast<std::size_t>(v)];
    sx += d * d;
    sxx += d * d * d;
  }
  for (const auto& [u, v] : g.edges()) {
    sxy += 2 * static_cast<std::int64_t>(deg[static_cast<std::size_t>(u)]) *
           deg[static_cast<std::size_t>(v)];
  }
  const auto m = static_cast<long double>(2 * g.edge_count());
  const long double num = m * sxy - static_cast<long double>(sx) * sx;
  const long double den = m * sxx - static_cast<long double>(sx) * sx;
  if (den == 0) return {0.0, true};
  return {static_cast<double>(num / den), false};
}

int diameter(const Graph& g) {
  const auto d = distances(g);
  return d.eccentricity.empty() ? 0 : *std::max_element(d.eccentricity.begin(), d.eccentricity.end());
}

bool is_connected(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return true;
  return connected_from(distances(g), n);
}

double density(const Graph& g) {
  const int n = g.order();
  if (n < 2) throw DomainError("density requires at least 2 vertices");
  return 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(n) * (n - 1));
}

double triangle_ratio(const Graph& g) {
  const std::int64_t n = g.order();
  if (n < 3) throw DomainError("triangle ratio requires at least 3 vertices");
  return static_cast<double>(triangle_count(g)) / static_cast<double>(n * (n - 1) * (n - 2) / 6);
}

int node_connectivity(const Graph& g) {
  const bool c = is_connected(g);
  return node_connectivity_impl(g, c, edge_connectivity_impl(g, c));
}

int edge_connectivity(const Graph& g) { return edge_connectivity_impl(g, is_connected(g)); }

PropertyVector property_vector(const Graph& g) {
  const int n = g.order();
  if (n < 3) throw DomainError("property vector requires at least 3 vertices");
  PropertyVector pv;
  pv.order = n;
  const auto deg = g.degrees();

  std::int64_t closed = 0;
  std::int64_t triples = 0;
  std::vector<double> local;
  for (int v = 0; v < n; ++v) {
    const std::int64_t d = deg[static_cast<std::size_t>(v)];
    const std::int64_t t = triangles_at(g, v);
    closed += t;
    triples += d * (d - 1) / 2;
    if (d >= 2) local.push_back(static_cast<double>(t) / static_cast<double>(d * (d - 1) / 2));
  }
  pv.acc = label_free_sum(local) / n;
  pv.gcc = triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
  pv.scc = scc_square(g);

  const auto dist = distances(g);
  pv.apl = apl_from(dist, n);
  pv.diam = *std::max_element(dist.eccentricity.begin(), dist.eccentricity.end());
  pv.connected = connected_from(dist, n);

  const auto r = assortativity(g);
  pv.r = r.value;
  pv.r_undefined = r.undefined;

  pv.den = density(g);
  const std::int64_t nn = n;
  pv.rt = static_cast<double>(closed / 3) / static_cast<double>(nn * (nn - 1) * (nn - 2) / 6);

  const int ce = edge_connectivity_impl(g, pv.connected);
  pv.ce = ce;
  pv.cv = node_connectivity_impl(g, pv.connected, ce);
  return pv;
}

NormalizedVector normalize_one(const PropertyVector& row, int n, double apl_divisor) {
  const double span = n > 1 ? static_cast<double>(n - 1) : 1.0;
  NormalizedVector out = row.values();
  out[static_cast<std::size_t>(Property::kApl)] = row.apl / apl_divisor;
  out[static_cast<std::size_t>(Property::kDiam)] = row.diam / span;
  out[static_cast<std::size_t>(Property::kCv)] = row.cv / span;
  out[static_cast<std::size_t>(Property::kCe)] = row.ce / span;
  return out;
}

Normalization normalize(std::span<const PropertyVector> rows, int n, AplScaling scaling) {
  for (const auto& r : rows) {
    if (r.order != n) {
      throw ValidationError("cannot normalize rows of order " + std::to_string(r.order) +
                            " together with order " + std::to_string(n));
    }
  }
  double divisor = 1.0;
  if (scaling.mode == AplScaling::Mode::kFixed) {
    if (!(scaling.divisor > 0.0)) throw ValidationError("apl divisor must be positive");
    divisor = scaling.divisor;
  } else {
    double max_apl = 0.0;
    for (const auto& r : rows) max_apl = std::max(max_apl, r.apl);
    divisor = max_apl > 0.0 ? max_apl : 1.0;
  }
  Normalization out;
  out.apl_divisor = divisor;
  out.rows.reserve(rows.size());
  for (const auto& r : rows) out.rows.push_back(normalize_one(r, n, divisor));
  return out;
}

}  // namespace samestats

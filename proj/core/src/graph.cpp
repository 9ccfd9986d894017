#include "samestats/graph.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "samestats/error.hpp"

namespace samestats {

Graph::Graph(int n) {
  if (n < 0) throw ValidationError("graph order must be non-negative, got " + std::to_string(n));
  n_ = n;
  words_ = (n + kWordBits - 1) / kWordBits;
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw ValidationError("vertex index " + std::to_string(v) + " out of range for order " +
                          std::to_string(n_));
  }
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return (row(u)[v / kWordBits] >> (v % kWordBits)) & 1U;
}

bool Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ValidationError("self-loop on vertex " + std::to_string(u));
  Word& a = bits_[static_cast<std::size_t>(u) * words_ + v / kWordBits];
  const Word mask = Word{1} << (v % kWordBits);
  if (a & mask) return false;
  a |= mask;
  bits_[static_cast<std::size_t>(v) * words_ + u / kWordBits] |= Word{1} << (u % kWordBits);
  ++edges_;
  return true;
}

bool Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  Word& a = bits_[static_cast<std::size_t>(u) * words_ + v / kWordBits];
  const Word mask = Word{1} << (v % kWordBits);
  if (!(a & mask)) return false;
  a &= ~mask;
  bits_[static_cast<std::size_t>(v) * words_ + u / kWordBits] &= ~(Word{1} << (u % kWordBits));
  --edges_;
  return true;
}

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (Word w : row(v)) d += std::popcount(w);
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  check_vertex(v);
  std::vector<int> out;
  for_each_bit(row(v), [&](int u) { out.push_back(u); });
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (int u = 0; u < n_; ++u) {
    for_each_bit(row(u), [&](int v) {
      if (u < v) out.emplace_back(u, v);
    });
  }
  return out;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
  return d;
}

std::vector<int> Graph::degree_sequence() const {
  auto d = degrees();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

Graph graph_from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.order();
  Graph c(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) c.add_edge(u, v);
    }
  }
  return c;
}

Graph permute(const Graph& g, std::span<const int> perm) {
  const int n = g.order();
  if (static_cast<int>(perm.size()) != n) {
    throw ValidationError("permutation length does not match graph order");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      throw ValidationError("not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
  Graph out(n);
  for (const auto& [u, v] : g.edges()) {
    out.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  return out;
}

}  // namespace samestats

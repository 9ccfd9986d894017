#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace samestats {

using Edge = std::pair<int, int>;

/// Simple undirected graph stored as a dense adjacency bit matrix.
///
/// Row `v` holds one bit per vertex and spans `words_per_row()` 64-bit words,
/// so for every order used in the experiments (n <= 64) a row is a single
/// machine word and neighbourhood intersections are an AND plus a popcount.
/// The diagonal is always empty and the matrix is kept symmetric.
class Graph {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  Graph() = default;
  explicit Graph(int n);

  int order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  int words_per_row() const noexcept { return words_; }

  bool has_edge(int u, int v) const;
  /// Adds {u,v}; returns false if it was already present. Throws
  /// ValidationError on out-of-range indices or u == v.
  bool add_edge(int u, int v);
  bool remove_edge(int u, int v);

  int degree(int v) const;
  std::span<const Word> row(int v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }

  std::vector<int> neighbors(int v) const;
  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;
  std::vector<int> degrees() const;
  /// Degrees sorted in non-increasing order.
  std::vector<int> degree_sequence() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  int words_ = 0;
  std::size_t edges_ = 0;
  std::vector<Word> bits_;
};

/// Builds a graph from an edge list. Duplicate pairs (in either orientation)
/// collapse; self-loops and out-of-range indices raise ValidationError.
Graph graph_from_edges(int n, std::span<const Edge> edges);

Graph complement(const Graph& g);

/// Relabels vertex v as perm[v]. `perm` must be a permutation of 0..n-1.
Graph permute(const Graph& g, std::span<const int> perm);

/// Calls f(index) for every set bit of a row, in increasing order.
template <typename F>
void for_each_bit(std::span<const Graph::Word> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Graph::Word bits = words[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      f(static_cast<int>(w) * Graph::kWordBits + b);
      bits &= bits - 1;
    }
  }
}

}  // namespace samestats

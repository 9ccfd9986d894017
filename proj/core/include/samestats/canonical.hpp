#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "samestats/graph.hpp"

namespace samestats {

inline constexpr int kMaxCanonicalOrder = 16;

/// Adjacency matrix of a graph on at most 16 vertices, one 16-bit word per
/// row. Bit j of rows[i] is set iff i ~ j.
struct PackedGraph {
  int n = 0;
  std::array<std::uint16_t, kMaxCanonicalOrder> rows{};

  /// Throws UnsupportedOrderError when g.order() > 16.
  static PackedGraph from_graph(const Graph& g);
  Graph to_graph() const;

  friend bool operator==(const PackedGraph&, const PackedGraph&) = default;
};

/// Label-invariant identifier of an isomorphism class: the order n followed
/// by the row-major upper-triangle adjacency bits of the canonically
/// relabeled graph, packed most-significant-bit first. Unused trailing bytes
/// are zero, so comparing the whole array orders codes by (n, bit string).
class CanonicalCode {
 public:
  static constexpr std::size_t kCapacity = 16;

  CanonicalCode() = default;

  int order() const noexcept { return bytes_[0]; }
  /// The meaningful prefix: 1 + ceil(n(n-1)/2 / 8) bytes.
  std::span<const std::uint8_t> bytes() const noexcept;
  std::string hex() const;
  /// The canonically labeled representative.
  PackedGraph to_packed() const;
  Graph to_graph() const { return to_packed().to_graph(); }

  static CanonicalCode from_canonical_rows(const PackedGraph& canonical);

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;

 private:
  std::array<std::uint8_t, kCapacity> bytes_{};
};

struct CanonicalLabeling {
  CanonicalCode code;
  /// labeling[i] is the original vertex placed at canonical position i.
  std::vector<int> labeling;
};

/// Canonical labeling by individualization/refinement: the ordered partition
/// of vertices is refined to an equitable partition (cells split by neighbour
/// counts), the first non-singleton cell is individualized vertex by vertex,
/// and the lexicographically smallest adjacency string over all discrete
/// leaves is kept. Leaves proved equivalent by discovered automorphisms are
/// pruned. Throws UnsupportedOrderError for n > 16.
CanonicalLabeling canonical_labeling(const PackedGraph& g);
CanonicalCode canonical_form(const PackedGraph& g);
CanonicalCode canonical_form(const Graph& g);

/// Short-circuits on order, edge count and degree sequence before comparing
/// canonical forms.
bool are_isomorphic(const Graph& a, const Graph& b);

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode& c) const noexcept;
};

}  // namespace samestats

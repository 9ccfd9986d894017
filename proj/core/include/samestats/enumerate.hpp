#pragma once

#include <cstdint>
#include <vector>

#include "samestats/canonical.hpp"
#include "samestats/graph.hpp"

namespace samestats {

inline constexpr int kMaxEnumerationOrder = 10;

/// Number of isomorphism classes of simple graphs on n vertices, n = 1..10.
std::uint64_t known_class_count(int n);

/// Canonical codes of every isomorphism class on n vertices, sorted.
///
/// Classes on n vertices are grown from the classes on n-1 vertices by
/// attaching a new vertex with each of the 2^(n-1) possible neighbourhoods,
/// canonicalizing and deduplicating. Every graph on n vertices arises this
/// way (delete any vertex), so the set is complete. The result is identical
/// for any `threads` value. Throws UnsupportedOrderError outside 1..10.
std::vector<CanonicalCode> enumerate_codes(int n, unsigned threads = 1);

/// Same as enumerate_codes, grown from an already computed complete set of
/// classes on n-1 vertices.
std::vector<CanonicalCode> extend_codes(const std::vector<CanonicalCode>& parents,
                                        unsigned threads = 1);

/// One canonically labeled representative per isomorphism class, in
/// CanonicalCode order.
std::vector<Graph> enumerate_nonisomorphic(int n, unsigned threads = 1);

}  // namespace samestats

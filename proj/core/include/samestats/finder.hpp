#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "samestats/properties.hpp"
#include "samestats/table.hpp"

namespace samestats {

/// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const noexcept { return lo > hi; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The value range bucket sweeps divide by default: [-1,1] for r, [0, n-1]
/// for diam, cv and ce, [0, largest apl in the table] for apl, [0,1] for the
/// rest.
Interval property_range(Property p, const PropertyTable& t);

struct PropertyQuery {
  /// Raw-value constraints; a property appears at most once.
  std::vector<std::pair<Property, Interval>> fixed;
  std::optional<Property> vary;
  int buckets = 10;
  /// Explicit vary range; property_range() when unset.
  std::optional<Interval> vary_range;
  /// Rows reported per bucket (or in total for a plain filter).
  std::size_t limit = std::numeric_limits<std::size_t>::max();

  /// Throws ValidationError on a repeated property, a vary property that is
  /// also fixed, or fewer than 2 buckets.
  void validate() const;
};

/// Parses the comma-separated query syntax:
///   prop=lo:hi   closed interval on a raw value
///   prop=v       shorthand for prop=v:v
///   vary=prop  buckets=k  limit=m  range=lo:hi
/// Property names are those of property_name(). Throws ParseError with the
/// offset of the offending token.
PropertyQuery parse_query(std::string_view text);

/// Inverse of parse_query (round-trips through it).
std::string format_query(const PropertyQuery& q);

struct DuplicateGroup {
  /// Raw values scaled by 10^precision and rounded.
  std::array<std::int64_t, kNumProperties> key{};
  /// Row indices in table order.
  std::vector<std::size_t> rows;
  std::vector<std::string> members;
};

/// Groups of at least two rows whose ten raw values agree after rounding to
/// `precision` decimals, largest groups first, ties by key.
std::vector<DuplicateGroup> duplicate_groups(const PropertyTable& t, int precision = 9);

/// histogram[s] is the number of groups of exactly s rows with equal rounded
/// values; histogram[1] counts the singletons.
std::vector<std::size_t> repetition_histogram(const PropertyTable& t, int precision = 9);

struct FilterResult {
  /// Matching rows ordered by graph6 code, at most `limit`.
  std::vector<std::size_t> rows;
  /// Matches before the limit was applied.
  std::size_t total = 0;
};

/// Rows whose raw values lie in every fixed interval. `vary` is ignored.
FilterResult filter_query(const PropertyTable& t, const PropertyQuery& q);

struct Bucket {
  Interval range;
  std::vector<std::size_t> rows;
  std::size_t total = 0;
};

struct BucketSweep {
  Property vary = Property::kAcc;
  std::vector<Bucket> buckets;
  /// Rows matching the fixed intervals and lying in the vary range.
  std::size_t total = 0;

  std::size_t non_empty() const noexcept;
};

/// Splits the vary range into equal buckets (the last one closed) and lists,
/// per bucket, up to `limit` matching rows ordered by graph6 code. Values are
/// placed with a 1e-9 tolerance so that ratios landing on a boundary go to
/// the upper bucket. Requires q.vary.
BucketSweep bucket_sweep(const PropertyTable& t, const PropertyQuery& q);

/// JSON response shared by the CLI `find` command and the HTTP query
/// endpoint: a plain filter when q.vary is unset, else a bucket sweep.
std::string query_json(const PropertyTable& t, const PropertyQuery& q);

}  // namespace samestats

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "samestats/graph.hpp"

namespace samestats {

/// The ten global graph properties, in table/CSV column order.
enum class Property : int { kAcc = 0, kGcc, kScc, kApl, kR, kDiam, kDen, kRt, kCv, kCe };

inline constexpr std::size_t kNumProperties = 10;
inline constexpr std::array<Property, kNumProperties> kAllProperties = {
    Property::kAcc, Property::kGcc, Property::kScc, Property::kApl, Property::kR,
    Property::kDiam, Property::kDen, Property::kRt, Property::kCv, Property::kCe};

/// Lower-case short names: acc, gcc, scc, apl, r, diam, den, rt, cv, ce.
std::string_view property_name(Property p);
std::optional<Property> parse_property(std::string_view name);

using PropertyValues = std::array<double, kNumProperties>;

struct PropertyVector {
  /// Order of the graph the values were computed from.
  int order = 0;
  double acc = 0.0;
  double gcc = 0.0;
  double scc = 0.0;
  double apl = 0.0;
  double r = 0.0;
  double diam = 0.0;
  double den = 0.0;
  double rt = 0.0;
  double cv = 0.0;
  double ce = 0.0;
  /// Assortativity had zero degree variance (or no edges); `r` is then 0.
  bool r_undefined = false;
  bool connected = false;

  double operator[](Property p) const;
  PropertyValues values() const;

  friend bool operator==(const PropertyVector&, const PropertyVector&) = default;
};

/// Normalized values in the same column order; all in [0,1] except the
/// assortativity column, which keeps its [-1,1] range.
using NormalizedVector = PropertyValues;

// Individual properties. Conventions for degenerate cases:
//   - local clustering c(u) is 0 when deg(u) < 2;
//   - gcc is 0 when there are no connected triples;
//   - the square clustering of a vertex is 0 when its denominator vanishes;
//   - apl is the sum of distances over reachable ordered pairs divided by
//     n(n-1): unreachable pairs contribute nothing, the divisor stays n-1 per
//     vertex;
//   - the diameter of a disconnected graph is its largest component diameter.

std::size_t triangle_count(const Graph& g);
double acc(const Graph& g);
double gcc(const Graph& g);
double scc_square(const Graph& g);
double apl(const Graph& g);

struct Assortativity {
  double value = 0.0;
  bool undefined = false;
};
/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Zero degree variance, or no edges at all, yields {0, undefined}.
Assortativity assortativity(const Graph& g);

int diameter(const Graph& g);
bool is_connected(const Graph& g);
/// Throws DomainError for n < 2.
double density(const Graph& g);
/// Triangles over C(n,3). Throws DomainError for n < 3.
double triangle_ratio(const Graph& g);
/// 0 for disconnected graphs, n-1 for complete graphs; otherwise the minimum
/// number of internally disjoint paths over non-adjacent pairs.
int node_connectivity(const Graph& g);
/// 0 for disconnected graphs and for n <= 1; otherwise the minimum s-t edge
/// cut with s fixed to vertex 0.
int edge_connectivity(const Graph& g);

/// All ten properties. Requires n >= 3.
PropertyVector property_vector(const Graph& g);

/// How the average path length column is scaled into [0,1].
struct AplScaling {
  enum class Mode {
    /// Divide by the largest apl of the dataset, which must be a complete
    /// ground truth (the exact maximum for that order).
    kGroundTruthMax,
    /// Divide by the largest apl encountered in a generated sample.
    kSampleMax,
    /// Divide by a caller-supplied value.
    kFixed,
  };
  Mode mode = Mode::kSampleMax;
  double divisor = 1.0;

  static AplScaling ground_truth() { return {Mode::kGroundTruthMax, 1.0}; }
  static AplScaling sample_max() { return {Mode::kSampleMax, 1.0}; }
  static AplScaling fixed(double d) { return {Mode::kFixed, d}; }
};

struct Normalization {
  std::vector<NormalizedVector> rows;
  /// The divisor actually applied to the apl column.
  double apl_divisor = 1.0;
};

/// Scales raw property rows of graphs of order n (every row's `order` must
/// equal n, else ValidationError): diam, cv and ce are divided
/// by n-1, apl by the divisor chosen by `scaling` (a zero maximum becomes 1),
/// the remaining columns are left unchanged.
Normalization normalize(std::span<const PropertyVector> rows, int n, AplScaling scaling);

/// Per-row variant used for a single graph against a known apl divisor.
NormalizedVector normalize_one(const PropertyVector& row, int n, double apl_divisor);

}  // namespace samestats

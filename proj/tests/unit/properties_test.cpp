#include <gtest/gtest.h>

#include <cmath>

#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/generators.hpp"
#include "samestats/graph6.hpp"
#include "samestats/properties.hpp"
#include "support/graphs.hpp"
#include "support/oracle.hpp"

namespace samestats {
namespace {

using testing::complete;
using testing::cycle;
using testing::path;
using testing::star;

Graph two_k2() {
  const Edge e[] = {{0, 1}, {2, 3}};
  return graph_from_edges(4, e);
}

TEST(Properties, Names) {
  for (Property p : kAllProperties) EXPECT_EQ(parse_property(property_name(p)), p);
  EXPECT_FALSE(parse_property("density").has_value());
  EXPECT_EQ(property_name(Property::kCe), "ce");
}

TEST(Properties, Clustering) {
  EXPECT_DOUBLE_EQ(acc(complete(3)), 1.0);
  EXPECT_DOUBLE_EQ(acc(cycle(5)), 0.0);
  EXPECT_DOUBLE_EQ(acc(star(4)), 0.0);
  EXPECT_DOUBLE_EQ(gcc(complete(3)), 1.0);
  EXPECT_DOUBLE_EQ(gcc(star(4)), 0.0);
  EXPECT_DOUBLE_EQ(gcc(Graph(4)), 0.0);
}

TEST(Properties, SquareClustering) {
  EXPECT_DOUBLE_EQ(scc_square(cycle(4)), 1.0);
  EXPECT_DOUBLE_EQ(scc_square(complete(3)), 0.0);
  EXPECT_DOUBLE_EQ(scc_square(cycle(5)), 0.0);
  EXPECT_DOUBLE_EQ(scc_square(complete(5)), 1.0);
}

TEST(Properties, AveragePathLength) {
  EXPECT_DOUBLE_EQ(apl(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(apl(cycle(5)), 1.5);
  EXPECT_DOUBLE_EQ(apl(star(4)), 1.5);
  EXPECT_DOUBLE_EQ(apl(Graph(5)), 0.0);
  EXPECT_DOUBLE_EQ(apl(path(9)), 10.0 / 3.0);
  // unreachable pairs contribute nothing while the divisor stays n(n-1)
  EXPECT_DOUBLE_EQ(apl(two_k2()), 4.0 / 12.0);
}

TEST(Properties, Assortativity) {
  for (int n = 3; n <= 9; ++n) {
    const auto a = assortativity(star(n));
    EXPECT_FALSE(a.undefined);
    EXPECT_NEAR(a.value, -1.0, 1e-12);
  }
  const auto c5 = assortativity(cycle(5));
  EXPECT_TRUE(c5.undefined);
  EXPECT_EQ(c5.value, 0.0);
  EXPECT_TRUE(assortativity(Graph(4)).undefined);
}

TEST(Properties, DiameterDensityTriangles) {
  EXPECT_EQ(diameter(complete(4)), 1);
  EXPECT_EQ(diameter(path(4)), 3);
  EXPECT_EQ(diameter(two_k2()), 1);
  EXPECT_DOUBLE_EQ(density(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(triangle_ratio(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(density(cycle(5)), 0.5);
  EXPECT_DOUBLE_EQ(triangle_ratio(cycle(5)), 0.0);
  EXPECT_THROW(density(Graph(1)), DomainError);
  EXPECT_THROW(triangle_ratio(Graph(2)), DomainError);
  EXPECT_EQ(triangle_count(complete(5)), 10u);
}

TEST(Properties, Connectivity) {
  EXPECT_EQ(node_connectivity(cycle(5)), 2);
  EXPECT_EQ(edge_connectivity(cycle(5)), 2);
  EXPECT_EQ(node_connectivity(complete(4)), 3);
  EXPECT_EQ(edge_connectivity(complete(4)), 3);
  EXPECT_EQ(node_connectivity(two_k2()), 0);
  EXPECT_EQ(edge_connectivity(two_k2()), 0);
  EXPECT_EQ(node_connectivity(star(6)), 1);
  // two K4s sharing a vertex: one cut vertex, but three edges per side
  const Edge bow[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                      {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}};
  const Graph g = graph_from_edges(7, bow);
  EXPECT_EQ(node_connectivity(g), 1);
  EXPECT_EQ(edge_connectivity(g), 3);
}

TEST(PropertyVector, EmptyAndComplete) {
  const auto e = property_vector(Graph(5));
  EXPECT_TRUE(e.r_undefined);
  EXPECT_FALSE(e.connected);
  for (double v : e.values()) EXPECT_EQ(v, 0.0);

  const auto k = property_vector(complete(5));
  const PropertyValues expected = {1, 1, 1, 1, 0, 1, 1, 1, 4, 4};
  EXPECT_EQ(k.values(), expected);
  EXPECT_TRUE(k.r_undefined);
  EXPECT_TRUE(k.connected);
  EXPECT_EQ(k.order, 5);
  EXPECT_THROW(property_vector(Graph(2)), DomainError);
}

// Values from networkx (average_clustering, transitivity,
// average_shortest_path_length, degree_assortativity_coefficient, diameter,
// density, node_connectivity, edge_connectivity). Square clustering uses the
// product form of the potential-squares term; recent networkx releases sum
// the two factors instead, so that column was evaluated separately.
TEST(PropertyVector, ReferenceGraphs) {
  struct Case {
    const char* g6;
    PropertyValues v;
  };
  const Case cases[] = {
      {"F~CGG",  // lollipop K4 + path of 3
       {0.5, 0.7058823529411765, 0.4761904761904762, 2.0476190476190474, 0.3207547169811318, 4,
        0.42857142857142855, 4.0 / 35.0, 1, 1}},
      {"DyG",  // bull
       {1.0 / 3.0, 0.42857142857142855, 0.0, 1.6, -0.562500000000003, 3, 0.5, 0.1, 1, 1}},
      {"IheA@GUAo",  // Petersen
       {0, 0, 0, 1.6666666666666667, 0, 2, 1.0 / 3.0, 0, 3, 3}},
  };
  for (const auto& c : cases) {
    const auto pv = property_vector(decode_graph6(c.g6));
    for (std::size_t i = 0; i < kNumProperties; ++i) EXPECT_NEAR(pv.values()[i], c.v[i], 1e-12) << c.g6 << " " << i;
  }
}

void expect_matches_oracle(const Graph& g, double tol) {
  const auto pv = property_vector(g);
  const auto o = testing::naive_properties(g);
  const double expect[] = {o.acc, o.gcc, o.scc, o.apl, o.r, o.diam, o.den, o.rt, o.cv, o.ce};
  for (std::size_t i = 0; i < kNumProperties; ++i)
    ASSERT_NEAR(pv.values()[i], expect[i], tol) << encode_graph6(g) << " " << property_name(kAllProperties[i]);
  ASSERT_EQ(pv.r_undefined, o.r_undefined) << encode_graph6(g);
  ASSERT_EQ(pv.connected, o.connected) << encode_graph6(g);
}

TEST(PropertyVector, MatchesNaiveOracleOrderSix) {
  for (const auto& g : enumerate_nonisomorphic(6)) expect_matches_oracle(g, 1e-12);
}

TEST(PropertyVector, MatchesNaiveOracleOnRandomGraphs) {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.uniform_int(3, 9));
    expect_matches_oracle(testing::random_graph(n, rng.uniform(), rng), 1e-12);
  }
}

TEST(PropertyVector, LabelInvariance) {
  Rng rng(123);
  for (int t = 0; t < 1000; ++t) {
    const int n = static_cast<int>(rng.uniform_int(3, 9));
    const Graph g = testing::random_graph(n, rng.uniform(), rng);
    ASSERT_EQ(property_vector(g), property_vector(permute(g, testing::random_permutation(n, rng))));
  }
}

void expect_in_range(const PropertyVector& pv, int n) {
  for (double v : {pv.acc, pv.gcc, pv.scc, pv.den, pv.rt}) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
  ASSERT_GE(pv.r, -1.0 - 1e-12);
  ASSERT_LE(pv.r, 1.0 + 1e-12);
  if (pv.r_undefined) ASSERT_EQ(pv.r, 0.0);
  for (double v : {pv.diam, pv.cv, pv.ce}) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, n - 1.0);
  }
  ASSERT_GE(pv.apl, 0.0);
  if (!pv.connected) {
    ASSERT_EQ(pv.cv, 0.0);
    ASSERT_EQ(pv.ce, 0.0);
  }
}

TEST(PropertyVector, RangeInvariants) {
  for (const auto& g : enumerate_nonisomorphic(8)) expect_in_range(property_vector(g), 8);
  for (Model m : kAllModels) {
    const auto s = sample({m, 9, 500, 4}, 1);
    for (const auto& g : s.graphs) expect_in_range(property_vector(g), 9);
  }
}

TEST(Properties, ComplementDensity) {
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 20));
    const Graph g = testing::random_graph(n, rng.uniform(), rng);
    // den is 2|E| / n(n-1); the two edge counts sum to the pair count exactly
    ASSERT_EQ(g.edge_count() + complement(g).edge_count(), static_cast<std::size_t>(n * (n - 1) / 2));
    ASSERT_NEAR(density(g) + density(complement(g)), 1.0, 1e-15);
  }
}

TEST(Normalize, Scaling) {
  PropertyVector a;
  a.order = 9;
  a.apl = 1.5;
  a.diam = 4;
  a.cv = 2;
  a.ce = 8;
  a.r = -0.5;
  a.den = 0.25;
  PropertyVector b = a;
  b.apl = 2.0;
  const std::vector<PropertyVector> rows = {a, b};
  const auto norm = normalize(rows, 9, AplScaling::sample_max());
  EXPECT_DOUBLE_EQ(norm.apl_divisor, 2.0);
  const auto& r = norm.rows[0];
  EXPECT_DOUBLE_EQ(r[static_cast<int>(Property::kApl)], 0.75);
  EXPECT_DOUBLE_EQ(r[static_cast<int>(Property::kDiam)], 0.5);
  EXPECT_DOUBLE_EQ(r[static_cast<int>(Property::kCv)], 0.25);
  EXPECT_DOUBLE_EQ(r[static_cast<int>(Property::kCe)], 1.0);
  EXPECT_DOUBLE_EQ(r[static_cast<int>(Property::kR)], -0.5);
  EXPECT_DOUBLE_EQ(r[static_cast<int>(Property::kDen)], 0.25);

  EXPECT_DOUBLE_EQ(normalize(rows, 9, AplScaling::fixed(3.0)).rows[1][3], 2.0 / 3.0);
  EXPECT_EQ(normalize_one(a, 9, 3.0)[3], 0.5);

  std::vector<PropertyVector> zeros(3);
  for (auto& z : zeros) z.order = 5;
  EXPECT_DOUBLE_EQ(normalize(zeros, 5, AplScaling::sample_max()).apl_divisor, 1.0);

  std::vector<PropertyVector> mixed = {a, b};
  mixed[1].order = 8;
  EXPECT_THROW(normalize(mixed, 9, AplScaling::sample_max()), ValidationError);
}

TEST(Normalize, GroundTruthDivisorIsPathApl) {
  const auto graphs = enumerate_nonisomorphic(8);
  std::vector<PropertyVector> rows;
  for (const auto& g : graphs) rows.push_back(property_vector(g));
  const auto norm = normalize(rows, 8, AplScaling::ground_truth());
  EXPECT_DOUBLE_EQ(norm.apl_divisor, apl(path(8)));
  for (const auto& r : norm.rows) {
    for (std::size_t i = 0; i < kNumProperties; ++i) {
      if (kAllProperties[i] == Property::kR) continue;
      ASSERT_GE(r[i], 0.0);
      ASSERT_LE(r[i], 1.0);
    }
  }
}

}  // namespace
}  // namespace samestats

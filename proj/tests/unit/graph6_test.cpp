#include <gtest/gtest.h>

#include <sstream>

#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/graph6.hpp"
#include "support/graphs.hpp"

namespace samestats {
namespace {

// Reference strings produced by networkx.to_graph6_bytes.
TEST(Graph6, KnownEncodings) {
  EXPECT_EQ(encode_graph6(testing::complete(3)), "Bw");
  EXPECT_EQ(encode_graph6(Graph(1)), "@");
  EXPECT_EQ(encode_graph6(testing::path(4)), "Ch");
  EXPECT_EQ(encode_graph6(testing::cycle(5)), "Dhc");
  EXPECT_EQ(encode_graph6(testing::complete(4)), "C~");
  EXPECT_EQ(encode_graph6(testing::star(4)), "Cs");
  const Edge m[] = {{0, 1}, {2, 3}};
  EXPECT_EQ(encode_graph6(graph_from_edges(4, m)), "C`");
  EXPECT_EQ(encode_graph6(testing::complete(5)), "D~{");
  EXPECT_EQ(encode_graph6(testing::cycle(4)), "Cl");
}

TEST(Graph6, Petersen) {
  const Edge e[] = {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 6}, {2, 3}, {2, 7}, {3, 4},
                    {3, 8}, {4, 9}, {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}};
  const Graph g = graph_from_edges(10, e);
  EXPECT_EQ(encode_graph6(g), "IheA@GUAo");
  EXPECT_EQ(decode_graph6("IheA@GUAo"), g);
}

TEST(Graph6, LongOrderForm) {
  const std::string empty63 = encode_graph6(Graph(63));
  EXPECT_EQ(empty63.substr(0, 4), "~??~");
  EXPECT_EQ(empty63.size(), 4u + (63 * 62 / 2 + 5) / 6);
  EXPECT_EQ(empty63.find_first_not_of('?', 4), std::string::npos);

  const std::string p70 = encode_graph6(testing::path(70));
  EXPECT_EQ(p70.substr(0, 12), "~?@EhCGGC@?G");
  EXPECT_EQ(p70.back(), 'G');
  EXPECT_EQ(decode_graph6(p70), testing::path(70));
}

TEST(Graph6, RoundTripAllOrderSeven) {
  for (const auto& g : enumerate_nonisomorphic(7)) ASSERT_EQ(decode_graph6(encode_graph6(g)), g);
}

TEST(Graph6, RoundTripRandom) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(rng.uniform_int(0, 100));
    const Graph g = testing::random_graph(n, rng.uniform(), rng);
    ASSERT_EQ(decode_graph6(encode_graph6(g)), g);
  }
}

TEST(Graph6, HeaderAndLineEndings) {
  EXPECT_EQ(decode_graph6(">>graph6<<Bw\r\n"), testing::complete(3));
  std::istringstream in("Bw\n\nCh\n");
  const auto gs = read_graph6(in);
  ASSERT_EQ(gs.size(), 2u);
  std::ostringstream out;
  write_graph6(out, gs);
  EXPECT_EQ(out.str(), "Bw\nCh\n");
}

TEST(Graph6, MalformedInput) {
  EXPECT_THROW(decode_graph6(""), ParseError);
  EXPECT_THROW(decode_graph6("B"), ParseError);     // missing payload
  EXPECT_THROW(decode_graph6("Bww"), ParseError);   // trailing byte
  try {
    decode_graph6("C!");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
}

}  // namespace
}  // namespace samestats

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "json.hpp"
#include "samestats/canonical.hpp"
#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/finder.hpp"
#include "samestats/graph6.hpp"
#include "samestats/rng.hpp"

namespace samestats {
namespace {

const PropertyTable& table(int n) {
  static std::map<int, PropertyTable> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, build_property_table(enumerate_nonisomorphic(n), AplScaling::ground_truth(), 2)).first;
  }
  return it->second;
}

TEST(Query, ParseAndFormat) {
  const auto q = parse_query("den=0.25:0.5,diam=4,vary=r,buckets=8,limit=3,range=-1:0.5");
  ASSERT_EQ(q.fixed.size(), 2u);
  EXPECT_EQ(q.fixed[0].first, Property::kDen);
  EXPECT_EQ(q.fixed[0].second, (Interval{0.25, 0.5}));
  EXPECT_EQ(q.fixed[1].second, (Interval{4, 4}));
  EXPECT_EQ(q.vary, Property::kR);
  EXPECT_EQ(q.buckets, 8);
  EXPECT_EQ(q.limit, 3u);
  EXPECT_EQ(q.vary_range, (Interval{-1, 0.5}));

  const auto back = parse_query(format_query(q));
  EXPECT_EQ(back.fixed, q.fixed);
  EXPECT_EQ(back.vary, q.vary);
  EXPECT_EQ(back.buckets, q.buckets);
  EXPECT_EQ(back.limit, q.limit);
  EXPECT_EQ(back.vary_range, q.vary_range);
  EXPECT_TRUE(parse_query("").fixed.empty());
}

TEST(Query, ParseErrors) {
  EXPECT_THROW(parse_query("size=3"), ParseError);
  EXPECT_THROW(parse_query("den=abc"), ParseError);
  EXPECT_THROW(parse_query("den"), ParseError);
  EXPECT_THROW(parse_query("vary=foo"), ParseError);
  try {
    parse_query("acc=0:1,bogus=2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 8u);
  }
  EXPECT_THROW(parse_query("acc=0:1,acc=0:0.5").validate(), ValidationError);
  EXPECT_THROW(parse_query("acc=0:1,vary=acc").validate(), ValidationError);
  EXPECT_THROW(parse_query("vary=acc,buckets=1").validate(), ValidationError);
}

TEST(Duplicates, GroundTruth) {
  const auto g7 = duplicate_groups(table(7));
  ASSERT_EQ(g7.size(), 1u);
  EXPECT_EQ(g7[0].members.size(), 2u);
  const auto g8 = duplicate_groups(table(8));
  EXPECT_EQ(g8.size(), 7u);
  for (const auto& g : g8) {
    ASSERT_EQ(g.rows.size(), g.members.size());
    ASSERT_GE(g.members.size(), 2u);
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      EXPECT_EQ(g.members[i], table(8).graph6[g.rows[i]]);
      for (std::size_t j = i + 1; j < g.members.size(); ++j)
        EXPECT_FALSE(are_isomorphic(decode_graph6(g.members[i]), decode_graph6(g.members[j])));
    }
  }
  const auto hist = repetition_histogram(table(8));
  ASSERT_GE(hist.size(), 3u);
  EXPECT_EQ(hist[2], 7u);
  EXPECT_EQ(hist[1] + 2 * hist[2], 12346u);
}

TEST(Duplicates, CoarserPrecisionOnlyMerges) {
  const auto fine = duplicate_groups(table(8), 9);
  const auto coarse = duplicate_groups(table(8), 2);
  EXPECT_GE(coarse.size(), 1u);
  for (const auto& f : fine) {
    const std::set<std::size_t> rows(f.rows.begin(), f.rows.end());
    bool contained = false;
    for (const auto& c : coarse) {
      const std::set<std::size_t> crow(c.rows.begin(), c.rows.end());
      if (std::includes(crow.begin(), crow.end(), rows.begin(), rows.end())) contained = true;
    }
    EXPECT_TRUE(contained);
  }
  // sorted by size, largest first
  for (std::size_t i = 1; i < coarse.size(); ++i) EXPECT_GE(coarse[i - 1].rows.size(), coarse[i].rows.size());
}

TEST(Filter, EmptyFullAndOrdered) {
  const auto& t = table(7);
  EXPECT_EQ(filter_query(t, parse_query("acc=0.6:0.5")).total, 0u);
  PropertyQuery all;
  for (Property p : kAllProperties) all.fixed.emplace_back(p, property_range(p, t));
  const auto r = filter_query(t, all);
  EXPECT_EQ(r.total, t.size());
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_LT(t.graph6[r.rows[i - 1]], t.graph6[r.rows[i]]);
  const auto limited = filter_query(t, parse_query("limit=5"));
  EXPECT_EQ(limited.rows.size(), 5u);
  EXPECT_EQ(limited.total, t.size());
}

TEST(Filter, ShrinkingNeverAdds) {
  const auto& t = table(7);
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    PropertyQuery wide;
    const int k = static_cast<int>(rng.uniform_int(1, 3));
    for (int i = 0; i < k; ++i) {
      const Property p = kAllProperties[static_cast<std::size_t>(rng.uniform_int(0, 9))];
      bool dup = false;
      for (const auto& f : wide.fixed) dup |= f.first == p;
      if (dup) continue;
      const Interval full = property_range(p, t);
      const double a = rng.uniform(full.lo, full.hi), b = rng.uniform(full.lo, full.hi);
      wide.fixed.emplace_back(p, Interval{std::min(a, b), std::max(a, b)});
    }
    PropertyQuery narrow = wide;
    auto& iv = narrow.fixed[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(narrow.fixed.size()) - 1))].second;
    iv.lo += (iv.hi - iv.lo) * rng.uniform() * 0.5;
    const auto rw = filter_query(t, wide), rn = filter_query(t, narrow);
    const std::set<std::size_t> ws(rw.rows.begin(), rw.rows.end());
    ASSERT_LE(rn.total, rw.total);
    for (std::size_t r : rn.rows) ASSERT_TRUE(ws.count(r));
  }
}

TEST(Sweep, BucketsPartitionTheRange) {
  const auto& t = table(7);
  for (Property p : kAllProperties) {
    PropertyQuery q;
    q.vary = p;
    q.buckets = 7;
    const auto s = bucket_sweep(t, q);
    ASSERT_EQ(s.buckets.size(), 7u);
    std::size_t sum = 0;
    std::set<std::size_t> seen;
    for (const auto& b : s.buckets) {
      sum += b.total;
      for (std::size_t r : b.rows) ASSERT_TRUE(seen.insert(r).second) << property_name(p);
    }
    EXPECT_EQ(sum, s.total);
    EXPECT_EQ(s.total, t.size()) << property_name(p);
    EXPECT_DOUBLE_EQ(s.buckets.front().range.lo, property_range(p, t).lo);
    EXPECT_DOUBLE_EQ(s.buckets.back().range.hi, property_range(p, t).hi);
  }
  EXPECT_THROW(bucket_sweep(t, parse_query("acc=0:1")), ValidationError);
}

TEST(Sweep, ExplicitRangeAndLimit) {
  const auto& t = table(7);
  const auto s = bucket_sweep(t, parse_query("vary=ce,buckets=7,range=0:6,limit=2"));
  EXPECT_EQ(s.total, t.size());
  for (const auto& b : s.buckets) EXPECT_LE(b.rows.size(), 2u);
  // ce takes the integers 0..6, one per bucket
  EXPECT_EQ(s.non_empty(), 7u);
}

TEST(QueryJson, FilterAndSweepShapes) {
  const auto& t = table(7);
  const auto f = nlohmann::json::parse(query_json(t, parse_query("diam=2,limit=2")));
  EXPECT_EQ(f["mode"], "filter");
  EXPECT_EQ(f["n"], 7);
  EXPECT_EQ(f["rows"].size(), 2u);
  EXPECT_EQ(f["total"], filter_query(t, parse_query("diam=2")).total);
  EXPECT_TRUE(f["rows"][0]["raw"].contains("apl"));
  EXPECT_TRUE(f["rows"][0]["normalized"].contains("ce"));

  const auto s = nlohmann::json::parse(query_json(t, parse_query("vary=gcc,buckets=5")));
  EXPECT_EQ(s["mode"], "sweep");
  EXPECT_EQ(s["vary"], "gcc");
  EXPECT_EQ(s["buckets"].size(), 5u);
  EXPECT_EQ(s["total"], t.size());
}

}  // namespace
}  // namespace samestats

#include "samestats/finder.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include <json.hpp>

#include "samestats/error.hpp"

namespace samestats {

namespace {

constexpr double kBucketTolerance = 1e-9;

double parse_number(std::string_view s, std::size_t offset) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ParseError("expected a number, got '" + std::string(s) + "'", offset);
  }
  return v;
}

std::size_t parse_count(std::string_view s, std::size_t offset) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'", offset);
  }
  return v;
}

Interval parse_interval(std::string_view s, std::size_t offset) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    const double v = parse_number(s, offset);
    return {v, v};
  }
  return {parse_number(s.substr(0, colon), offset), parse_number(s.substr(colon + 1), offset + colon + 1)};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool matches_fixed(const PropertyTable& t, std::size_t i, const PropertyQuery& q) {
  for (const auto& [p, iv] : q.fixed) {
    if (!iv.contains(t.raw[i][p])) return false;
  }
  return true;
}

void sort_by_code(const PropertyTable& t, std::vector<std::size_t>& rows) {
  std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    return t.graph6[a] != t.graph6[b] ? t.graph6[a] < t.graph6[b] : a < b;
  });
}

std::map<std::array<std::int64_t, kNumProperties>, std::vector<std::size_t>> group_rows(const PropertyTable& t,
                                                                                        int precision) {
  if (precision < 0 || precision > 12) throw ValidationError("precision must lie in [0, 12]");
  const double scale = std::pow(10.0, precision);
  std::map<std::array<std::int64_t, kNumProperties>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::array<std::int64_t, kNumProperties> key{};
    const auto v = t.raw[i].values();
    for (std::size_t j = 0; j < kNumProperties; ++j) key[j] = std::llround(v[j] * scale);
    groups[key].push_back(i);
  }
  return groups;
}

nlohmann::ordered_json row_json(const PropertyTable& t, std::size_t i) {
  nlohmann::ordered_json raw;
  nlohmann::ordered_json norm;
  for (std::size_t j = 0; j < kNumProperties; ++j) {
    const auto name = std::string(property_name(kAllProperties[j]));
    raw[name] = t.raw[i][kAllProperties[j]];
    norm[name] = t.normalized[i][j];
  }
  nlohmann::ordered_json r;
  r["graph6"] = t.graph6[i];
  r["raw"] = std::move(raw);
  r["normalized"] = std::move(norm);
  r["r_undefined"] = t.raw[i].r_undefined;
  r["connected"] = t.raw[i].connected;
  return r;
}

}  // namespace

Interval property_range(Property p, const PropertyTable& t) {
  switch (p) {
    case Property::kR: return {-1.0, 1.0};
    case Property::kDiam:
    case Property::kCv:
    case Property::kCe: return {0.0, static_cast<double>(std::max(1, t.n - 1))};
    case Property::kApl: {
      double mx = 0.0;
      for (const auto& r : t.raw) mx = std::max(mx, r.apl);
      return {0.0, mx > 0.0 ? mx : 1.0};
    }
    default: return {0.0, 1.0};
  }
}

void PropertyQuery::validate() const {
  std::array<bool, kNumProperties> seen{};
  for (const auto& [p, iv] : fixed) {
    auto& s = seen[static_cast<std::size_t>(p)];
    if (s) throw ValidationError("property '" + std::string(property_name(p)) + "' is fixed twice");
    s = true;
  }
  if (vary) {
    if (seen[static_cast<std::size_t>(*vary)]) {
      throw ValidationError("property '" + std::string(property_name(*vary)) + "' is both fixed and varied");
    }
    if (buckets < 2) throw ValidationError("a sweep needs at least 2 buckets");
    if (vary_range && !(vary_range->lo < vary_range->hi)) throw ValidationError("sweep range must have lo < hi");
  }
}

PropertyQuery parse_query(std::string_view text) {
  PropertyQuery q;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto token = text.substr(pos, comma - pos);
    const std::size_t offset = pos;
    pos = comma + 1;
    if (token.empty()) {
      if (comma == text.size()) break;
      throw ParseError("empty query term", offset);
    }
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(token) + "'", offset);
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    const std::size_t value_offset = offset + eq + 1;
    if (key == "vary") {
      const auto p = parse_property(value);
      if (!p) throw ParseError("unknown property '" + std::string(value) + "'", value_offset);
      q.vary = p;
    } else if (key == "buckets") {
      q.buckets = static_cast<int>(std::min<std::size_t>(parse_count(value, value_offset), 1000000));
    } else if (key == "limit") {
      q.limit = parse_count(value, value_offset);
    } else if (key == "range") {
      q.vary_range = parse_interval(value, value_offset);
    } else if (const auto p = parse_property(key)) {
      q.fixed.emplace_back(*p, parse_interval(value, value_offset));
    } else {
      throw ParseError("unknown query key '" + std::string(key) + "'", offset);
    }
  }
  return q;
}

std::string format_query(const PropertyQuery& q) {
  std::string out;
  auto add = [&](const std::string& term) {
    if (!out.empty()) out += ',';
    out += term;
  };
  for (const auto& [p, iv] : q.fixed) add(std::string(property_name(p)) + "=" + fmt(iv.lo) + ":" + fmt(iv.hi));
  if (q.vary) {
    add("vary=" + std::string(property_name(*q.vary)));
    add("buckets=" + std::to_string(q.buckets));
    if (q.vary_range) add("range=" + fmt(q.vary_range->lo) + ":" + fmt(q.vary_range->hi));
  }
  if (q.limit != std::numeric_limits<std::size_t>::max()) add("limit=" + std::to_string(q.limit));
  return out;
}

std::vector<DuplicateGroup> duplicate_groups(const PropertyTable& t, int precision) {
  std::vector<DuplicateGroup> out;
  for (auto& [key, rows] : group_rows(t, precision)) {
    if (rows.size() < 2) continue;
    DuplicateGroup g;
    g.key = key;
    g.rows = std::move(rows);
    for (std::size_t i : g.rows) g.members.push_back(t.graph6[i]);
    out.push_back(std::move(g));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DuplicateGroup& a, const DuplicateGroup& b) { return a.rows.size() > b.rows.size(); });
  return out;
}

std::vector<std::size_t> repetition_histogram(const PropertyTable& t, int precision) {
  std::vector<std::size_t> hist(1, 0);
  for (const auto& [key, rows] : group_rows(t, precision)) {
    if (hist.size() <= rows.size()) hist.resize(rows.size() + 1, 0);
    ++hist[rows.size()];
  }
  return hist;
}

FilterResult filter_query(const PropertyTable& t, const PropertyQuery& q) {
  PropertyQuery plain = q;
  plain.vary.reset();
  plain.validate();
  FilterResult out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (matches_fixed(t, i, q)) out.rows.push_back(i);
  }
  out.total = out.rows.size();
  sort_by_code(t, out.rows);
  if (out.rows.size() > q.limit) out.rows.resize(q.limit);
  return out;
}

std::size_t BucketSweep::non_empty() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(buckets.begin(), buckets.end(), [](const Bucket& b) { return b.total > 0; }));
}

BucketSweep bucket_sweep(const PropertyTable& t, const PropertyQuery& q) {
  if (!q.vary) throw ValidationError("bucket_sweep needs a vary property");
  q.validate();
  const Interval range = q.vary_range.value_or(property_range(*q.vary, t));
  const int k = q.buckets;
  const double width = (range.hi - range.lo) / k;
  BucketSweep out;
  out.vary = *q.vary;
  out.buckets.resize(static_cast<std::size_t>(k));
  for (int b = 0; b < k; ++b) {
    out.buckets[static_cast<std::size_t>(b)].range = {range.lo + width * b,
                                                      b + 1 == k ? range.hi : range.lo + width * (b + 1)};
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!matches_fixed(t, i, q)) continue;
    const double f = (t.raw[i][*q.vary] - range.lo) / width;
    if (f < -kBucketTolerance || f > k + kBucketTolerance) continue;
    const int b = std::clamp(static_cast<int>(std::floor(f + kBucketTolerance)), 0, k - 1);
    out.buckets[static_cast<std::size_t>(b)].rows.push_back(i);
    ++out.total;
  }
  for (auto& b : out.buckets) {
    b.total = b.rows.size();
    sort_by_code(t, b.rows);
    if (b.rows.size() > q.limit) b.rows.resize(q.limit);
  }
  return out;
}

std::string query_json(const PropertyTable& t, const PropertyQuery& q) {
  nlohmann::ordered_json j;
  j["n"] = t.n;
  j["query"] = format_query(q);
  if (!q.vary) {
    const auto r = filter_query(t, q);
    j["mode"] = "filter";
    j["total"] = r.total;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i : r.rows) rows.push_back(row_json(t, i));
    return j.dump();
  }
  const auto s = bucket_sweep(t, q);
  j["mode"] = "sweep";
  j["vary"] = property_name(s.vary);
  j["total"] = s.total;
  j["non_empty"] = s.non_empty();
  auto& buckets = j["buckets"] = nlohmann::ordered_json::array();
  for (std::size_t b = 0; b < s.buckets.size(); ++b) {
    const auto& bk = s.buckets[b];
    nlohmann::ordered_json e;
    e["index"] = b;
    e["lo"] = bk.range.lo;
    e["hi"] = bk.range.hi;
    e["total"] = bk.total;
    auto& rows = e["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i : bk.rows) rows.push_back(row_json(t, i));
    buckets.push_back(std::move(e));
  }
  return j.dump();
}

}  // namespace samestats

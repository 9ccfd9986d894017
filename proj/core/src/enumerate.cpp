#include "samestats/enumerate.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

#include "samestats/error.hpp"
#include "samestats/parallel.hpp"

namespace samestats {

namespace {

constexpr std::array<std::uint64_t, kMaxEnumerationOrder + 1> kClassCounts = {
    0, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168};

void check_order(int n) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw UnsupportedOrderError("enumeration supports 1 <= n <= " +
                                std::to_string(kMaxEnumerationOrder) + ", got " + std::to_string(n));
  }
}

}  // namespace

std::uint64_t known_class_count(int n) {
  check_order(n);
  return kClassCounts[static_cast<std::size_t>(n)];
}

std::vector<CanonicalCode> extend_codes(const std::vector<CanonicalCode>& parents,
                                        unsigned threads) {
  if (parents.empty()) throw ValidationError("cannot extend an empty class list");
  const int n = parents.front().order() + 1;
  check_order(n);
  const unsigned workers = resolve_threads(threads);
  std::vector<std::unordered_set<CanonicalCode, CanonicalCodeHash>> seen(workers);

  parallel_for(
      parents.size(), workers,
      [&](unsigned w, std::size_t i) {
        const PackedGraph parent = parents[i].to_packed();
        const std::uint32_t subsets = 1U << (n - 1);
        for (std::uint32_t mask = 0; mask < subsets; ++mask) {
          PackedGraph child = parent;
          child.n = n;
          child.rows[n - 1] = static_cast<std::uint16_t>(mask);
          for (int v = 0; v < n - 1; ++v) {
            if ((mask >> v) & 1U) child.rows[v] |= static_cast<std::uint16_t>(1U << (n - 1));
          }
          seen[w].insert(canonical_form(child));
        }
      },
      16);

  std::vector<CanonicalCode> out;
  std::size_t total = 0;
  for (const auto& s : seen) total += s.size();
  out.reserve(total);
  for (auto& s : seen) {
    out.insert(out.end(), s.begin(), s.end());
    s.clear();
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CanonicalCode> enumerate_codes(int n, unsigned threads) {
  check_order(n);
  PackedGraph single;
  single.n = 1;
  std::vector<CanonicalCode> level{canonical_form(single)};
  for (int k = 2; k <= n; ++k) level = extend_codes(level, threads);
  return level;
}

std::vector<Graph> enumerate_nonisomorphic(int n, unsigned threads) {
  const auto codes = enumerate_codes(n, threads);
  std::vector<Graph> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back(c.to_graph());
  return out;
}

}  // namespace samestats

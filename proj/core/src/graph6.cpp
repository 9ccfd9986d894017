#include "samestats/graph6.hpp"

#include <istream>
#include <ostream>

#include "samestats/error.hpp"

namespace samestats {

namespace {

constexpr int kBias = 63;
constexpr int kMaxShortOrder = 62;
constexpr int kMaxMediumOrder = 258047;
constexpr std::string_view kHeader = ">>graph6<<";

}  // namespace

std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  if (n > kMaxMediumOrder) throw ValidationError("graph6 encoding supports n <= 258047");
  std::string out;
  if (n <= kMaxShortOrder) {
    out.push_back(static_cast<char>(n + kBias));
  } else {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 0x3F) + kBias));
    out.push_back(static_cast<char>(((n >> 6) & 0x3F) + kBias));
    out.push_back(static_cast<char>((n & 0x3F) + kBias));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
  return out;
}

Graph decode_graph6(std::string_view line) {
  std::size_t base = 0;
  if (line.starts_with(kHeader)) {
    line.remove_prefix(kHeader.size());
    base = kHeader.size();
  }
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.empty()) throw ParseError("empty graph6 line", base);

  auto value = [&](std::size_t pos) {
    const int c = static_cast<unsigned char>(line[pos]);
    if (c < kBias || c > 126) throw ParseError("invalid graph6 character", base + pos);
    return c - kBias;
  };

  int n = 0;
  std::size_t pos = 0;
  if (line[0] == '~') {
    if (line.size() >= 2 && line[1] == '~') throw ParseError("graph6 orders above 258047 are not supported", base + 1);
    if (line.size() < 4) throw ParseError("truncated graph6 order", base + line.size());
    n = (value(1) << 12) | (value(2) << 6) | value(3);
    pos = 4;
  } else {
    n = value(0);
    pos = 1;
  }

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  const std::size_t expected = pos + (bits + 5) / 6;
  if (line.size() < expected) throw ParseError("truncated graph6 adjacency data", base + line.size());
  if (line.size() > expected) throw ParseError("trailing characters after graph6 data", base + expected);

  Graph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const std::size_t at = pos + k / 6;
      if ((value(at) >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    const int pad = static_cast<int>(6 - bits % 6);
    if ((value(expected - 1) & ((1 << pad) - 1)) != 0) {
      throw ParseError("non-zero padding bits in graph6 data", base + expected - 1);
    }
  }
  return g;
}

std::vector<Graph> read_graph6(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      try {
        out.push_back(decode_graph6(line));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(out.size() + 1) + ": " + e.what(),
                         offset + e.offset());
      }
    }
    offset += line.size() + 1;
  }
  return out;
}

void write_graph6(std::ostream& out, const std::vector<Graph>& graphs) {
  for (const auto& g : graphs) out << encode_graph6(g) << '\n';
}

}  // namespace samestats

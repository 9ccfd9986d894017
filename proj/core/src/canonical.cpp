#include "samestats/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>

#include "samestats/error.hpp"

namespace samestats {

namespace {

using Rows = std::array<std::uint16_t, kMaxCanonicalOrder>;
constexpr std::size_t kMaxStoredAutomorphisms = 64;

// Ordered partition of the vertex set. `lab` lists vertices by position and
// bit i of `starts` marks the first position of a cell; bit n is a sentinel.
struct Partition {
  std::array<std::uint8_t, kMaxCanonicalOrder> lab{};
  std::uint32_t starts = 0;
};

inline int cell_end(const Partition& p, int start) {
  return start + 1 + std::countr_zero(p.starts >> (start + 1));
}

bool is_discrete(const Partition& p, int n) {
  return std::popcount(p.starts) == n + 1;
}

// Refines to an equitable partition: repeatedly splits every cell by the
// number of neighbours its vertices have in some splitter cell, ordering the
// fragments by that count. Only counts and positions drive the procedure, so
// relabeling the input relabels the result.
void refine(const Rows& rows, int n, Partition& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int ws = 0; ws < n && !changed; ws = cell_end(p, ws)) {
      const int we = cell_end(p, ws);
      std::uint16_t splitter = 0;
      for (int i = ws; i < we; ++i) splitter |= static_cast<std::uint16_t>(1U << p.lab[i]);

      for (int xs = 0; xs < n;) {
        const int xe = cell_end(p, xs);
        if (xe - xs > 1) {
          std::array<std::uint8_t, kMaxCanonicalOrder> count{};
          bool differ = false;
          for (int i = xs; i < xe; ++i) {
            count[i] = static_cast<std::uint8_t>(std::popcount(
                static_cast<unsigned>(rows[p.lab[i]] & splitter)));
            differ |= count[i] != count[xs];
          }
          if (differ) {
            // insertion sort of the cell by count; stability is irrelevant
            for (int i = xs + 1; i < xe; ++i) {
              const auto c = count[i];
              const auto v = p.lab[i];
              int j = i - 1;
              while (j >= xs && count[j] > c) {
                count[j + 1] = count[j];
                p.lab[j + 1] = p.lab[j];
                --j;
              }
              count[j + 1] = c;
              p.lab[j + 1] = v;
            }
            for (int i = xs + 1; i < xe; ++i) {
              if (count[i] != count[i - 1]) p.starts |= 1U << i;
            }
            changed = true;
          }
        }
        xs = xe;
      }
    }
  }
}

using LeafKey = Rows;

// Adjacency rows of the relabeled graph with column 0 in the most significant
// bit, so comparing rows as integers compares the row-major bit string.
LeafKey leaf_key(const Rows& rows, int n, const Partition& p) {
  std::array<std::uint8_t, kMaxCanonicalOrder> pos{};
  for (int i = 0; i < n; ++i) pos[p.lab[i]] = static_cast<std::uint8_t>(i);
  LeafKey key{};
  for (int i = 0; i < n; ++i) {
    unsigned nb = rows[p.lab[i]];
    std::uint16_t r = 0;
    while (nb != 0) {
      const int w = std::countr_zero(nb);
      r |= static_cast<std::uint16_t>(1U << (15 - pos[w]));
      nb &= nb - 1;
    }
    key[i] = r;
  }
  return key;
}

struct Leaf {
  LeafKey key{};
  std::array<std::uint8_t, kMaxCanonicalOrder> lab{};
  std::vector<std::uint8_t> path;
};

class Search {
 public:
  Search(const Rows& rows, int n) : rows_(rows), n_(n) {}

  Leaf run() {
    Partition root;
    for (int i = 0; i < n_; ++i) root.lab[i] = static_cast<std::uint8_t>(i);
    root.starts = 1U | (1U << n_);
    refine(rows_, n_, root);
    descend(root, 0);
    return best_;
  }

 private:
  void descend(const Partition& p, int level) {
    if (is_discrete(p, n_)) {
      visit_leaf(p);
      return;
    }
    int s = 0;
    while (cell_end(p, s) - s == 1) s = cell_end(p, s);
    const int e = cell_end(p, s);

    std::array<std::uint8_t, kMaxCanonicalOrder> cell{};
    const int size = e - s;
    std::copy(p.lab.begin() + s, p.lab.begin() + e, cell.begin());

    std::uint16_t explored = 0;
    for (int c = 0; c < size; ++c) {
      const int v = cell[c];
      if (equivalent_to_explored(v, explored)) continue;
      explored |= static_cast<std::uint16_t>(1U << v);

      Partition child = p;
      int at = s;
      while (child.lab[at] != v) ++at;
      std::swap(child.lab[at], child.lab[s]);
      child.starts |= 1U << (s + 1);
      refine(rows_, n_, child);

      path_.push_back(static_cast<std::uint8_t>(v));
      descend(child, level + 1);
      path_.pop_back();

      if (jump_ >= 0) {
        if (jump_ < level) return;
        jump_ = -1;
      }
    }
  }

  // True if some stored automorphism fixing the current path pointwise maps v
  // into the orbit of an already explored sibling.
  bool equivalent_to_explored(int v, std::uint16_t explored) const {
    if (explored == 0 || autos_.empty()) return false;
    std::array<std::uint8_t, kMaxCanonicalOrder> parent{};
    for (int i = 0; i < n_; ++i) parent[i] = static_cast<std::uint8_t>(i);
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    bool any = false;
    for (const auto& a : autos_) {
      bool fixes = true;
      for (auto u : path_) {
        if (a[u] != u) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      any = true;
      for (int i = 0; i < n_; ++i) {
        const int x = find(i);
        const int y = find(a[i]);
        if (x != y) parent[x] = static_cast<std::uint8_t>(y);
      }
    }
    if (!any) return false;
    const int root = find(v);
    unsigned rest = explored;
    while (rest != 0) {
      const int u = std::countr_zero(rest);
      if (find(u) == root) return true;
      rest &= rest - 1;
    }
    return false;
  }

  void record_automorphism(const Leaf& from, const Partition& to) {
    if (autos_.size() >= kMaxStoredAutomorphisms) return;
    std::array<std::uint8_t, kMaxCanonicalOrder> a{};
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      a[from.lab[i]] = to.lab[i];
      identity &= from.lab[i] == to.lab[i];
    }
    if (!identity) autos_.push_back(a);
  }

  int divergence(const std::vector<std::uint8_t>& other) const {
    std::size_t d = 0;
    while (d < path_.size() && d < other.size() && path_[d] == other[d]) ++d;
    return static_cast<int>(d);
  }

  void visit_leaf(const Partition& p) {
    const LeafKey key = leaf_key(rows_, n_, p);
    if (!have_first_) {
      have_first_ = true;
      first_ = Leaf{key, p.lab, path_};
      best_ = first_;
      return;
    }
    // An equal key means the two leaves differ by an automorphism, which also
    // maps the earlier leaf's subtree at the divergence point onto ours.
    if (key == first_.key) {
      record_automorphism(first_, p);
      jump_ = divergence(first_.path);
      return;
    }
    if (key < best_.key) {
      best_ = Leaf{key, p.lab, path_};
    } else if (key == best_.key) {
      record_automorphism(best_, p);
      jump_ = divergence(best_.path);
    }
  }

  const Rows& rows_;
  int n_;
  std::vector<std::uint8_t> path_;
  std::vector<std::array<std::uint8_t, kMaxCanonicalOrder>> autos_;
  bool have_first_ = false;
  Leaf first_;
  Leaf best_;
  int jump_ = -1;
};

}  // namespace

PackedGraph PackedGraph::from_graph(const Graph& g) {
  if (g.order() > kMaxCanonicalOrder) {
    throw UnsupportedOrderError("packed form supports at most " +
                                std::to_string(kMaxCanonicalOrder) + " vertices, got " +
                                std::to_string(g.order()));
  }
  PackedGraph p;
  p.n = g.order();
  for (int v = 0; v < p.n; ++v) p.rows[v] = static_cast<std::uint16_t>(g.row(v)[0]);
  return p;
}

Graph PackedGraph::to_graph() const {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if ((rows[u] >> v) & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

std::span<const std::uint8_t> CanonicalCode::bytes() const noexcept {
  const std::size_t n = bytes_[0];
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  return {bytes_.data(), 1 + (bits + 7) / 8};
}

std::string CanonicalCode::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : bytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

CanonicalCode CanonicalCode::from_canonical_rows(const PackedGraph& g) {
  CanonicalCode c;
  c.bytes_[0] = static_cast<std::uint8_t>(g.n);
  int k = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j, ++k) {
      if ((g.rows[i] >> j) & 1U) c.bytes_[1 + k / 8] |= static_cast<std::uint8_t>(0x80U >> (k % 8));
    }
  }
  return c;
}

PackedGraph CanonicalCode::to_packed() const {
  PackedGraph g;
  g.n = bytes_[0];
  int k = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j, ++k) {
      if (bytes_[1 + k / 8] & (0x80U >> (k % 8))) {
        g.rows[i] |= static_cast<std::uint16_t>(1U << j);
        g.rows[j] |= static_cast<std::uint16_t>(1U << i);
      }
    }
  }
  return g;
}

CanonicalLabeling canonical_labeling(const PackedGraph& g) {
  if (g.n < 0 || g.n > kMaxCanonicalOrder) {
    throw UnsupportedOrderError("canonical form supports at most " +
                                std::to_string(kMaxCanonicalOrder) + " vertices, got " +
                                std::to_string(g.n));
  }
  CanonicalLabeling out;
  if (g.n == 0) return out;
  const Leaf best = Search(g.rows, g.n).run();
  PackedGraph canon;
  canon.n = g.n;
  out.labeling.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    out.labeling[static_cast<std::size_t>(i)] = best.lab[i];
    for (int j = 0; j < g.n; ++j) {
      if ((g.rows[best.lab[i]] >> best.lab[j]) & 1U) canon.rows[i] |= static_cast<std::uint16_t>(1U << j);
    }
  }
  out.code = CanonicalCode::from_canonical_rows(canon);
  return out;
}

CanonicalCode canonical_form(const PackedGraph& g) { return canonical_labeling(g).code; }

CanonicalCode canonical_form(const Graph& g) { return canonical_form(PackedGraph::from_graph(g)); }

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() > kMaxCanonicalOrder || b.order() > kMaxCanonicalOrder) {
    throw UnsupportedOrderError("isomorphism test supports at most 16 vertices");
  }
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  if (a.degree_sequence() != b.degree_sequence()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::size_t CanonicalCodeHash::operator()(const CanonicalCode& c) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : c.bytes()) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace samestats

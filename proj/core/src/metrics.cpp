#include "samestats/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>

#include <json.hpp>

#include "samestats/error.hpp"
#include "samestats/properties.hpp"
#include "samestats/rng.hpp"

namespace samestats {

namespace {

void require_rows(const Dataset& ds, std::size_t min_rows, std::string_view who) {
  if (ds.rows() < min_rows) {
    throw ValidationError(std::string(who) + " needs at least " + std::to_string(min_rows) + " rows, got " +
                          std::to_string(ds.rows()));
  }
}

void require_same_shape(const Dataset& a, const Dataset& b, std::string_view who) {
  if (a.dim != b.dim) throw ValidationError(std::string(who) + ": datasets differ in dimension");
  if (a.n != 0 && b.n != 0 && a.n != b.n) {
    throw ValidationError(std::string(who) + ": datasets are for different graph orders");
  }
}

std::string column_label(int dim, int j) {
  if (dim == static_cast<int>(kNumProperties)) return std::string(property_name(kAllProperties[static_cast<std::size_t>(j)]));
  return "column " + std::to_string(j);
}

// First k entries of a uniform random permutation of [0, size).
std::vector<std::size_t> draw_without_replacement(std::size_t size, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  k = std::min(k, size);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(size - i - 1)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

std::vector<double> column(const Dataset& ds, int j) {
  std::vector<double> c(ds.rows());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ds.at(i, j);
  return c;
}

struct Box {
  std::vector<double> lo, hi;
};

template <typename Rows>
Box bounding_box(const Dataset& ds, const Rows& rows) {
  Box b{std::vector<double>(static_cast<std::size_t>(ds.dim), std::numeric_limits<double>::infinity()),
        std::vector<double>(static_cast<std::size_t>(ds.dim), -std::numeric_limits<double>::infinity())};
  for (std::size_t i : rows) {
    for (int j = 0; j < ds.dim; ++j) {
      const double x = ds.at(i, j);
      b.lo[static_cast<std::size_t>(j)] = std::min(b.lo[static_cast<std::size_t>(j)], x);
      b.hi[static_cast<std::size_t>(j)] = std::max(b.hi[static_cast<std::size_t>(j)], x);
    }
  }
  return b;
}

struct AllRows {
  std::size_t n;
  struct It {
    std::size_t i;
    std::size_t operator*() const { return i; }
    It& operator++() {
      ++i;
      return *this;
    }
    bool operator!=(const It& o) const { return i != o.i; }
  };
  It begin() const { return {0}; }
  It end() const { return {n}; }
};

// nullopt when the truth box has zero extent in every column.
std::optional<double> box_ratio(const Box& sample, const Box& truth) {
  double ratio = 1.0;
  bool any = false;
  for (std::size_t j = 0; j < truth.lo.size(); ++j) {
    const double t = truth.hi[j] - truth.lo[j];
    if (!(t > 0.0)) continue;
    any = true;
    ratio *= (sample.hi[j] - sample.lo[j]) / t;
  }
  if (!any) return std::nullopt;
  return ratio;
}

std::vector<double> singular_values_desc(const Dataset& ds) {
  const auto e = sym_eig(fit_gaussian(ds).cov);
  std::vector<double> sv(e.values.size());
  for (std::size_t k = 0; k < sv.size(); ++k) sv[k] = std::sqrt(std::max(0.0, e.values[k]));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

SymMatrix ridged(const SymMatrix& m) {
  SymMatrix r = m;
  for (int i = 0; i < r.dim(); ++i) r.at(i, i) += kCovarianceRidge;
  return r;
}

SymEigen positive_definite_eig(const SymMatrix& m, std::string_view which) {
  auto e = sym_eig(m);
  if (!(e.values.front() > 0.0)) {
    std::string cols;
    for (int j = 0; j < m.dim(); ++j) {
      if (m(j, j) <= 2.0 * kCovarianceRidge) cols += (cols.empty() ? "" : ", ") + column_label(m.dim(), j);
    }
    if (cols.empty()) cols = "linear combination of columns";
    throw NumericalError(std::string(which) + " covariance is singular after regularization (" + cols + ")");
  }
  return e;
}

double log_det(const SymEigen& e) {
  double s = 0.0;
  for (double v : e.values) s += std::log(v);
  return s;
}

}  // namespace

Dataset Dataset::from_rows(int dim, const std::vector<std::vector<double>>& rows) {
  Dataset ds;
  ds.dim = dim;
  ds.values.reserve(rows.size() * static_cast<std::size_t>(dim));
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(dim)) throw ValidationError("row has the wrong dimension");
    ds.values.insert(ds.values.end(), r.begin(), r.end());
  }
  return ds;
}

Dataset Dataset::from_table(const PropertyTable& t, std::string provenance) {
  Dataset ds;
  ds.n = t.n;
  ds.dim = static_cast<int>(kNumProperties);
  ds.provenance = std::move(provenance);
  ds.values.reserve(t.size() * kNumProperties);
  for (const auto& row : t.normalized) ds.values.insert(ds.values.end(), row.begin(), row.end());
  return ds;
}

Dataset Dataset::from_table(const PropertyTable& t, double apl_divisor, std::string provenance) {
  Dataset ds;
  ds.n = t.n;
  ds.dim = static_cast<int>(kNumProperties);
  ds.provenance = std::move(provenance);
  ds.values.reserve(t.size() * kNumProperties);
  for (const auto& raw : t.raw) {
    const auto row = normalize_one(raw, t.n, apl_divisor);
    ds.values.insert(ds.values.end(), row.begin(), row.end());
  }
  return ds;
}

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices) {
  Dataset out;
  out.n = ds.n;
  out.dim = ds.dim;
  out.provenance = ds.provenance;
  out.values.reserve(indices.size() * static_cast<std::size_t>(ds.dim));
  for (std::size_t i : indices) {
    const auto r = ds.row(i);
    out.values.insert(out.values.end(), r.begin(), r.end());
  }
  return out;
}

Correlation correlation_matrix(const Dataset& ds) {
  require_rows(ds, 2, "correlation_matrix");
  const int d = ds.dim;
  const std::size_t rows = ds.rows();
  std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
  Correlation out{SymMatrix(d), std::vector<bool>(static_cast<std::size_t>(d), false)};
  const Box box = bounding_box(ds, AllRows{rows});
  for (int j = 0; j < d; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    out.zero_variance[ju] = box.lo[ju] == box.hi[ju];
    for (std::size_t i = 0; i < rows; ++i) mean[ju] += ds.at(i, j);
    mean[ju] /= static_cast<double>(rows);
  }
  SymMatrix s(d);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int a = 0; a < d; ++a) {
      const double xa = ds.at(i, a) - mean[static_cast<std::size_t>(a)];
      for (int b = a; b < d; ++b) s.at(a, b) += xa * (ds.at(i, b) - mean[static_cast<std::size_t>(b)]);
    }
  }
  for (int a = 0; a < d; ++a) {
    out.r.at(a, a) = 1.0;
    for (int b = a + 1; b < d; ++b) {
      if (out.zero_variance[static_cast<std::size_t>(a)] || out.zero_variance[static_cast<std::size_t>(b)]) continue;
      const double r = s(a, b) / std::sqrt(s(a, a) * s(b, b));
      out.r.at(a, b) = std::clamp(r, -1.0, 1.0);
    }
  }
  return out;
}

std::vector<ColumnSummary> summarize_distribution(const Dataset& ds) {
  require_rows(ds, 1, "summarize_distribution");
  std::vector<ColumnSummary> out(static_cast<std::size_t>(ds.dim));
  for (int j = 0; j < ds.dim; ++j) {
    auto& c = out[static_cast<std::size_t>(j)];
    c.min = c.max = ds.at(0, j);
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
      const double x = ds.at(i, j);
      c.min = std::min(c.min, x);
      c.max = std::max(c.max, x);
      ++k;
      const double delta = x - mean;
      mean += delta / static_cast<double>(k);
      m2 += delta * (x - mean);
    }
    c.mean = mean;
    c.std = k > 1 ? std::sqrt(m2 / static_cast<double>(k - 1)) : 0.0;
  }
  return out;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> ks_statistic(const Dataset& sample, const Dataset& truth, const KsOptions& opt) {
  require_rows(sample, 1, "ks_statistic");
  require_rows(truth, 1, "ks_statistic");
  require_same_shape(sample, truth, "ks_statistic");
  if (opt.repeats < 1) throw ValidationError("ks_statistic: repeats must be >= 1");
  if (!(opt.fraction > 0.0 && opt.fraction <= 1.0)) throw ValidationError("ks_statistic: fraction must lie in (0,1]");
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(opt.fraction * static_cast<double>(truth.rows()))));
  std::vector<std::vector<double>> sample_cols(static_cast<std::size_t>(sample.dim));
  for (int j = 0; j < sample.dim; ++j) sample_cols[static_cast<std::size_t>(j)] = column(sample, j);
  std::vector<double> out(static_cast<std::size_t>(sample.dim), 0.0);
  for (int r = 0; r < opt.repeats; ++r) {
    Rng rng = Rng::for_stream(opt.seed, static_cast<std::uint64_t>(r));
    const auto idx = draw_without_replacement(truth.rows(), k, rng);
    const Dataset sub = subset(truth, idx);
    for (int j = 0; j < sample.dim; ++j) {
      out[static_cast<std::size_t>(j)] += ks_two_sample(sample_cols[static_cast<std::size_t>(j)], column(sub, j));
    }
  }
  for (double& x : out) x /= opt.repeats;
  return out;
}

Gaussian fit_gaussian(const Dataset& ds) {
  require_rows(ds, static_cast<std::size_t>(ds.dim) + 2, "fit_gaussian");
  const int d = ds.dim;
  const std::size_t rows = ds.rows();
  Gaussian g{std::vector<double>(static_cast<std::size_t>(d), 0.0), SymMatrix(d)};
  for (std::size_t i = 0; i < rows; ++i) {
    for (int j = 0; j < d; ++j) g.mean[static_cast<std::size_t>(j)] += ds.at(i, j);
  }
  for (double& m : g.mean) m /= static_cast<double>(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int a = 0; a < d; ++a) {
      const double xa = ds.at(i, a) - g.mean[static_cast<std::size_t>(a)];
      for (int b = a; b < d; ++b) g.cov.at(a, b) += xa * (ds.at(i, b) - g.mean[static_cast<std::size_t>(b)]);
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) g.cov.at(a, b) /= static_cast<double>(rows - 1);
  }
  return g;
}

double gaussian_kl(const Gaussian& p0, const Gaussian& p1) {
  const int d = p1.cov.dim();
  if (p0.cov.dim() != d || p0.mean.size() != static_cast<std::size_t>(d) ||
      p1.mean.size() != static_cast<std::size_t>(d)) {
    throw ValidationError("gaussian_kl: dimension mismatch");
  }
  const SymMatrix s0 = ridged(p0.cov);
  const SymMatrix s1 = ridged(p1.cov);
  const auto e0 = positive_definite_eig(s0, "sample");
  const auto e1 = positive_definite_eig(s1, "truth");
  const SymMatrix inv1 = eigen_apply(e1, [](double v) { return 1.0 / v; });
  double tr = 0.0;
  double quad = 0.0;
  for (int i = 0; i < d; ++i) {
    const double di = p0.mean[static_cast<std::size_t>(i)] - p1.mean[static_cast<std::size_t>(i)];
    for (int j = 0; j < d; ++j) {
      const double dj = p0.mean[static_cast<std::size_t>(j)] - p1.mean[static_cast<std::size_t>(j)];
      tr += inv1(i, j) * s0(i, j);
      quad += di * inv1(i, j) * dj;
    }
  }
  const double kl = 0.5 * (tr + quad - d + log_det(e1) - log_det(e0));
  if (!std::isfinite(kl)) throw NumericalError("gaussian_kl: non-finite result");
  return std::max(0.0, kl);
}

double gaussian_em(const Gaussian& p0, const Gaussian& p1) {
  const int d = p1.cov.dim();
  if (p0.cov.dim() != d || p0.mean.size() != static_cast<std::size_t>(d) ||
      p1.mean.size() != static_cast<std::size_t>(d)) {
    throw ValidationError("gaussian_em: dimension mismatch");
  }
  double dm = 0.0;
  for (int i = 0; i < d; ++i) {
    const double di = p0.mean[static_cast<std::size_t>(i)] - p1.mean[static_cast<std::size_t>(i)];
    dm += di * di;
  }
  const SymMatrix root1 = eigen_apply(sym_eig(p1.cov), [](double v) { return std::sqrt(std::max(0.0, v)); });
  const auto inner = sym_eig(sandwich(root1, p0.cov));
  double cross = 0.0;
  for (double v : inner.values) cross += std::sqrt(std::max(0.0, v));
  const double em = dm + p0.cov.trace() + p1.cov.trace() - 2.0 * cross;
  if (!std::isfinite(em)) throw NumericalError("gaussian_em: non-finite result");
  return std::max(0.0, em);
}

double gaussian_kl(const Dataset& sample, const Dataset& truth) {
  require_same_shape(sample, truth, "gaussian_kl");
  return gaussian_kl(fit_gaussian(sample), fit_gaussian(truth));
}

double gaussian_em(const Dataset& sample, const Dataset& truth) {
  require_same_shape(sample, truth, "gaussian_em");
  return gaussian_em(fit_gaussian(sample), fit_gaussian(truth));
}

double point_diameter(const Dataset& ds, std::size_t subsample, int repeats, std::uint64_t seed) {
  require_rows(ds, 1, "point_diameter");
  auto exact = [&](const Dataset& x) {
    double best = 0.0;
    const std::size_t rows = x.rows();
    for (std::size_t a = 0; a < rows; ++a) {
      const auto ra = x.row(a);
      for (std::size_t b = a + 1; b < rows; ++b) {
        const auto rb = x.row(b);
        double s = 0.0;
        for (std::size_t j = 0; j < ra.size(); ++j) {
          const double t = ra[j] - rb[j];
          s += t * t;
        }
        best = std::max(best, s);
      }
    }
    return std::sqrt(best);
  };
  if (ds.rows() <= subsample) return exact(ds);
  if (repeats < 1) throw ValidationError("point_diameter: repeats must be >= 1");
  double total = 0.0;
  for (int r = 0; r < repeats; ++r) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(r));
    const auto idx = draw_without_replacement(ds.rows(), subsample, rng);
    total += exact(subset(ds, idx));
  }
  return total / repeats;
}

double coverage_diameter_ratio(const Dataset& sample, const Dataset& truth, const DiameterOptions& opt) {
  require_same_shape(sample, truth, "coverage_diameter_ratio");
  const double t = point_diameter(truth, opt.subsample, opt.repeats, splitmix64(opt.seed));
  if (t == 0.0) return 0.0;
  return point_diameter(sample, opt.subsample, opt.repeats, opt.seed) / t;
}

double bbox_ratio(const Dataset& sample, const Dataset& truth) {
  require_rows(sample, 1, "bbox_ratio");
  require_rows(truth, 1, "bbox_ratio");
  require_same_shape(sample, truth, "bbox_ratio");
  const auto r = box_ratio(bounding_box(sample, AllRows{sample.rows()}), bounding_box(truth, AllRows{truth.rows()}));
  if (!r) throw ValidationError("bbox_ratio: the truth bounding box is a single point");
  return *r;
}

double split_bbox_ratio(const Dataset& sample, const Dataset& truth, int parts) {
  require_rows(truth, 1, "split_bbox_ratio");
  require_same_shape(sample, truth, "split_bbox_ratio");
  if (parts < 2) throw ValidationError("split_bbox_ratio: parts must be >= 2");
  if (static_cast<double>(truth.dim) * std::log2(static_cast<double>(parts)) > 62.0) {
    throw ValidationError("split_bbox_ratio: too many cells");
  }
  const Box box = bounding_box(truth, AllRows{truth.rows()});
  const int d = truth.dim;

  // Cell of a point, or nullopt if it lies outside the truth box.
  auto cell_of = [&](std::span<const double> x) -> std::optional<std::uint64_t> {
    std::uint64_t key = 0;
    for (int j = d - 1; j >= 0; --j) {
      const auto ju = static_cast<std::size_t>(j);
      const double lo = box.lo[ju];
      const double ext = box.hi[ju] - lo;
      if (x[ju] < lo || x[ju] > box.hi[ju]) return std::nullopt;
      int c = 0;
      if (ext > 0.0) c = std::min(parts - 1, static_cast<int>(std::floor((x[ju] - lo) / ext * parts)));
      key = key * static_cast<std::uint64_t>(parts) + static_cast<std::uint64_t>(c);
    }
    return key;
  };

  std::map<std::uint64_t, std::vector<std::size_t>> truth_cells;
  for (std::size_t i = 0; i < truth.rows(); ++i) truth_cells[*cell_of(truth.row(i))].push_back(i);
  std::map<std::uint64_t, std::vector<std::size_t>> sample_cells;
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    if (auto c = cell_of(sample.row(i))) sample_cells[*c].push_back(i);
  }

  double total = 0.0;
  std::size_t cells = 0;
  for (const auto& [key, rows] : truth_cells) {
    if (rows.size() < 2) continue;
    const Box tb = bounding_box(truth, rows);
    const auto it = sample_cells.find(key);
    if (it == sample_cells.end()) {
      if (!box_ratio(tb, tb)) continue;
      ++cells;
      continue;
    }
    const auto r = box_ratio(bounding_box(sample, it->second), tb);
    if (!r) continue;
    total += *r;
    ++cells;
  }
  return cells == 0 ? 0.0 : total / static_cast<double>(cells);
}

double robust_ellipse_ratio(const Dataset& sample, const Dataset& truth) {
  require_same_shape(sample, truth, "robust_ellipse_ratio");
  const auto ts = singular_values_desc(truth);
  const auto ss = singular_values_desc(sample);
  double log_ratio = 0.0;
  std::size_t kept = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 1e-9)) break;
    if (ss[k] <= 0.0) return 0.0;
    log_ratio += std::log(ss[k]) - std::log(ts[k]);
    ++kept;
  }
  if (kept == 0) throw ValidationError("robust_ellipse_ratio: every truth singular value is degenerate");
  return std::exp(log_ratio);
}

RepeatStats repeat_stats(std::span<const double> values) {
  RepeatStats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return s;
}

const MetricEntry* MetricReport::find(std::string_view measure) const {
  for (const auto& e : entries) {
    if (e.measure == measure) return &e;
  }
  return nullptr;
}

std::string MetricReport::to_json() const {
  nlohmann::ordered_json j;
  j["sample"] = sample;
  j["truth"] = truth;
  j["n"] = n;
  j["sample_rows"] = sample_rows;
  j["truth_rows"] = truth_rows;
  auto& measures = j["measures"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json m;
    m["measure"] = e.measure;
    if (e.values.size() == 1) {
      m["value"] = e.values.front();
    } else {
      m["values"] = e.values;
    }
    if (e.repeats) {
      m["repeats"] = {{"count", e.repeats->count},
                      {"mean", e.repeats->mean},
                      {"min", e.repeats->min},
                      {"max", e.repeats->max}};
    }
    measures.push_back(std::move(m));
  }
  return j.dump(2);
}

std::string MetricReport::to_csv() const {
  std::string out = "measure,index,value,mean,min,max\n";
  char buf[160];
  for (const auto& e : entries) {
    for (std::size_t i = 0; i < e.values.size(); ++i) {
      if (e.repeats) {
        std::snprintf(buf, sizeof buf, ",%zu,%.12g,%.12g,%.12g,%.12g\n", i, e.values[i], e.repeats->mean,
                      e.repeats->min, e.repeats->max);
      } else {
        std::snprintf(buf, sizeof buf, ",%zu,%.12g,,,\n", i, e.values[i]);
      }
      out += e.measure;
      out += buf;
    }
  }
  return out;
}

}  // namespace samestats

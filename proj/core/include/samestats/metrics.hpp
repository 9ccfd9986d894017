#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "samestats/linalg.hpp"
#include "samestats/table.hpp"

namespace samestats {

/// A point cloud in R^dim, row-major. Built from normalized property tables
/// (dim = 10), but every measure works for any dimension.
struct Dataset {
  /// Graph order the rows were computed for; 0 if not graph-derived.
  int n = 0;
  int dim = 0;
  std::vector<double> values;
  /// "ground-truth" or "<model> seed <s>", free text.
  std::string provenance;

  std::size_t rows() const noexcept {
    return dim == 0 ? 0 : values.size() / static_cast<std::size_t>(dim);
  }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  double at(std::size_t i, int j) const { return values[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)]; }

  static Dataset from_rows(int dim, const std::vector<std::vector<double>>& rows);
  static Dataset from_table(const PropertyTable& t, std::string provenance);
  /// Rows normalized with an explicit apl divisor instead of the table's own.
  static Dataset from_table(const PropertyTable& t, double apl_divisor, std::string provenance);
};

/// Rows `indices` of `ds`, in that order.
Dataset subset(const Dataset& ds, std::span<const std::size_t> indices);

struct Correlation {
  SymMatrix r;
  /// Columns with zero variance; their off-diagonal entries are 0.
  std::vector<bool> zero_variance;
};
/// Pearson correlations between columns. Requires >= 2 rows.
Correlation correlation_matrix(const Dataset& ds);

struct ColumnSummary {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  /// Sample standard deviation (divisor rows - 1); 0 for a single row.
  double std = 0.0;
};
std::vector<ColumnSummary> summarize_distribution(const Dataset& ds);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b| of two samples.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct KsOptions {
  int repeats = 10;
  double fraction = 0.1;
  std::uint64_t seed = 0;
};
/// Per column, the KS statistic between the full sample and a uniform
/// `fraction` subsample of the truth (without replacement), averaged over
/// repeats. Repeat r draws from Rng::for_stream(seed, r).
std::vector<double> ks_statistic(const Dataset& sample, const Dataset& truth, const KsOptions& opt = {});

struct Gaussian {
  std::vector<double> mean;
  SymMatrix cov;
};
/// Mean and unbiased covariance. Requires at least dim + 2 rows.
Gaussian fit_gaussian(const Dataset& ds);

inline constexpr double kCovarianceRidge = 1e-9;

/// KL(N0 || N1) with both covariances regularized by kCovarianceRidge * I.
/// Throws NumericalError, naming the degenerate columns, when a regularized
/// covariance is still not positive definite.
double gaussian_kl(const Gaussian& p0, const Gaussian& p1);
/// Squared 2-Wasserstein distance between two Gaussians.
double gaussian_em(const Gaussian& p0, const Gaussian& p1);

/// N0 is fitted to `sample`, N1 to `truth`.
double gaussian_kl(const Dataset& sample, const Dataset& truth);
double gaussian_em(const Dataset& sample, const Dataset& truth);

/// Largest pairwise Euclidean distance. Exact when the dataset has at most
/// `subsample` rows, otherwise the mean over `repeats` uniform subsamples of
/// that size.
double point_diameter(const Dataset& ds, std::size_t subsample, int repeats, std::uint64_t seed);

struct DiameterOptions {
  std::size_t subsample = 5000;
  int repeats = 10;
  std::uint64_t seed = 0;
};
/// point_diameter(sample) / point_diameter(truth); 0 if the truth diameter
/// is 0.
double coverage_diameter_ratio(const Dataset& sample, const Dataset& truth, const DiameterOptions& opt = {});

/// Product of per-column extents of the sample over that of the truth, over
/// the columns where the truth has a non-zero extent. Throws ValidationError
/// if there is no such column.
double bbox_ratio(const Dataset& sample, const Dataset& truth);

/// The truth bounding box is cut into parts^dim equal cells. Every cell with
/// at least two truth points whose box is not a single point contributes
/// bbox_ratio(sample in cell, truth in cell), or 0 when no sample point
/// falls in it; the result is the mean contribution.
double split_bbox_ratio(const Dataset& sample, const Dataset& truth, int parts = 2);

/// Ratio of the products of covariance singular values (square roots of the
/// eigenvalues, largest first) over the leading columns where the truth
/// value exceeds 1e-9. Requires dim + 2 rows in each dataset.
double robust_ellipse_ratio(const Dataset& sample, const Dataset& truth);

struct RepeatStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};
RepeatStats repeat_stats(std::span<const double> values);

/// One measure of a report: a scalar (values.size() == 1) or one value per
/// property, optionally with spread over repeated samples.
struct MetricEntry {
  std::string measure;
  std::vector<double> values;
  std::optional<RepeatStats> repeats;
};

struct MetricReport {
  std::string sample;
  std::string truth;
  int n = 0;
  std::size_t sample_rows = 0;
  std::size_t truth_rows = 0;
  std::vector<MetricEntry> entries;

  const MetricEntry* find(std::string_view measure) const;
  std::string to_json() const;
  /// Columns: measure,index,value,mean,min,max.
  std::string to_csv() const;
};

}  // namespace samestats

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "samestats/generators.hpp"
#include "samestats/graph.hpp"
#include "samestats/table.hpp"

namespace samestats {

inline constexpr int kSchemaVersion = 1;

/// Library version, also recorded in manifests.
std::string_view tool_version();

enum class DatasetKind { kGroundTruth, kSample };

std::string_view kind_name(DatasetKind k);  // "ground-truth", "sample"

struct DatasetManifest {
  DatasetKind kind = DatasetKind::kGroundTruth;
  int n = 0;
  std::size_t count = 0;
  /// Set for samples.
  std::optional<GeneratorSpec> spec;
  /// Per-graph generator parameters (samples only), aligned with the rows.
  std::vector<GraphParams> params;
  std::string graphs_file = "graphs.g6";
  std::string properties_file = "properties.csv";
  /// "sha256:<hex>" over the graph6 file followed by the property CSV.
  std::string digest;
  double apl_divisor = 1.0;
  std::string tool_version;
  int schema_version = kSchemaVersion;

  std::string to_json() const;
  /// Throws CorruptDatasetError on malformed JSON or an unknown schema.
  static DatasetManifest from_json(std::string_view text);
};

/// data/gt/n{N}
std::filesystem::path ground_truth_dir(const std::filesystem::path& root, int n);
/// data/samples/{model}/n{N}/seed{S}
std::filesystem::path sample_dir(const std::filesystem::path& root, Model model, int n, std::uint64_t seed);
/// Directory of a sample spec. Extends the seed component with "-c{count}"
/// when the count differs from the number of classes on n vertices and with
/// "-p{p}" for ER with p != 1/2, so differently sized samples of one seed
/// do not overwrite each other.
std::filesystem::path sample_dir(const std::filesystem::path& root, const GeneratorSpec& spec);

inline constexpr std::string_view kManifestName = "manifest.json";

/// Writes graphs.g6, properties.csv and manifest.json into `dir` (created if
/// needed), each through a temporary file and a rename. `manifest` supplies
/// kind, spec and params; count, digest and version are filled in. Throws
/// ValidationError if the table is empty or not aligned with `graphs`, and
/// StorageError on I/O failure.
DatasetManifest write_dataset(const std::filesystem::path& dir, const std::vector<Graph>& graphs,
                              const PropertyTable& table, DatasetManifest manifest);

struct ReadOptions {
  /// Recompute the properties of this many random rows and compare them to
  /// the stored values within 1e-9; 0 disables the check.
  std::size_t spot_check_rows = 0;
  std::uint64_t seed = 0;
  /// Decoding every graph6 line is skipped when false; `graphs` stays empty.
  bool load_graphs = true;
};

struct StoredDataset {
  DatasetManifest manifest;
  std::vector<Graph> graphs;
  PropertyTable table;
};

/// Throws MissingDatasetError when `dir` has no manifest, CorruptDatasetError
/// when the digest, counts or spot check disagree.
StoredDataset read_dataset(const std::filesystem::path& dir, const ReadOptions& opt = {});

/// Reads and verifies only the manifest and digest.
DatasetManifest verify_dataset(const std::filesystem::path& dir);

/// Property CSV text for a table (header plus one line per row, 12
/// significant digits).
std::string format_property_csv(const PropertyTable& t);
/// Parses format_property_csv output. Throws ParseError.
PropertyTable parse_property_csv(std::string_view text, int n, double apl_divisor);

struct EnsureResult {
  StoredDataset data;
  std::filesystem::path dir;
  /// True when the dataset was read back instead of computed.
  bool cached = false;
};

/// Reads the cached ground truth for n (3 <= n <= 10), or enumerates it,
/// computes its property table and stores it. A cached copy whose digest
/// does not verify is rebuilt.
EnsureResult ensure_ground_truth(const std::filesystem::path& root, int n, unsigned threads = 1,
                                 std::ostream* progress = nullptr);

/// Same for a generated sample; normalized columns use the sample's own apl
/// maximum.
EnsureResult ensure_sample(const std::filesystem::path& root, const GeneratorSpec& spec, unsigned threads = 1,
                           std::ostream* progress = nullptr);

struct CatalogEntry {
  std::filesystem::path dir;
  DatasetManifest manifest;
};
/// Every readable manifest below root/gt and root/samples, ground truths
/// first by n, then samples by (model, n, seed). Unreadable manifests are
/// skipped and their paths returned in `skipped`.
std::vector<CatalogEntry> list_datasets(const std::filesystem::path& root,
                                        std::vector<std::filesystem::path>* skipped = nullptr);

}  // namespace samestats

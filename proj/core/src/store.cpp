#include "samestats/store.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/graph6.hpp"
#include "samestats/rng.hpp"

#ifndef SAMESTATS_VERSION
#define SAMESTATS_VERSION "0.0.0"
#endif

namespace samestats {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string sha256_hex(std::initializer_list<std::string_view> parts) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw StorageError("cannot allocate a digest context");
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1;
  for (auto p : parts) ok = ok && EVP_DigestUpdate(ctx, p.data(), p.size()) == 1;
  ok = ok && EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw StorageError("sha256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string dataset_digest(std::string_view graphs, std::string_view csv) {
  return "sha256:" + sha256_hex({graphs, csv});
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CorruptDatasetError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_atomic(const fs::path& target, std::string_view content) {
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot create " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw StorageError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw StorageError("cannot rename into " + target.string());
  }
}

std::size_t count_lines(std::string_view s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void append_g(std::string& out, double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.12g", x);
  out.append(buf, static_cast<std::size_t>(len));
}

json spec_json(const GeneratorSpec& s) {
  json j;
  j["model"] = model_name(s.model);
  j["n"] = s.n;
  j["count"] = s.count;
  j["seed"] = s.seed;
  if (s.model == Model::kEr) j["p"] = s.p;
  return j;
}

GeneratorSpec spec_from_json(const json& j) {
  GeneratorSpec s;
  const auto m = parse_model(j.at("model").get<std::string>());
  if (!m) throw CorruptDatasetError("manifest names an unknown model");
  s.model = *m;
  s.n = j.at("n").get<int>();
  s.count = j.at("count").get<std::size_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("p")) s.p = j.at("p").get<double>();
  return s;
}

json params_json(const GraphParams& p) {
  json j = json::object();
  if (p.p) j["p"] = *p.p;
  if (p.k) j["k"] = *p.k;
  if (p.m) j["m"] = *p.m;
  if (p.radius) j["radius"] = *p.radius;
  return j;
}

GraphParams params_from_json(const json& j) {
  GraphParams p;
  if (j.contains("p")) p.p = j.at("p").get<double>();
  if (j.contains("k")) p.k = j.at("k").get<int>();
  if (j.contains("m")) p.m = j.at("m").get<int>();
  if (j.contains("radius")) p.radius = j.at("radius").get<double>();
  return p;
}

}  // namespace

std::string_view tool_version() { return SAMESTATS_VERSION; }

std::string_view kind_name(DatasetKind k) {
  return k == DatasetKind::kGroundTruth ? "ground-truth" : "sample";
}

std::string DatasetManifest::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["tool_version"] = tool_version;
  j["kind"] = kind_name(kind);
  j["n"] = n;
  j["count"] = count;
  if (spec) j["spec"] = spec_json(*spec);
  j["files"] = {{"graphs", graphs_file}, {"properties", properties_file}};
  j["digest"] = digest;
  j["apl_divisor"] = apl_divisor;
  if (!params.empty()) {
    auto& arr = j["params"] = json::array();
    for (const auto& p : params) arr.push_back(params_json(p));
  }
  return j.dump(2) + "\n";
}

DatasetManifest DatasetManifest::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    DatasetManifest m;
    m.schema_version = j.at("schema_version").get<int>();
    if (m.schema_version != kSchemaVersion) {
      throw CorruptDatasetError("unsupported manifest schema version " + std::to_string(m.schema_version));
    }
    m.tool_version = j.at("tool_version").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "ground-truth") {
      m.kind = DatasetKind::kGroundTruth;
    } else if (kind == "sample") {
      m.kind = DatasetKind::kSample;
    } else {
      throw CorruptDatasetError("unknown dataset kind '" + kind + "'");
    }
    m.n = j.at("n").get<int>();
    m.count = j.at("count").get<std::size_t>();
    if (j.contains("spec")) m.spec = spec_from_json(j.at("spec"));
    m.graphs_file = j.at("files").at("graphs").get<std::string>();
    m.properties_file = j.at("files").at("properties").get<std::string>();
    m.digest = j.at("digest").get<std::string>();
    m.apl_divisor = j.at("apl_divisor").get<double>();
    if (j.contains("params")) {
      for (const auto& p : j.at("params")) m.params.push_back(params_from_json(p));
    }
    return m;
  } catch (const json::exception& e) {
    throw CorruptDatasetError(std::string("malformed manifest: ") + e.what());
  }
}

fs::path ground_truth_dir(const fs::path& root, int n) { return root / "gt" / ("n" + std::to_string(n)); }

fs::path sample_dir(const fs::path& root, Model model, int n, std::uint64_t seed) {
  return root / "samples" / std::string(model_name(model)) / ("n" + std::to_string(n)) /
         ("seed" + std::to_string(seed));
}

fs::path sample_dir(const fs::path& root, const GeneratorSpec& spec) {
  fs::path dir = sample_dir(root, spec.model, spec.n, spec.seed);
  std::string leaf = dir.filename().string();
  const bool full = spec.n >= 1 && spec.n <= kMaxEnumerationOrder && spec.count == known_class_count(spec.n);
  if (!full) leaf += "-c" + std::to_string(spec.count);
  if (spec.model == Model::kEr && spec.p != 0.5) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "-p%.12g", spec.p);
    leaf += buf;
  }
  return dir.parent_path() / leaf;
}

std::string format_property_csv(const PropertyTable& t) {
  std::string out = "graph6";
  for (Property p : kAllProperties) out += "," + std::string(property_name(p));
  out += ",r_undefined,connected";
  for (Property p : kAllProperties) out += ",n_" + std::string(property_name(p));
  out += '\n';
  out.reserve(out.size() + t.size() * 260);
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += t.graph6[i];
    for (double v : t.raw[i].values()) {
      out += ',';
      append_g(out, v);
    }
    out += t.raw[i].r_undefined ? ",1" : ",0";
    out += t.raw[i].connected ? ",1" : ",0";
    for (double v : t.normalized[i]) {
      out += ',';
      append_g(out, v);
    }
    out += '\n';
  }
  return out;
}

PropertyTable parse_property_csv(std::string_view text, int n, double apl_divisor) {
  PropertyTable t;
  t.n = n;
  t.apl_divisor = apl_divisor;
  constexpr std::size_t kFields = 1 + kNumProperties + 2 + kNumProperties;
  std::size_t pos = text.find('\n');
  if (pos == std::string_view::npos || text.substr(0, 7) != "graph6,") throw ParseError("missing CSV header", 0);
  ++pos;
  std::array<std::string_view, kFields> f;
  while (pos < text.size()) {
    const std::size_t line_start = pos;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    std::size_t k = 0;
    std::size_t s = 0;
    for (;;) {
      const auto c = line.find(',', s);
      if (k == kFields) throw ParseError("too many CSV fields", line_start + s);
      f[k++] = line.substr(s, c == std::string_view::npos ? std::string_view::npos : c - s);
      if (c == std::string_view::npos) break;
      s = c + 1;
    }
    if (k != kFields) throw ParseError("expected " + std::to_string(kFields) + " CSV fields", line_start);
    auto num = [&](std::size_t idx) {
      double v = 0.0;
      const auto sv = f[idx];
      auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
      if (ec != std::errc() || ptr != sv.data() + sv.size() || sv.empty()) {
        throw ParseError("bad number '" + std::string(sv) + "'", static_cast<std::size_t>(sv.data() - text.data()));
      }
      return v;
    };
    PropertyVector pv;
    pv.order = n;
    pv.acc = num(1);
    pv.gcc = num(2);
    pv.scc = num(3);
    pv.apl = num(4);
    pv.r = num(5);
    pv.diam = num(6);
    pv.den = num(7);
    pv.rt = num(8);
    pv.cv = num(9);
    pv.ce = num(10);
    pv.r_undefined = f[11] == "1";
    pv.connected = f[12] == "1";
    NormalizedVector nv{};
    for (std::size_t j = 0; j < kNumProperties; ++j) nv[j] = num(13 + j);
    t.graph6.emplace_back(f[0]);
    t.raw.push_back(pv);
    t.normalized.push_back(nv);
  }
  return t;
}

DatasetManifest write_dataset(const fs::path& dir, const std::vector<Graph>& graphs, const PropertyTable& table,
                              DatasetManifest manifest) {
  if (table.empty()) throw ValidationError("refusing to store an empty dataset");
  if (graphs.size() != table.size() || table.graph6.size() != table.size() ||
      table.normalized.size() != table.size()) {
    throw ValidationError("graphs and property rows are not aligned");
  }
  if (manifest.kind == DatasetKind::kSample && !manifest.params.empty() && manifest.params.size() != graphs.size()) {
    throw ValidationError("generator parameters are not aligned with the graphs");
  }
  std::string g6;
  g6.reserve(graphs.size() * 8);
  for (const auto& code : table.graph6) {
    g6 += code;
    g6 += '\n';
  }
  const std::string csv = format_property_csv(table);

  manifest.n = table.n;
  manifest.count = table.size();
  manifest.apl_divisor = table.apl_divisor;
  manifest.digest = dataset_digest(g6, csv);
  manifest.tool_version = std::string(tool_version());
  manifest.schema_version = kSchemaVersion;

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StorageError("cannot create " + dir.string() + ": " + ec.message());
  write_atomic(dir / manifest.graphs_file, g6);
  write_atomic(dir / manifest.properties_file, csv);
  // The manifest goes last: its presence marks a complete dataset.
  write_atomic(dir / kManifestName, manifest.to_json());
  return manifest;
}

namespace {

struct RawFiles {
  DatasetManifest manifest;
  std::string graphs;
  std::string csv;
};

RawFiles load_verified(const fs::path& dir) {
  const fs::path mpath = dir / kManifestName;
  if (!fs::exists(mpath)) throw MissingDatasetError("no dataset at " + dir.string());
  RawFiles f{DatasetManifest::from_json(read_file(mpath)), {}, {}};
  f.graphs = read_file(dir / f.manifest.graphs_file);
  f.csv = read_file(dir / f.manifest.properties_file);
  if (dataset_digest(f.graphs, f.csv) != f.manifest.digest) {
    throw CorruptDatasetError("digest mismatch in " + dir.string());
  }
  if (count_lines(f.graphs) != f.manifest.count || count_lines(f.csv) != f.manifest.count + 1) {
    throw CorruptDatasetError("row count disagrees with the manifest in " + dir.string());
  }
  return f;
}

}  // namespace

DatasetManifest verify_dataset(const fs::path& dir) { return load_verified(dir).manifest; }

StoredDataset read_dataset(const fs::path& dir, const ReadOptions& opt) {
  RawFiles f = load_verified(dir);
  StoredDataset out;
  try {
    out.table = parse_property_csv(f.csv, f.manifest.n, f.manifest.apl_divisor);
  } catch (const ParseError& e) {
    throw CorruptDatasetError(std::string("property table: ") + e.what());
  }
  out.manifest = std::move(f.manifest);
  if (opt.load_graphs) {
    out.graphs.reserve(out.table.size());
    std::istringstream in(f.graphs);
    out.graphs = read_graph6(in);
  }
  if (opt.spot_check_rows > 0) {
    const std::size_t rows = out.table.size();
    std::vector<std::size_t> idx(rows);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(opt.seed);
    const std::size_t k = std::min(rows, opt.spot_check_rows);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(rows - i - 1)))]);
    }
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t i = idx[s];
      const Graph g = opt.load_graphs ? out.graphs[i] : decode_graph6(out.table.graph6[i]);
      const PropertyVector fresh = property_vector(g);
      const auto a = fresh.values();
      const auto b = out.table.raw[i].values();
      bool same = fresh.r_undefined == out.table.raw[i].r_undefined && fresh.connected == out.table.raw[i].connected;
      for (std::size_t j = 0; j < kNumProperties; ++j) same = same && std::abs(a[j] - b[j]) <= 1e-9;
      if (!same) {
        throw CorruptDatasetError("stored properties of " + out.table.graph6[i] + " do not match a recomputation");
      }
    }
  }
  return out;
}

namespace {

bool same_spec(const GeneratorSpec& a, const GeneratorSpec& b) {
  return a.model == b.model && a.n == b.n && a.count == b.count && a.seed == b.seed &&
         (a.model != Model::kEr || a.p == b.p);
}

}  // namespace

EnsureResult ensure_ground_truth(const fs::path& root, int n, unsigned threads, std::ostream* progress) {
  if (n < 3 || n > kMaxEnumerationOrder) {
    throw ValidationError("ground truths are stored for 3 <= n <= " + std::to_string(kMaxEnumerationOrder));
  }
  EnsureResult out;
  out.dir = ground_truth_dir(root, n);
  if (fs::exists(out.dir / kManifestName)) {
    try {
      out.data = read_dataset(out.dir);
      if (out.data.manifest.kind == DatasetKind::kGroundTruth && out.data.manifest.n == n) {
        out.cached = true;
        return out;
      }
    } catch (const CorruptDatasetError& e) {
      if (progress != nullptr) *progress << "cached ground truth is unusable (" << e.what() << "), rebuilding\n";
    }
  }
  if (progress != nullptr) *progress << "enumerating graphs on " << n << " vertices\n";
  auto graphs = enumerate_nonisomorphic(n, threads);
  if (progress != nullptr) *progress << "computing properties of " << graphs.size() << " graphs\n";
  auto table = build_property_table(graphs, AplScaling::ground_truth(), threads);
  DatasetManifest m;
  m.kind = DatasetKind::kGroundTruth;
  write_dataset(out.dir, graphs, table, std::move(m));
  // Read back so that a fresh run and a cached run see the same
  // 12-digit values.
  out.data = read_dataset(out.dir);
  return out;
}

EnsureResult ensure_sample(const fs::path& root, const GeneratorSpec& spec, unsigned threads, std::ostream* progress) {
  spec.validate();
  EnsureResult out;
  out.dir = sample_dir(root, spec);
  if (fs::exists(out.dir / kManifestName)) {
    try {
      out.data = read_dataset(out.dir);
      if (out.data.manifest.spec && same_spec(*out.data.manifest.spec, spec)) {
        out.cached = true;
        return out;
      }
    } catch (const CorruptDatasetError& e) {
      if (progress != nullptr) *progress << "cached sample is unusable (" << e.what() << "), regenerating\n";
    }
  }
  if (progress != nullptr) {
    *progress << "generating " << spec.count << " " << model_name(spec.model) << " graphs on " << spec.n
              << " vertices (seed " << spec.seed << ")\n";
  }
  auto s = sample(spec, threads);
  auto table = build_property_table(s.graphs, AplScaling::sample_max(), threads);
  DatasetManifest m;
  m.kind = DatasetKind::kSample;
  m.spec = spec;
  m.params = std::move(s.params);
  write_dataset(out.dir, s.graphs, table, std::move(m));
  out.data = read_dataset(out.dir);
  return out;
}

std::vector<CatalogEntry> list_datasets(const fs::path& root, std::vector<fs::path>* skipped) {
  std::vector<CatalogEntry> out;
  for (const char* sub : {"gt", "samples"}) {
    const fs::path base = root / sub;
    std::error_code ec;
    if (!fs::is_directory(base, ec)) continue;
    for (auto it = fs::recursive_directory_iterator(base, ec); !ec && it != fs::recursive_directory_iterator();
         it.increment(ec)) {
      if (it->path().filename() != kManifestName) continue;
      try {
        out.push_back({it->path().parent_path(), DatasetManifest::from_json(read_file(it->path()))});
      } catch (const Error&) {
        if (skipped != nullptr) skipped->push_back(it->path());
      }
    }
  }
  auto sort_key = [](const CatalogEntry& e) {
    const int kind = e.manifest.kind == DatasetKind::kGroundTruth ? 0 : 1;
    const int model = e.manifest.spec ? static_cast<int>(e.manifest.spec->model) : -1;
    const std::uint64_t seed = e.manifest.spec ? e.manifest.spec->seed : 0;
    return std::make_tuple(kind, model, e.manifest.n, seed, e.dir.string());
  };
  std::sort(out.begin(), out.end(), [&](const CatalogEntry& a, const CatalogEntry& b) { return sort_key(a) < sort_key(b); });
  return out;
}

}  // namespace samestats

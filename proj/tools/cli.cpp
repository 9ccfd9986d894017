#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/finder.hpp"
#include "samestats/generators.hpp"
#include "samestats/graph6.hpp"
#include "samestats/metrics.hpp"
#include "samestats/properties.hpp"
#include "samestats/server.hpp"
#include "samestats/store.hpp"

namespace samestats::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string data_dir;
  bool json = false;
};

struct Context {
  Globals g;
  std::ostream& out;
  std::ostream& err;
};

std::string fmt(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Sample size from the mutually exclusive --count / --count-equals-gt /
// --count-pct flags (the ground-truth size when none is given).
struct CountFlags {
  std::size_t count = 0;
  bool equals_gt = false;
  double pct = 0.0;

  std::size_t resolve(int n) const {
    if (count > 0) return count;
    if (n < 1 || n > kMaxEnumerationOrder) {
      throw ValidationError("sample size must be given with --count for n=" + std::to_string(n));
    }
    const auto gt = static_cast<double>(known_class_count(n));
    if (pct > 0.0) return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(gt * pct / 100.0)));
    return static_cast<std::size_t>(gt);
  }
};

void add_count_flags(CLI::App* cmd, CountFlags& c) {
  auto* a = cmd->add_option("--count", c.count, "Number of graphs to generate")->check(CLI::PositiveNumber);
  auto* b = cmd->add_flag("--count-equals-gt", c.equals_gt, "Sample as many graphs as the ground truth has (default)");
  auto* p = cmd->add_option("--count-pct", c.pct, "Sample this percentage of the ground-truth size")
                ->check(CLI::Range(0.0, 100.0));
  a->excludes(b)->excludes(p);
  b->excludes(p);
}

PropertyTable require_ground_truth(const Context& ctx, int n) {
  const auto dir = ground_truth_dir(ctx.g.data_dir, n);
  if (!fs::exists(dir / kManifestName)) {
    throw MissingDatasetError("no ground truth for n=" + std::to_string(n) + " under " + ctx.g.data_dir +
                              "; run `samestats enumerate --n " + std::to_string(n) + "` first");
  }
  ReadOptions opt;
  opt.load_graphs = false;
  return read_dataset(dir, opt).table;
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  int n = 0;
  bool count_only = false;
  std::size_t spot_check = 0;
};

int cmd_enumerate(const Context& ctx, const EnumerateArgs& a) {
  if (a.count_only) {
    const auto codes = enumerate_codes(a.n, ctx.g.threads);
    if (ctx.g.json) {
      json j{{"command", "enumerate"}, {"n", a.n}, {"count", codes.size()}};
      ctx.out << j.dump() << "\n";
    } else {
      ctx.out << codes.size() << "\n";
    }
    return kOk;
  }
  auto r = ensure_ground_truth(ctx.g.data_dir, a.n, ctx.g.threads, &ctx.err);
  if (a.spot_check > 0) {
    ReadOptions opt;
    opt.spot_check_rows = a.spot_check;
    opt.seed = ctx.g.seed;
    read_dataset(r.dir, opt);
    ctx.err << "spot check of " << a.spot_check << " rows passed\n";
  }
  if (ctx.g.json) {
    json j{{"command", "enumerate"},
           {"n", a.n},
           {"count", r.data.manifest.count},
           {"cached", r.cached},
           {"manifest", (r.dir / kManifestName).string()},
           {"digest", r.data.manifest.digest}};
    ctx.out << j.dump() << "\n";
  } else {
    ctx.err << r.data.manifest.count << " graphs" << (r.cached ? " (cached)" : "") << "\n";
    ctx.out << (r.dir / kManifestName).string() << "\n";
  }
  return kOk;
}

// -------------------------------------------------------------------- props

struct PropsArgs {
  std::vector<std::string> codes;
  std::string input;
};

int cmd_props(const Context& ctx, const PropsArgs& a) {
  std::vector<Graph> graphs;
  for (const auto& c : a.codes) graphs.push_back(decode_graph6(c));
  if (!a.input.empty()) {
    std::vector<Graph> more;
    if (a.input == "-") {
      more = read_graph6(std::cin);
    } else {
      std::ifstream in(a.input);
      if (!in) throw ValidationError("cannot open " + a.input);
      more = read_graph6(in);
    }
    graphs.insert(graphs.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  if (graphs.empty()) throw ValidationError("give graphs with --graph6 or --input");
  json arr = json::array();
  if (!ctx.g.json) {
    ctx.out << "graph6";
    for (Property p : kAllProperties) ctx.out << "," << property_name(p);
    ctx.out << ",r_undefined,connected\n";
  }
  for (const auto& g : graphs) {
    const auto pv = property_vector(g);
    if (ctx.g.json) {
      json j;
      j["graph6"] = encode_graph6(g);
      j["n"] = g.order();
      for (Property p : kAllProperties) j[std::string(property_name(p))] = pv[p];
      j["r_undefined"] = pv.r_undefined;
      j["connected"] = pv.connected;
      arr.push_back(std::move(j));
    } else {
      ctx.out << encode_graph6(g);
      for (double v : pv.values()) ctx.out << "," << fmt(v, 12);
      ctx.out << "," << pv.r_undefined << "," << pv.connected << "\n";
    }
  }
  if (ctx.g.json) ctx.out << arr.dump() << "\n";
  return kOk;
}

// ----------------------------------------------------------------- generate

struct GenerateArgs {
  std::string model;
  int n = 0;
  double p = 0.5;
  CountFlags count;
};

Model model_arg(const std::string& name) {
  const auto m = parse_model(name);
  if (!m) throw ValidationError("unknown model '" + name + "' (expected er, un, ge, ws or ba)");
  return *m;
}

int cmd_generate(const Context& ctx, const GenerateArgs& a) {
  GeneratorSpec spec;
  spec.model = model_arg(a.model);
  spec.n = a.n;
  spec.count = a.count.resolve(a.n);
  spec.seed = ctx.g.seed;
  spec.p = a.p;
  auto r = ensure_sample(ctx.g.data_dir, spec, ctx.g.threads, &ctx.err);
  if (ctx.g.json) {
    json j{{"command", "generate"},
           {"model", a.model},
           {"n", a.n},
           {"count", spec.count},
           {"seed", spec.seed},
           {"cached", r.cached},
           {"manifest", (r.dir / kManifestName).string()},
           {"digest", r.data.manifest.digest}};
    ctx.out << j.dump() << "\n";
  } else {
    ctx.out << (r.dir / kManifestName).string() << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string model = "all";
  int n = 0;
  int repeats = 10;
  std::string measures = "kl,em";
  CountFlags count;
  int ks_repeats = 10;
  double ks_fraction = 0.1;
  std::size_t diam_subsample = 5000;
  int parts = 2;
  bool no_cache = false;
};

const std::vector<std::string> kMeasures = {"corr", "ks", "kl", "em", "diam", "bbox", "split", "ellipse"};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> compute_measure(const std::string& m, const Dataset& sample, const Dataset& truth,
                                    const EvaluateArgs& a, std::uint64_t seed) {
  if (m == "corr") {
    const auto cs = correlation_matrix(sample);
    const auto ct = correlation_matrix(truth);
    double worst = 0.0;
    for (int i = 0; i < cs.r.dim(); ++i) {
      for (int j = i + 1; j < cs.r.dim(); ++j) worst = std::max(worst, std::abs(cs.r(i, j) - ct.r(i, j)));
    }
    return {worst};
  }
  if (m == "ks") return ks_statistic(sample, truth, {a.ks_repeats, a.ks_fraction, seed});
  if (m == "kl") return {gaussian_kl(sample, truth)};
  if (m == "em") return {gaussian_em(sample, truth)};
  if (m == "diam") return {coverage_diameter_ratio(sample, truth, {a.diam_subsample, 10, seed})};
  if (m == "bbox") return {bbox_ratio(sample, truth)};
  if (m == "split") return {split_bbox_ratio(sample, truth, a.parts)};
  if (m == "ellipse") return {robust_ellipse_ratio(sample, truth)};
  throw ValidationError("unknown measure '" + m + "'");
}

MetricReport evaluate_model(const Context& ctx, const EvaluateArgs& a, Model model, const PropertyTable& gt,
                            const Dataset& truth, const std::vector<std::string>& measures) {
  const std::size_t count = a.count.resolve(a.n);
  std::map<std::string, std::vector<std::vector<double>>> per_repeat;
  std::size_t rows = 0;
  for (int r = 0; r < a.repeats; ++r) {
    GeneratorSpec spec;
    spec.model = model;
    spec.n = a.n;
    spec.count = count;
    spec.seed = ctx.g.seed + static_cast<std::uint64_t>(r);
    PropertyTable table;
    if (a.no_cache) {
      auto s = sample(spec, ctx.g.threads);
      table = build_property_table(s.graphs, AplScaling::fixed(gt.apl_divisor), ctx.g.threads);
    } else {
      table = ensure_sample(ctx.g.data_dir, spec, ctx.g.threads, &ctx.err).data.table;
    }
    // Samples are compared against the truth on the truth's apl scale.
    const Dataset ds = Dataset::from_table(table, gt.apl_divisor, std::string(model_name(model)));
    rows = ds.rows();
    for (const auto& m : measures) per_repeat[m].push_back(compute_measure(m, ds, truth, a, spec.seed));
  }
  MetricReport rep;
  rep.sample = std::string(model_name(model)) + " seeds " + std::to_string(ctx.g.seed) + ".." +
               std::to_string(ctx.g.seed + static_cast<std::uint64_t>(a.repeats) - 1);
  rep.truth = "ground-truth n=" + std::to_string(a.n);
  rep.n = a.n;
  rep.sample_rows = rows;
  rep.truth_rows = truth.rows();
  for (const auto& m : measures) {
    const auto& runs = per_repeat[m];
    MetricEntry e;
    e.measure = m;
    e.values.assign(runs.front().size(), 0.0);
    for (const auto& run : runs) {
      for (std::size_t i = 0; i < run.size(); ++i) e.values[i] += run[i] / static_cast<double>(runs.size());
    }
    if (runs.front().size() == 1) {
      std::vector<double> xs;
      for (const auto& run : runs) xs.push_back(run.front());
      e.repeats = repeat_stats(xs);
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

int cmd_evaluate(const Context& ctx, const EvaluateArgs& a) {
  const auto measures = split_list(a.measures);
  if (measures.empty()) throw ValidationError("no measures given");
  for (const auto& m : measures) {
    if (std::find(kMeasures.begin(), kMeasures.end(), m) == kMeasures.end()) {
      throw ValidationError("unknown measure '" + m + "'");
    }
  }
  std::vector<Model> models;
  if (a.model == "all") {
    models.assign(std::begin(kAllModels), std::end(kAllModels));
  } else {
    for (const auto& name : split_list(a.model)) models.push_back(model_arg(name));
  }
  const PropertyTable gt = require_ground_truth(ctx, a.n);
  const Dataset truth = Dataset::from_table(gt, "ground-truth");

  std::vector<std::pair<Model, MetricReport>> reports;
  for (Model m : models) {
    auto rep = evaluate_model(ctx, a, m, gt, truth, measures);
    const fs::path dir = fs::path(ctx.g.data_dir) / "reports" / std::string(model_name(m)) / ("n" + std::to_string(a.n));
    fs::create_directories(dir);
    const fs::path file = dir / ("seed" + std::to_string(ctx.g.seed) + "-r" + std::to_string(a.repeats) + "-c" +
                                 std::to_string(rep.sample_rows) + ".json");
    std::ofstream(file) << rep.to_json() << "\n";
    if (!ctx.g.json) {
      for (const auto& e : rep.entries) {
        ctx.out << model_name(m) << " " << e.measure;
        for (double v : e.values) ctx.out << " " << fmt(v);
        if (e.repeats) ctx.out << " [min " << fmt(e.repeats->min) << ", max " << fmt(e.repeats->max) << "]";
        ctx.out << "\n";
      }
      ctx.err << "report: " << file.string() << "\n";
    }
    reports.emplace_back(m, std::move(rep));
  }

  // Rankings for scalar measures: distances ascending, coverage descending.
  json rankings = json::object();
  for (const auto& meas : measures) {
    if (meas == "ks") continue;
    const bool lower_better = meas == "kl" || meas == "em" || meas == "corr";
    std::vector<std::pair<double, Model>> order;
    for (const auto& [m, rep] : reports) order.emplace_back(rep.find(meas)->values.front(), m);
    std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
      return lower_better ? x.first < y.first : x.first > y.first;
    });
    json names = json::array();
    for (const auto& [v, m] : order) names.push_back(model_name(m));
    rankings[meas] = names;
    if (!ctx.g.json && reports.size() > 1) {
      ctx.out << "ranking " << meas << ":";
      for (const auto& [v, m] : order) ctx.out << " " << model_name(m);
      ctx.out << (lower_better ? " (best first, lower is better)" : " (best first, higher is better)") << "\n";
    }
  }
  if (ctx.g.json) {
    json j;
    j["command"] = "evaluate";
    j["n"] = a.n;
    json reps = json::array();
    for (const auto& [m, rep] : reports) {
      json r = json::parse(rep.to_json());
      r["model"] = model_name(m);
      reps.push_back(std::move(r));
    }
    j["reports"] = std::move(reps);
    j["rankings"] = std::move(rankings);
    ctx.out << j.dump() << "\n";
  }
  return kOk;
}

// --------------------------------------------------------------------- find

struct FindArgs {
  int n = 0;
  std::string query;
  std::string fix;
  std::string vary;
  int buckets = 10;
  std::string range;
  std::optional<std::size_t> limit;
};

PropertyQuery build_query(const FindArgs& a) {
  std::string text = a.query;
  auto add = [&](const std::string& term) {
    if (!text.empty()) text += ',';
    text += term;
  };
  if (!a.fix.empty()) add(a.fix);
  if (!a.vary.empty()) {
    add("vary=" + a.vary);
    add("buckets=" + std::to_string(a.buckets));
  }
  if (!a.range.empty()) add("range=" + a.range);
  if (a.limit) add("limit=" + std::to_string(*a.limit));
  auto q = parse_query(text);
  q.validate();
  return q;
}

int cmd_find(const Context& ctx, const FindArgs& a) {
  const auto q = build_query(a);
  const PropertyTable t = require_ground_truth(ctx, a.n);
  if (ctx.g.json) {
    ctx.out << query_json(t, q) << "\n";
    return kOk;
  }
  if (!q.vary) {
    const auto r = filter_query(t, q);
    ctx.out << "matches: " << r.total << "\n";
    for (std::size_t i : r.rows) ctx.out << t.graph6[i] << "\n";
    return kOk;
  }
  const auto s = bucket_sweep(t, q);
  ctx.out << "matches: " << s.total << ", non-empty buckets: " << s.non_empty() << "/" << s.buckets.size() << "\n";
  for (const auto& b : s.buckets) {
    ctx.out << "[" << fmt(b.range.lo, 4) << ", " << fmt(b.range.hi, 4) << "] " << b.total;
    for (std::size_t i : b.rows) ctx.out << " " << t.graph6[i];
    ctx.out << "\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ collide

struct CollideArgs {
  int n = 0;
  int precision = 9;
  std::string model;
  CountFlags count;
};

int cmd_collide(const Context& ctx, const CollideArgs& a) {
  PropertyTable t;
  std::string source = "ground-truth";
  if (a.model.empty()) {
    t = require_ground_truth(ctx, a.n);
  } else {
    GeneratorSpec spec;
    spec.model = model_arg(a.model);
    spec.n = a.n;
    spec.count = a.count.resolve(a.n);
    spec.seed = ctx.g.seed;
    t = ensure_sample(ctx.g.data_dir, spec, ctx.g.threads, &ctx.err).data.table;
    source = a.model + " seed " + std::to_string(spec.seed);
  }
  const auto groups = duplicate_groups(t, a.precision);
  const auto hist = repetition_histogram(t, a.precision);
  std::size_t pairs = 0;
  for (const auto& g : groups) pairs += g.rows.size() * (g.rows.size() - 1) / 2;
  if (ctx.g.json) {
    json j;
    j["command"] = "collide";
    j["n"] = a.n;
    j["source"] = source;
    j["rows"] = t.size();
    j["groups"] = groups.size();
    j["pairs"] = pairs;
    json h = json::object();
    for (std::size_t s = 1; s < hist.size(); ++s) {
      if (hist[s] > 0) h[std::to_string(s)] = hist[s];
    }
    j["histogram"] = std::move(h);
    json gs = json::array();
    for (const auto& g : groups) gs.push_back(g.members);
    j["members"] = std::move(gs);
    ctx.out << j.dump() << "\n";
    return kOk;
  }
  ctx.out << "duplicate groups: " << groups.size() << " (pairs: " << pairs << ")\n";
  for (std::size_t s = hist.size(); s-- > 1;) {
    if (hist[s] > 0) ctx.out << "size " << s << ": " << hist[s] << "\n";
  }
  if (a.model.empty()) {
    for (const auto& g : groups) {
      for (std::size_t k = 0; k < g.members.size(); ++k) ctx.out << (k ? " " : "  ") << g.members[k];
      ctx.out << "\n";
    }
  }
  return kOk;
}

// -------------------------------------------------------------------- bound

struct BoundArgs {
  int n = 0;
  std::uint64_t k = 0;
  int digits = 2;
};

int cmd_bound(const Context& ctx, const BoundArgs& a) {
  const double b = iso_collision_bound(a.n, a.k);
  if (ctx.g.json) {
    json j{{"command", "bound"}, {"n", a.n}, {"k", a.k}, {"value", b}};
    ctx.out << j.dump() << "\n";
  } else {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", a.digits, b);
    ctx.out << buf << "\n";
  }
  return kOk;
}

// -------------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors = "*";
};

ApiServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const Context& ctx, const ServeArgs& a) {
  ServerOptions o;
  o.data_dir = ctx.g.data_dir;
  o.host = a.host;
  o.port = a.port;
  o.cors_origin = a.cors;
  ApiServer server(o, &ctx.err);
  const int port = server.bind();
  if (ctx.g.json) {
    ctx.out << json{{"command", "serve"}, {"host", a.host}, {"port", port}}.dump() << std::endl;
  } else {
    ctx.out << "http://" << a.host << ":" << port << "/api/v1/datasets" << std::endl;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.run();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate small graphs, sample random graph models and compare their statistics."};
  app.name("samestats");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("SAMESTATS_DATA_DIR"); env != nullptr && *env != '\0') {
    g.data_dir = env;
  } else {
    g.data_dir = "data";
  }
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--data-dir", g.data_dir, "Dataset cache directory (env SAMESTATS_DATA_DIR)");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::function<int(const Context&)> action;

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate and cache all graphs on n vertices");
  enumerate->add_option("--n", ea.n, "Order")->required()->check(CLI::Range(1, kMaxEnumerationOrder));
  enumerate->add_flag("--count-only", ea.count_only, "Only print the number of classes (any n in 1..10)");
  enumerate->add_option("--spot-check", ea.spot_check, "Recompute this many stored rows after loading");
  enumerate->callback([&] { action = [&](const Context& c) { return cmd_enumerate(c, ea); }; });

  PropsArgs pa;
  auto* props = app.add_subcommand("props", "Print the ten properties of graph6 graphs");
  props->add_option("--graph6", pa.codes, "graph6 codes");
  props->add_option("--input", pa.input, "graph6 file, or - for stdin");
  props->callback([&] { action = [&](const Context& c) { return cmd_props(c, pa); }; });

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Generate and cache a random graph sample");
  generate->add_option("--model", ga.model, "er, un, ge, ws or ba")->required();
  generate->add_option("--n", ga.n, "Order")->required()->check(CLI::Range(2, 64));
  generate->add_option("--p", ga.p, "Edge probability for er")->check(CLI::Range(0.0, 1.0));
  add_count_flags(generate, ga.count);
  generate->callback([&] { action = [&](const Context& c) { return cmd_generate(c, ga); }; });

  EvaluateArgs va;
  auto* evaluate = app.add_subcommand("evaluate", "Score generator samples against the ground truth");
  evaluate->add_option("--model", va.model, "Comma-separated models, or all");
  evaluate->add_option("--n", va.n, "Order")->required()->check(CLI::Range(3, kMaxEnumerationOrder));
  evaluate->add_option("--repeats", va.repeats, "Samples per model (seeds seed..seed+repeats-1)")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--measures", va.measures, "Comma-separated: corr,ks,kl,em,diam,bbox,split,ellipse");
  evaluate->add_option("--ks-repeats", va.ks_repeats, "Truth subsamples per KS statistic")->check(CLI::PositiveNumber);
  evaluate->add_option("--ks-fraction", va.ks_fraction, "Truth subsample fraction for KS")
      ->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--diam-subsample", va.diam_subsample, "Rows per diameter subsample");
  evaluate->add_option("--parts", va.parts, "Splits per dimension for the split bounding box")
      ->check(CLI::Range(2, 64));
  evaluate->add_flag("--no-cache", va.no_cache, "Do not store the generated samples");
  add_count_flags(evaluate, va.count);
  evaluate->callback([&] { action = [&](const Context& c) { return cmd_evaluate(c, va); }; });

  FindArgs fa;
  auto* find = app.add_subcommand("find", "Query the ground truth for graphs with given statistics");
  find->add_option("--n", fa.n, "Order")->required();
  find->add_option("--query", fa.query, "prop=lo:hi,...,vary=prop,buckets=k,limit=m");
  find->add_option("--fix", fa.fix, "prop=lo:hi,... (same as the HTTP fix parameter)");
  find->add_option("--vary", fa.vary, "Property to sweep");
  find->add_option("--buckets", fa.buckets, "Buckets of the sweep");
  find->add_option("--range", fa.range, "lo:hi range of the sweep");
  find->add_option("--limit", fa.limit, "Rows per bucket (or in total)");
  find->callback([&] { action = [&](const Context& c) { return cmd_find(c, fa); }; });

  CollideArgs ca;
  auto* collide = app.add_subcommand("collide", "Group graphs with identical statistics");
  collide->add_option("--n", ca.n, "Order")->required();
  collide->add_option("--precision", ca.precision, "Decimals of the grouping key")->check(CLI::Range(0, 12));
  collide->add_option("--model", ca.model, "Use a generated sample instead of the ground truth");
  add_count_flags(collide, ca.count);
  collide->callback([&] { action = [&](const Context& c) { return cmd_collide(c, ca); }; });

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Lower bound on k G(n,1/2) graphs being pairwise non-isomorphic");
  bound->add_option("--n", ba.n, "Order")->required()->check(CLI::PositiveNumber);
  bound->add_option("--k", ba.k, "Number of graphs")->required()->check(CLI::PositiveNumber);
  bound->add_option("--digits", ba.digits, "Decimals printed")->check(CLI::Range(0, 17));
  bound->callback([&] { action = [&](const Context& c) { return cmd_bound(c, ba); }; });

  ServeArgs sa;
  auto* serve = app.add_subcommand("serve", "Serve the cached ground truths over HTTP");
  serve->add_option("--host", sa.host, "Listen address");
  serve->add_option("--port", sa.port, "Port (0 = any free port)")->check(CLI::Range(0, 65535));
  serve->add_option("--cors-origin", sa.cors, "Access-Control-Allow-Origin value");
  serve->callback([&] { action = [&](const Context& c) { return cmd_serve(c, sa); }; });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("samestats");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Context ctx{g, out, err};
  try {
    return action(ctx);
  } catch (const MissingDatasetError& e) {
    err << "error: " << e.what() << "\n";
    return kMissingDataset;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (offset " << e.offset() << ")\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedOrderError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace samestats::cli

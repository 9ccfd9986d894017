#include "samestats/server.hpp"

#include <algorithm>
#include <charconv>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "samestats/error.hpp"
#include "samestats/finder.hpp"
#include "samestats/graph6.hpp"
#include "samestats/properties.hpp"
#include "samestats/rng.hpp"

namespace samestats {

using json = nlohmann::ordered_json;

namespace {

ApiResponse error_response(int status, std::string_view message) {
  json j;
  j["error"] = message;
  return {status, j.dump(), "application/json"};
}

ApiResponse ok(const json& j) { return {200, j.dump(), "application/json"}; }

std::optional<std::string> param(const QueryParams& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  return it->second;
}

// Throws ValidationError on junk.
std::uint64_t parse_u64(const std::string& s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ValidationError("'" + std::string(what) + "' must be a non-negative integer");
  }
  return v;
}

}  // namespace

QueryService::QueryService(const std::filesystem::path& data_dir, std::ostream* log) {
  std::vector<std::filesystem::path> skipped;
  auto all = list_datasets(data_dir, &skipped);
  for (const auto& p : skipped) {
    if (log != nullptr) *log << "warning: skipping unreadable manifest " << p.string() << "\n";
  }
  for (auto& entry : all) {
    if (entry.manifest.kind == DatasetKind::kGroundTruth) {
      try {
        ReadOptions opt;
        opt.load_graphs = false;
        auto ds = read_dataset(entry.dir, opt);
        tables_[entry.manifest.n] = std::move(ds.table);
      } catch (const Error& e) {
        if (log != nullptr) *log << "warning: skipping " << entry.dir.string() << ": " << e.what() << "\n";
        continue;
      }
    }
    catalog_.push_back(std::move(entry));
  }
}

const PropertyTable* QueryService::table(int n) const {
  const auto it = tables_.find(n);
  return it == tables_.end() ? nullptr : &it->second;
}

ApiResponse QueryService::datasets() const {
  json arr = json::array();
  for (const auto& e : catalog_) {
    json j;
    j["n"] = e.manifest.n;
    j["count"] = e.manifest.count;
    j["kind"] = kind_name(e.manifest.kind);
    if (e.manifest.spec) {
      j["model"] = model_name(e.manifest.spec->model);
      j["seed"] = e.manifest.spec->seed;
    }
    arr.push_back(std::move(j));
  }
  json out;
  out["datasets"] = std::move(arr);
  return ok(out);
}

ApiResponse QueryService::query(int n, const QueryParams& params) const {
  const PropertyTable* t = table(n);
  if (t == nullptr) return error_response(404, "no ground truth cached for n=" + std::to_string(n));
  PropertyQuery q;
  try {
    std::string text = param(params, "fix").value_or("");
    for (const char* key : {"vary", "buckets", "range", "limit"}) {
      if (auto v = param(params, key)) {
        if (!text.empty()) text += ',';
        text += std::string(key) + "=" + *v;
      }
    }
    q = parse_query(text);
    if (!param(params, "limit")) q.limit = 100;
    if (q.limit > kMaxResponseRows) {
      return error_response(400, "limit must not exceed " + std::to_string(kMaxResponseRows));
    }
    for (const auto& [p, iv] : q.fixed) {
      if (iv.empty()) return error_response(400, "empty interval for " + std::string(property_name(p)));
    }
    q.validate();
    return {200, query_json(*t, q), "application/json"};
  } catch (const ParseError& e) {
    return error_response(400, std::string(e.what()) + " at offset " + std::to_string(e.offset()));
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  }
}

ApiResponse QueryService::edges(std::string_view graph6) const {
  Graph g(0);
  try {
    g = decode_graph6(graph6);
  } catch (const ParseError& e) {
    return error_response(400, std::string("malformed graph6: ") + e.what());
  }
  json j;
  j["graph6"] = encode_graph6(g);
  j["n"] = g.order();
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["degrees"] = g.degrees();
  if (g.order() >= 3) {
    const auto pv = property_vector(g);
    json props;
    for (Property p : kAllProperties) props[std::string(property_name(p))] = pv[p];
    j["properties"] = std::move(props);
    j["r_undefined"] = pv.r_undefined;
    j["connected"] = pv.connected;
  } else {
    j["properties"] = nullptr;
  }
  return ok(j);
}

ApiResponse QueryService::pcp_sample(int n, const QueryParams& params) const {
  const PropertyTable* t = table(n);
  if (t == nullptr) return error_response(404, "no ground truth cached for n=" + std::to_string(n));
  std::size_t size = 1000;
  std::uint64_t seed = 0;
  try {
    if (auto v = param(params, "size")) size = parse_u64(*v, "size");
    if (auto v = param(params, "seed")) seed = parse_u64(*v, "seed");
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  }
  if (size > kMaxResponseRows) return error_response(400, "size must not exceed " + std::to_string(kMaxResponseRows));

  // Reservoir sampling (algorithm R) over the table rows.
  std::vector<std::size_t> keep;
  keep.reserve(std::min(size, t->size()));
  Rng rng(seed);
  for (std::size_t i = 0; i < t->size(); ++i) {
    if (keep.size() < size) {
      keep.push_back(i);
      continue;
    }
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)));
    if (j < size) keep[j] = i;
  }
  std::sort(keep.begin(), keep.end());

  json j;
  j["n"] = n;
  j["total"] = t->size();
  j["seed"] = seed;
  json axes = json::array();
  for (Property p : kAllProperties) axes.push_back(property_name(p));
  j["axes"] = std::move(axes);
  json rows = json::array();
  for (std::size_t i : keep) {
    json r;
    r["graph6"] = t->graph6[i];
    r["normalized"] = t->normalized[i];
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return ok(j);
}

ApiResponse QueryService::handle(std::string_view path, const QueryParams& params) const {
  static const std::regex kQuery(R"(^/api/v1/datasets/(\d+)/query/?$)");
  static const std::regex kPcp(R"(^/api/v1/datasets/(\d+)/pcp-sample/?$)");
  static const std::regex kEdges(R"(^/api/v1/graphs/(.+)/edges/?$)");
  const std::string p(path);
  std::smatch m;
  if (p == "/api/v1/datasets" || p == "/api/v1/datasets/") return datasets();
  auto order = [&]() -> std::optional<int> {
    const auto s = m[1].str();
    int n = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return n;
  };
  if (std::regex_match(p, m, kQuery)) {
    const auto n = order();
    return n ? query(*n, params) : error_response(404, "unknown dataset");
  }
  if (std::regex_match(p, m, kPcp)) {
    const auto n = order();
    return n ? pcp_sample(*n, params) : error_response(404, "unknown dataset");
  }
  if (std::regex_match(p, m, kEdges)) return edges(m[1].str());
  return error_response(404, "no such endpoint");
}

struct ApiServer::Impl {
  ServerOptions opts;
  QueryService service;
  httplib::Server http;
  std::ostream* log;

  Impl(ServerOptions o, std::ostream* l) : opts(std::move(o)), service(opts.data_dir, l), log(l) {}
};

ApiServer::ApiServer(ServerOptions opts, std::ostream* log)
    : impl_(std::make_unique<Impl>(std::move(opts), log)) {
  auto& http = impl_->http;
  http.set_default_headers({{"Access-Control-Allow-Origin", impl_->opts.cors_origin},
                            {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  http.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = impl_->service.handle(req.path, req.params);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  auto read_only = [](const httplib::Request&, httplib::Response& res) {
    res.status = 405;
    res.set_content(R"({"error":"the API is read-only"})", "application/json");
  };
  http.Post(".*", read_only);
  http.Put(".*", read_only);
  http.Patch(".*", read_only);
  http.Delete(".*", read_only);
  http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    json j;
    j["error"] = what;
    res.status = 500;
    res.set_content(j.dump(), "application/json");
  });
  if (log != nullptr) {
    http.set_logger([log](const httplib::Request& req, const httplib::Response& res) {
      *log << req.method << " " << req.path << " " << res.status << "\n";
    });
  }
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
  auto& o = impl_->opts;
  if (o.port == 0) {
    const int port = impl_->http.bind_to_any_port(o.host);
    if (port < 0) throw Error("cannot bind " + o.host);
    o.port = port;
    return port;
  }
  if (!impl_->http.bind_to_port(o.host, o.port)) {
    throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return o.port;
}

void ApiServer::run() { impl_->http.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void ApiServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace samestats

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "samestats/store.hpp"
#include "samestats/table.hpp"

namespace samestats {

inline constexpr std::size_t kMaxResponseRows = 10000;

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

using QueryParams = std::multimap<std::string, std::string>;

/// Request handling of the read-only HTTP API, independent of any socket:
///
///   GET /api/v1/datasets
///   GET /api/v1/datasets/{n}/query?fix=..&vary=..&buckets=..&range=..&limit=..
///   GET /api/v1/graphs/{graph6}/edges
///   GET /api/v1/datasets/{n}/pcp-sample?size=..&seed=..
///
/// Ground truths are loaded (and digest-checked) once at construction and
/// shared read-only between requests.
class QueryService {
 public:
  /// Datasets that fail to load are skipped with a line on `log`.
  explicit QueryService(const std::filesystem::path& data_dir, std::ostream* log = nullptr);

  ApiResponse handle(std::string_view path, const QueryParams& params) const;

  ApiResponse datasets() const;
  ApiResponse query(int n, const QueryParams& params) const;
  ApiResponse edges(std::string_view graph6) const;
  ApiResponse pcp_sample(int n, const QueryParams& params) const;

  const PropertyTable* table(int n) const;

 private:
  std::vector<CatalogEntry> catalog_;
  std::map<int, PropertyTable> tables_;
};

struct ServerOptions {
  std::filesystem::path data_dir = "data";
  std::string host = "127.0.0.1";
  /// 0 binds an ephemeral port.
  int port = 8080;
  std::string cors_origin = "*";
};

/// cpp-httplib front end for QueryService: GET and OPTIONS only, CORS
/// headers on every response, gzip when the client accepts it.
class ApiServer {
 public:
  explicit ApiServer(ServerOptions opts, std::ostream* log = nullptr);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds the listening socket and returns the port. Throws Error on
  /// failure.
  int bind();
  /// Serves until stop(); call bind() first.
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace samestats

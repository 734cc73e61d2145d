#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ontoplot/hierarchy.hpp"
#include "ontoplot/layout.hpp"
#include "ontoplot/ontology.hpp"
#include "ontoplot/query_command.hpp"

namespace httplib {
class Server;
}

namespace ontoplot {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Stateless JSON API over one immutable snapshot. Every request carries
/// the full view state, so `handle` is a pure function of its arguments
/// and safe to call from several threads.
class Service {
 public:
  explicit Service(OntologySnapshot snapshot, LayoutConfig config = {});
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  const OntologySnapshot& snapshot() const noexcept { return snapshot_; }
  const OccurrenceTree& tree() const noexcept { return tree_; }
  const LayoutConfig& config() const noexcept { return config_; }

  /// `path` is already percent-decoded; `params` are the decoded query
  /// parameters. Errors come back as {error, code} with a 4xx/5xx status.
  HttpResponse handle(std::string_view method, std::string_view path, const QueryArgs& params,
                      std::string_view body) const;

 private:
  HttpResponse route(std::string_view method, std::string_view path, const QueryArgs& params,
                     std::string_view body) const;

  OntologySnapshot snapshot_;
  OccurrenceTree tree_;
  HierarchyQueries queries_;
  LayoutConfig config_;
};

/// Wires every endpoint of `service` (plus CORS preflight) into `server`.
void mount_routes(httplib::Server& server, const Service& service);

/// Serves until the process is stopped. Returns false when the port
/// cannot be bound.
bool serve(const Service& service, const std::string& host, int port);

}  // namespace ontoplot

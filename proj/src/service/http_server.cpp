// cpp-httplib adapter around Service::handle.

#include <cctype>

// Eigen must come before httplib: <resolv.h> defines a _res macro that
// breaks Eigen's headers.
#include "mxv/json_io.hpp"
#include "mxv/service.hpp"

#include <fmt/format.h>
#include <httplib.h>

namespace mxv::service {

struct Service::Server {
  httplib::Server http;
};

namespace {

Request convert(const httplib::Request& in) {
  Request r;
  r.method = in.method;
  r.path = in.path;
  r.body = in.body;
  for (const auto& [k, v] : in.params) r.query.emplace(k, v);
  for (const auto& [k, v] : in.headers) {
    std::string key = k;
    for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    r.headers.emplace(key, v);
  }
  return r;
}

}  // namespace

Service::Service(Config cfg)
    : cfg_(std::move(cfg)), store_(cfg_.max_documents), server_(std::make_shared<Server>()) {}

bool Service::running() const { return server_->http.is_running(); }

bool Service::listen() {
  auto& http = server_->http;
  http.set_payload_max_length(cfg_.max_upload);

  const auto dispatch = [this](const httplib::Request& in, httplib::Response& out) {
    const Response r = handle(convert(in));
    out.status = r.status;
    for (const auto& [k, v] : r.headers) out.set_header(k, v);
    if (!r.content_type.empty()) out.set_content(r.body, r.content_type);
  };
  const std::string api = R"(/api/.*)";
  http.Get(api, dispatch);
  http.Post(api, dispatch);
  http.Delete(api, dispatch);
  http.Options(api, dispatch);

  if (!cfg_.static_dir.empty() && !http.set_mount_point("/", cfg_.static_dir)) {
    fmt::print(stderr, "static directory '{}' does not exist\n", cfg_.static_dir);
    return false;
  }
  // httplib rejects oversized bodies itself; give that reply the same shape
  // as every other error.
  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 413) {
      res.set_content(json_io::body(json_io::error(Error("PayloadTooLarge", "request body exceeds the upload limit"))),
                      "application/json");
    }
  });
  http.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    fmt::print(stderr, "{} {} -> {}\n", req.method, req.path, res.status);
  });

  fmt::print(stderr, "mxv listening on http://{}:{}\n", cfg_.bind, cfg_.port);
  return http.listen(cfg_.bind, cfg_.port);
}

void Service::stop() { server_->http.stop(); }

}  // namespace mxv::service

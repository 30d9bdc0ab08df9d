#pragma once

#include <chrono>
#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "mxv/parsers.hpp"

namespace mxv::service {

struct Config {
  std::string bind = "127.0.0.1";
  int port = 8765;
  std::size_t max_upload = 256u << 20;  // bytes
  std::size_t max_documents = 32;
  std::string static_dir;  // served at / when non-empty
};

/// MXV_PORT, MXV_BIND and MXV_MAX_UPLOAD take precedence over `base`.
Config apply_environment(Config base);

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // names lower-cased
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

struct Document {
  std::string id;
  std::string filename;
  DetectedFormat kind;
  Payload payload;
  std::chrono::system_clock::time_point created_at;
  std::mutex mutex;  // serializes work on one document
};

// Thread-safe store that forgets the least recently used document once it
// holds more than `capacity` entries.
class DocumentStore {
 public:
  explicit DocumentStore(std::size_t capacity) : capacity_(capacity ? capacity : 1) {}

  std::shared_ptr<Document> add(std::string filename, DetectedFormat kind, Payload payload);
  std::shared_ptr<Document> get(const std::string& id);
  bool erase(const std::string& id);
  std::size_t size() const;

 private:
  std::string next_id();

  mutable std::mutex mutex_;
  std::size_t capacity_;
  std::uint64_t counter_ = 0;
  std::list<std::string> order_;  // most recent first
  std::unordered_map<std::string, std::pair<std::shared_ptr<Document>, std::list<std::string>::iterator>> docs_;
};

class Service {
 public:
  explicit Service(Config cfg);

  /// Routes one request. Never throws; errors become JSON error bodies.
  Response handle(const Request& req);

  /// Blocks serving HTTP until stop() or a fatal socket error. Returns false
  /// when the address cannot be bound.
  bool listen();
  void stop();
  bool running() const;

  const Config& config() const { return cfg_; }
  DocumentStore& store() { return store_; }

 private:
  Response route(const Request& req);

  Config cfg_;
  DocumentStore store_;
  struct Server;
  std::shared_ptr<Server> server_;
};

}  // namespace mxv::service

#include "mxv/service.hpp"

#include <cstdlib>
#include <random>
#include <regex>

#include <fmt/format.h>

#include "mxv/json_io.hpp"
#include "mxv/version.hpp"
#include "mxv/writers.hpp"

namespace mxv::service {

using json_io::json;

Config apply_environment(Config base) {
  if (const char* p = std::getenv("MXV_PORT"); p && *p) base.port = std::atoi(p);
  if (const char* b = std::getenv("MXV_BIND"); b && *b) base.bind = b;
  if (const char* m = std::getenv("MXV_MAX_UPLOAD"); m && *m) base.max_upload = std::strtoull(m, nullptr, 10);
  return base;
}

// ---------------------------------------------------------------- store

std::string DocumentStore::next_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  return fmt::format("{:x}{:012x}", ++counter_, rng() & 0xffffffffffffULL);
}

std::shared_ptr<Document> DocumentStore::add(std::string filename, DetectedFormat kind, Payload payload) {
  auto doc = std::make_shared<Document>();
  doc->filename = std::move(filename);
  doc->kind = kind;
  doc->payload = std::move(payload);
  doc->created_at = std::chrono::system_clock::now();
  std::lock_guard lock(mutex_);
  doc->id = next_id();
  order_.push_front(doc->id);
  docs_[doc->id] = {doc, order_.begin()};
  while (docs_.size() > capacity_) {
    docs_.erase(order_.back());
    order_.pop_back();
  }
  return doc;
}

std::shared_ptr<Document> DocumentStore::get(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = docs_.find(id);
  if (it == docs_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second.second);
  return it->second.first;
}

bool DocumentStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = docs_.find(id);
  if (it == docs_.end()) return false;
  order_.erase(it->second.second);
  docs_.erase(it);
  return true;
}

std::size_t DocumentStore::size() const {
  std::lock_guard lock(mutex_);
  return docs_.size();
}

// ---------------------------------------------------------------- routing

namespace {

// Raised for problems with the request itself rather than with the data.
struct HttpError {
  int status;
  std::string name;
  std::string message;
};

Response json_response(int status, const json& j) {
  Response r;
  r.status = status;
  r.body = json_io::body(j);
  return r;
}

Response error_response(int status, const std::string& name, const std::string& message,
                        const std::string& context = {}) {
  return json_response(status, json_io::error(Error(name, message, context)));
}

json parse_body(const Request& req, bool allow_empty) {
  if (req.body.find_first_not_of(" \t\r\n") == std::string::npos) {
    if (allow_empty) return json::object();
    throw HttpError{400, "BadRequest", "request body must be a JSON object"};
  }
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw HttpError{400, "BadRequest", "request body must be a JSON object"};
  return j;
}

int int_param(const Request& req, const std::string& key, int fallback) {
  auto it = req.query.find(key);
  if (it == req.query.end() || it->second.empty()) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw HttpError{400, "BadRequest", "query parameter '" + key + "' must be an integer"};
  }
}

std::optional<double> double_param(const Request& req, const std::string& key) {
  auto it = req.query.find(key);
  if (it == req.query.end() || it->second.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw HttpError{400, "BadRequest", "query parameter '" + key + "' must be a number"};
  }
}

int json_int(const json& body, const char* key, int fallback) {
  if (!body.contains(key) || body[key].is_null()) return fallback;
  if (!body[key].is_number_integer()) throw HttpError{400, "BadRequest", std::string("'") + key + "' must be an integer"};
  return body[key].get<int>();
}

std::array<int, 3> json_supercell(const json& body) {
  if (!body.contains("supercell") || body["supercell"].is_null()) return {1, 1, 1};
  const json& s = body["supercell"];
  if (s.is_string()) return parse_dims(s.get<std::string>());
  if (!s.is_array() || s.size() != 3) throw HttpError{400, "BadRequest", "'supercell' must be [a, b, c]"};
  std::array<int, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!s[i].is_number_integer()) throw HttpError{400, "BadRequest", "'supercell' entries must be integers"};
    out[i] = s[i].get<int>();
    if (out[i] < 1) throw Error("BadSupercell", "supercell counts must be positive");
  }
  return out;
}

const VolumetricGrid& grid_of(const Document& d) {
  const auto* g = std::get_if<VolumetricGrid>(&d.payload);
  if (!g) throw Error("WrongDocumentKind", "document " + d.id + " holds no volumetric data");
  return *g;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t end = path.find('/', start);
    const std::string part = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) out.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

bool local_origin(const std::string& origin) {
  static const std::regex re(R"(^https?://(localhost|127\.0\.0\.1|\[::1\])(:[0-9]+)?$)");
  return std::regex_match(origin, re);
}

std::string document_stem(const std::string& filename) {
  const auto slash = filename.find_last_of("/\\");
  std::string base = slash == std::string::npos ? filename : filename.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base.resize(dot);
  return base.empty() ? "structure" : base;
}

// ---------------------------------------------------------------- handlers

Response upload(DocumentStore& store, const Request& req) {
  std::string name = "upload";
  if (auto h = req.headers.find("x-filename"); h != req.headers.end() && !h->second.empty()) {
    name = h->second;
  } else if (auto q = req.query.find("filename"); q != req.query.end() && !q->second.empty()) {
    name = q->second;
  }
  if (req.body.empty()) throw HttpError{400, "BadRequest", "upload body is empty"};
  const DetectedFormat kind = detect_format(name, req.body);
  Payload payload = parse_as(kind.kind, req.body);
  auto doc = store.add(name, kind, std::move(payload));
  std::lock_guard lock(doc->mutex);
  return json_response(201, {{"id", doc->id},
                             {"kind", std::string(to_string(kind.kind))},
                             {"filename", doc->filename},
                             {"summary", json_io::summary(kind, doc->payload)}});
}

Response get_structure(Document& d, const Request& req) {
  const int frame = int_param(req, "frame", 0);
  Structure s = structure_at(d.payload, frame);
  if (auto it = req.query.find("supercell"); it != req.query.end() && !it->second.empty()) {
    const auto dims = parse_dims(it->second);
    if (dims != std::array<int, 3>{1, 1, 1}) s = make_supercell(s, dims[0], dims[1], dims[2]);
  }
  const double factor = double_param(req, "bond_factor").value_or(1.0);
  json out = {{"frame", frame}, {"frame_count", frame_count(d.payload)}, {"structure", json_io::structure(s)}};
  json energies = json::array(), times = json::array();
  if (const auto* t = std::get_if<Trajectory>(&d.payload)) {
    for (const auto& e : t->energies) energies.push_back(e ? json(*e) : json(nullptr));
    for (const auto& e : t->times) times.push_back(e ? json(*e) : json(nullptr));
  }
  out["energies"] = energies;
  out["times"] = times;
  try {
    out["bonds"] = json_io::bonds(detect_bonds(s, factor));
  } catch (const Error& e) {
    // A cell too small for the bond search still renders; the note says why
    // there are no bonds.
    if (e.name() != "CellTooSmall") throw;
    out["bonds"] = json::array();
    out["bonds_note"] = json_io::error(e);
  }
  return json_response(200, out);
}

Response measure(Document& d, const Request& req) {
  const json body = parse_body(req, false);
  if (!body.contains("atoms") || !body["atoms"].is_array()) {
    throw HttpError{400, "BadRequest", "'atoms' must be an array of atom numbers"};
  }
  std::vector<long long> serials;
  for (const auto& a : body["atoms"]) {
    if (!a.is_number_integer()) throw HttpError{400, "BadRequest", "'atoms' entries must be integers"};
    serials.push_back(a.get<long long>());
  }
  const Structure s = structure_at(d.payload, json_int(body, "frame", 0));
  const auto picks = picks_from_serials(serials);
  return json_response(200, json_io::measurement(measure_selection(s, picks)));
}

Response mesh(Document& d, const Request& req) {
  const json body = parse_body(req, true);
  const VolumetricGrid& g = grid_of(d);
  double iso = 0.0;
  if (!body.contains("isovalue") || body["isovalue"].is_null()) {
    iso = iso::default_isovalue(g);
  } else if (body["isovalue"].is_number()) {
    iso = body["isovalue"].get<double>();
  } else {
    throw HttpError{400, "BadRequest", "'isovalue' must be a number"};
  }
  std::string algo = "mc";
  if (body.contains("algorithm") && !body["algorithm"].is_null()) {
    if (!body["algorithm"].is_string()) throw HttpError{400, "BadRequest", "'algorithm' must be a string"};
    algo = body["algorithm"].get<std::string>();
  }
  const auto a = iso::parse_algorithm(algo);
  const auto pair = iso::extract_pair(g, iso, a, json_supercell(body));
  return json_response(200, json_io::mesh_pair(pair, a));
}

Response evolve(Document& d, const Request& req) {
  const json body = parse_body(req, false);
  const VolumetricGrid& g = grid_of(d);
  iso::EvolutionState st;
  if (!body.contains("isovalue") || !body["isovalue"].is_number()) {
    throw HttpError{400, "BadRequest", "'isovalue' must be a number"};
  }
  st.iso = body["isovalue"].get<double>();
  st.direction = json_int(body, "direction", 1) >= 0 ? 1 : -1;
  st.step = iso::default_evolution_step(g);
  if (body.contains("step") && !body["step"].is_null()) {
    if (!body["step"].is_number()) throw HttpError{400, "BadRequest", "'step' must be a number"};
    st.step = body["step"].get<double>();
  }
  return json_response(200, {{"isovalue", iso::evolve_isovalue(st, g.max_abs())}, {"step", st.step},
                             {"direction", st.direction}, {"delay", st.delay}});
}

Response band(Document& d, const Request& req) {
  const auto* b = std::get_if<BandData>(&d.payload);
  if (!b) throw Error("WrongDocumentKind", "document " + d.id + " holds no band data");
  BandPlot plot = assemble_band_plot(*b);
  const auto emin = double_param(req, "emin"), emax = double_param(req, "emax");
  if (emin || emax) plot = window(plot, emin.value_or(plot.e_min), emax.value_or(plot.e_max));
  return json_response(200, json_io::band_plot(plot));
}

Response export_structure(Document& d, const Request& req) {
  const json body = parse_body(req, false);
  if (!body.contains("format") || !body["format"].is_string()) {
    throw HttpError{400, "BadRequest", "'format' must be one of xyz, cif, omx-cart, omx-frac"};
  }
  const StructureFormat f = parse_structure_format(body["format"].get<std::string>());
  Structure s = structure_at(d.payload, json_int(body, "frame", 0));
  if (const auto dims = json_supercell(body); dims != std::array<int, 3>{1, 1, 1}) {
    s = make_supercell(s, dims[0], dims[1], dims[2]);
  }
  Response r;
  r.body = write_structure(s, f);
  r.content_type = "text/plain; charset=utf-8";
  const char* ext = f == StructureFormat::xyz ? "xyz" : f == StructureFormat::cif ? "cif" : "dat";
  r.headers["Content-Disposition"] = fmt::format("attachment; filename=\"{}.{}\"", document_stem(d.filename), ext);
  return r;
}

}  // namespace

Response Service::handle(const Request& req) {
  Response r;
  try {
    r = route(req);
  } catch (const HttpError& e) {
    r = error_response(e.status, e.name, e.message);
  } catch (const Error& e) {
    r = json_response(422, json_io::error(e));
  } catch (const std::bad_alloc&) {
    r = error_response(500, "OutOfMemory", "the request needs more memory than is available");
  } catch (const std::exception& e) {
    r = error_response(500, "InternalError", e.what());
  }
  if (auto o = req.headers.find("origin"); o != req.headers.end() && local_origin(o->second)) {
    r.headers["Access-Control-Allow-Origin"] = o->second;
    r.headers["Vary"] = "Origin";
    r.headers["Access-Control-Allow-Methods"] = "GET, POST, DELETE, OPTIONS";
    r.headers["Access-Control-Allow-Headers"] = "Content-Type, X-Filename";
  }
  return r;
}

Response Service::route(const Request& req) {
  if (req.method == "OPTIONS") {
    Response r;
    r.status = 204;
    r.content_type.clear();
    return r;
  }
  if (req.body.size() > cfg_.max_upload) {
    throw HttpError{413, "PayloadTooLarge", fmt::format("request body exceeds {} bytes", cfg_.max_upload)};
  }
  const auto parts = split_path(req.path);
  const auto wrong_method = [&] {
    return HttpError{405, "MethodNotAllowed", req.method + " is not supported on " + req.path};
  };
  if (parts.size() < 2 || parts[0] != "api") throw HttpError{404, "NotFound", "no such endpoint: " + req.path};

  if (parts.size() == 2 && parts[1] == "version") {
    if (req.method != "GET") throw wrong_method();
    return json_response(200, {{"name", "mxv"}, {"version", std::string(kVersion)}, {"api", json_io::kApiVersion}});
  }
  if (parts[1] != "documents") throw HttpError{404, "NotFound", "no such endpoint: " + req.path};
  if (parts.size() == 2) {
    if (req.method != "POST") throw wrong_method();
    return upload(store_, req);
  }

  const std::string& id = parts[2];
  auto doc = store_.get(id);
  if (!doc) throw HttpError{404, "UnknownDocument", "no document with id '" + id + "'"};
  std::string rest;
  for (std::size_t i = 3; i < parts.size(); ++i) rest += (i > 3 ? "/" : "") + parts[i];

  std::lock_guard lock(doc->mutex);
  const bool get = req.method == "GET", post = req.method == "POST";
  if (rest.empty()) {
    if (req.method == "DELETE") {
      store_.erase(id);
      return json_response(200, {{"deleted", id}});
    }
    if (!get) throw wrong_method();
    return json_response(200, {{"id", doc->id},
                               {"kind", std::string(to_string(doc->kind.kind))},
                               {"filename", doc->filename},
                               {"summary", json_io::summary(doc->kind, doc->payload)}});
  }
  if (rest == "structure") return get ? get_structure(*doc, req) : throw wrong_method();
  if (rest == "measure") return post ? measure(*doc, req) : throw wrong_method();
  if (rest == "volume/meta") return get ? json_response(200, json_io::volume_meta(grid_of(*doc))) : throw wrong_method();
  if (rest == "volume/mesh") return post ? mesh(*doc, req) : throw wrong_method();
  if (rest == "volume/evolve") return post ? evolve(*doc, req) : throw wrong_method();
  if (rest == "band") return get ? band(*doc, req) : throw wrong_method();
  if (rest == "export") return post ? export_structure(*doc, req) : throw wrong_method();
  throw HttpError{404, "NotFound", "no such endpoint: " + req.path};
}

}  // namespace mxv::service

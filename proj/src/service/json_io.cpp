#include <algorithm>

#include "mxv/json_io.hpp"

namespace mxv::json_io {

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json lattice(const std::optional<Lattice>& l) {
  if (!l) return nullptr;
  return json::array({vec(l->vector(0)), vec(l->vector(1)), vec(l->vector(2))});
}

json atom(const Atom& a) {
  json j = {{"serial", a.serial},
            {"species", a.species},
            {"element", std::string(a.element.symbol)},
            {"position", vec(a.position)}};
  const auto& p = a.properties;
  json props = json::object();
  if (p.net_charge) props["net_charge"] = *p.net_charge;
  if (p.spin) props["spin"] = *p.spin;
  if (p.spin_up) props["spin_up"] = *p.spin_up;
  if (p.spin_down) props["spin_down"] = *p.spin_down;
  if (p.force) props["force"] = vec(*p.force);
  if (p.velocity) props["velocity"] = vec(*p.velocity);
  j["properties"] = props;
  return j;
}

json structure(const Structure& s) {
  json atoms = json::array();
  for (const auto& a : s.atoms) atoms.push_back(atom(a));
  return {{"atoms", atoms}, {"lattice", lattice(s.lattice)}, {"comment", s.comment}};
}

json bonds(const std::vector<Bond>& b) {
  json out = json::array();
  // Atom numbers are 1-based like every other user-facing index.
  for (const auto& x : b) {
    out.push_back({{"i", x.i + 1}, {"j", x.j + 1}, {"image", x.image}, {"length", x.length}});
  }
  return out;
}

json measurement(const MeasurementReport& r) {
  json picked = json::array();
  for (const auto& p : r.picked) {
    picked.push_back({{"serial", p.serial}, {"species", p.species}, {"symbol", p.symbol}, {"position", vec(p.position)}});
  }
  json j = {{"picked", picked}, {"distances", r.distances}, {"angles", r.angles}};
  j["dihedral"] = r.dihedral ? json(*r.dihedral) : json(nullptr);
  if (r.dihedral_note) j["dihedral_note"] = *r.dihedral_note;
  return j;
}

namespace {

json structure_summary(const Structure& s) {
  std::vector<std::string> species;
  for (const auto& a : s.atoms) {
    if (std::find(species.begin(), species.end(), a.species) == species.end()) species.push_back(a.species);
  }
  return {{"atoms", s.atoms.size()}, {"species", species}, {"periodic", s.lattice.has_value()},
          {"lattice", lattice(s.lattice)}};
}

json optional_list(const std::vector<std::optional<double>>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x ? json(*x) : json(nullptr));
  return out;
}

}  // namespace

json summary(const DetectedFormat& kind, const Payload& p) {
  json j;
  if (const auto* s = std::get_if<Structure>(&p)) {
    j = structure_summary(*s);
    j["frames"] = 1;
  } else if (const auto* t = std::get_if<Trajectory>(&p)) {
    j = t->frames.empty() ? json{{"atoms", 0}} : structure_summary(t->frames.front());
    j["frames"] = t->frames.size();
    j["energies"] = optional_list(t->energies);
    j["times"] = optional_list(t->times);
  } else if (const auto* g = std::get_if<VolumetricGrid>(&p)) {
    j = volume_meta(*g);
  } else {
    const auto& b = std::get<BandData>(p);
    std::size_t kpoints = 0;
    for (const auto& s : b.segments) kpoints += s.kpoints.size();
    j = {{"bands", b.n_bands},
         {"spin_channels", b.spin_channels},
         {"segments", b.segments.size()},
         {"kpoints", kpoints},
         {"chem_potential_hartree", b.chem_potential}};
  }
  j["format"] = std::string(to_string(kind.kind));
  j["detection"] = std::string(to_string(kind.confidence));
  return j;
}

json volume_meta(const VolumetricGrid& g) {
  json steps = json::array({vec(g.steps[0]), vec(g.steps[1]), vec(g.steps[2])});
  return {{"dims", g.dims},
          {"points", g.point_count()},
          {"origin", vec(g.origin)},
          {"steps", steps},
          {"atoms", g.atoms.size()},
          {"max_abs", g.max_abs()},
          {"default_isovalue", iso::default_isovalue(g)},
          {"default_step", iso::default_evolution_step(g)}};
}

json mesh(const TriangleMesh& m) {
  std::vector<double> v, n;
  std::vector<std::uint32_t> t;
  v.reserve(3 * m.vertices.size());
  n.reserve(3 * m.normals.size());
  t.reserve(3 * m.triangles.size());
  for (const auto& p : m.vertices) v.insert(v.end(), {p.x(), p.y(), p.z()});
  for (const auto& p : m.normals) n.insert(n.end(), {p.x(), p.y(), p.z()});
  for (const auto& f : m.triangles) t.insert(t.end(), f.begin(), f.end());
  return {{"vertices", v}, {"normals", n}, {"triangles", t}, {"isovalue", m.isovalue},
          {"sign", m.sign == MeshSign::positive ? "positive" : "negative"}};
}

json mesh_pair(const iso::MeshPair& m, iso::Algorithm a) {
  return {{"algorithm", std::string(iso::to_string(a))},
          {"isovalue", m.positive.isovalue},
          {"positive", mesh(m.positive)},
          {"negative", mesh(m.negative)}};
}

json band_plot(const BandPlot& p) {
  json lines = json::array();
  for (const auto& l : p.lines) {
    std::vector<double> d, e;
    for (const auto& pt : l.points) {
      d.push_back(pt.distance);
      e.push_back(pt.energy);
    }
    lines.push_back({{"spin", l.spin}, {"band", l.band}, {"distance", d}, {"energy", e}});
  }
  json ticks = json::array();
  for (const auto& t : p.ticks) ticks.push_back({{"distance", t.distance}, {"label", t.label}});
  return {{"lines", lines}, {"ticks", ticks}, {"e_range", {p.e_min, p.e_max}}};
}

json error(const Error& e) {
  json j = {{"error", e.name()}, {"message", e.what()}};
  if (!e.context().empty()) j["context"] = e.context();
  return j;
}

std::string body(const json& j) { return j.dump() + "\n"; }

}  // namespace mxv::json_io

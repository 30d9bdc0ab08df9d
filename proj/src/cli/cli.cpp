#include "mxv/cli.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mxv/json_io.hpp"
#include "mxv/service.hpp"
#include "mxv/version.hpp"
#include "mxv/writers.hpp"

namespace mxv::cli {
namespace {

using json_io::json;

// Library errors that mean the command line asked for something impossible.
bool usage_error(const std::string& name) {
  static const std::set<std::string> names = {"DuplicatePick", "BadIndex",  "BadPickCount", "BadSupercell",
                                              "BadFormat",     "BadAlgorithm", "BadIsovalue", "BadWindow",
                                              "BadFrame",      "BadBondFactor"};
  return names.count(name) > 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("CannotRead", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw Error("CannotWrite", "cannot write '" + path + "'");
}

struct Loaded {
  DetectedFormat kind;
  Payload payload;
};

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  const DetectedFormat kind = detect_format(path, text);
  return {kind, parse_as(kind.kind, text)};
}

StructureFormat format_for_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "cif") return StructureFormat::cif;
  if (ext == "dat") return StructureFormat::omx_cart;
  return StructureFormat::xyz;
}

std::vector<long long> parse_atom_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("BadIndex", "'" + item + "' is not an atom number");
    }
  }
  return out;
}

void print_info(std::ostream& out, const std::string& path, const Loaded& l) {
  out << fmt::format("file: {}\nformat: {} ({})\n", path, to_string(l.kind.kind), to_string(l.kind.confidence));
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        auto structure_lines = [&](const Structure& s) {
          out << fmt::format("atoms: {}\n", s.atoms.size());
          if (s.lattice) {
            const auto c = s.lattice->parameters();
            out << fmt::format("cell: a={:.6f} b={:.6f} c={:.6f} alpha={:.4f} beta={:.4f} gamma={:.4f}\n", c[0], c[1],
                               c[2], c[3], c[4], c[5]);
          } else {
            out << "cell: none (molecule)\n";
          }
        };
        if constexpr (std::is_same_v<T, Structure>) {
          structure_lines(p);
        } else if constexpr (std::is_same_v<T, Trajectory>) {
          out << fmt::format("frames: {}\n", p.frames.size());
          if (!p.frames.empty()) structure_lines(p.frames.front());
          for (std::size_t f = 0; f < p.energies.size(); ++f) {
            if (p.energies[f]) out << fmt::format("energy[{}]: {} Hartree\n", f, *p.energies[f]);
          }
        } else if constexpr (std::is_same_v<T, VolumetricGrid>) {
          out << fmt::format("grid: {} x {} x {}\natoms: {}\nmax_abs: {:.6e}\ndefault_isovalue: {:.6e}\n", p.dims[0],
                             p.dims[1], p.dims[2], p.atoms.size(), p.max_abs(), iso::default_isovalue(p));
        } else {
          std::size_t k = 0;
          for (const auto& s : p.segments) k += s.kpoints.size();
          out << fmt::format("bands: {}\nspin channels: {}\nsegments: {}\nk-points: {}\nchemical potential: {} Hartree\n",
                             p.n_bands, p.spin_channels, p.segments.size(), k, p.chem_potential);
        }
      },
      l.payload);
}

void print_measurement(std::ostream& out, const MeasurementReport& r) {
  for (std::size_t i = 0; i < r.picked.size(); ++i) {
    const auto& p = r.picked[i];
    out << fmt::format("atom {}: {} #{} ({:.6f}, {:.6f}, {:.6f})\n", i + 1, p.symbol, p.serial, p.position.x(),
                       p.position.y(), p.position.z());
  }
  for (std::size_t i = 0; i < r.distances.size(); ++i) {
    out << fmt::format("distance {}-{}: {:.6f} Å\n", i + 1, i + 2, r.distances[i]);
  }
  for (std::size_t i = 0; i < r.angles.size(); ++i) {
    out << fmt::format("angle {}-{}-{}: {:.4f}°\n", i + 1, i + 2, i + 3, r.angles[i]);
  }
  if (r.dihedral) out << fmt::format("dihedral 1-2-3-4: {:.4f}°\n", *r.dihedral);
  if (r.dihedral_note) out << fmt::format("dihedral 1-2-3-4: undefined ({})\n", *r.dihedral_note);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure, isosurface and band toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string file, output, to, dims = "1x1x1", atoms, algorithm = "mc", csv, bind;
  int frame = 0, port = 0;
  double factor = 1.0;
  std::optional<double> isovalue, emin, emax;
  bool as_json = false, negative = false;
  std::string static_dir;
  std::size_t max_upload = 0, max_docs = 0;

  auto* info = app.add_subcommand("info", "Detected format and a summary of the contents");
  info->add_option("FILE", file)->required();
  info->add_flag("--json", as_json);

  auto* convert = app.add_subcommand("convert", "Write a structure in another format");
  convert->add_option("FILE", file)->required();
  convert->add_option("--to", to, "xyz, cif, omx-cart or omx-frac")->required();
  convert->add_option("-o,--output", output)->required();
  convert->add_option("--frame", frame, "0-based trajectory frame");

  auto* supercell = app.add_subcommand("supercell", "Replicate the cell");
  supercell->add_option("FILE", file)->required();
  supercell->add_option("--dims", dims, "AxBxC")->required();
  supercell->add_option("-o,--output", output)->required();
  supercell->add_option("--to", to, "output format (default: from the output extension)");
  supercell->add_option("--frame", frame);

  auto* measure = app.add_subcommand("measure", "Distances, angles and dihedral between picked atoms");
  measure->add_option("FILE", file)->required();
  measure->add_option("--atoms", atoms, "1-based atom numbers, e.g. 1,2,3,4")->required();
  measure->add_option("--frame", frame);
  measure->add_flag("--json", as_json);

  auto* bonds = app.add_subcommand("bonds", "List bonds from covalent radii");
  bonds->add_option("FILE", file)->required();
  bonds->add_option("--factor", factor, "scales the covalent radius sum");
  bonds->add_option("--frame", frame);
  bonds->add_flag("--json", as_json);

  auto* isosurface = app.add_subcommand("isosurface", "Extract isosurfaces from a cube file");
  isosurface->add_option("FILE", file)->required();
  isosurface->add_option("--isovalue", isovalue, "default: max|value|/200");
  isosurface->add_option("--algorithm", algorithm)->check(CLI::IsMember({"mc", "mt", "sn"}));
  isosurface->add_option("--supercell", dims, "AxBxC tiling");
  isosurface->add_flag("--negative", negative, "also write the negative isosurface");
  isosurface->add_option("-o,--output", output, ".obj or .ply")->required();

  auto* band = app.add_subcommand("band", "Band structure table");
  band->add_option("FILE", file)->required();
  band->add_option("--csv", csv)->required();
  band->add_option("--emin", emin, "eV relative to the chemical potential");
  band->add_option("--emax", emax);

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port);
  serve->add_option("--bind", bind);
  serve->add_option("--static", static_dir, "directory served at /");
  serve->add_option("--max-upload", max_upload, "bytes");
  serve->add_option("--max-documents", max_docs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*info) {
      const Loaded l = load(file);
      if (as_json) {
        out << json_io::body({{"filename", file},
                              {"kind", std::string(to_string(l.kind.kind))},
                              {"summary", json_io::summary(l.kind, l.payload)}});
      } else {
        print_info(out, file, l);
      }
    } else if (*convert) {
      const StructureFormat f = parse_structure_format(to);
      const Structure s = structure_at(load(file).payload, frame);
      write_file(output, write_structure(s, f));
      out << fmt::format("wrote {} atoms to {} ({})\n", s.atoms.size(), output, to_string(f));
    } else if (*supercell) {
      const auto d = parse_dims(dims);
      const StructureFormat f = to.empty() ? format_for_path(output) : parse_structure_format(to);
      const Structure s = make_supercell(structure_at(load(file).payload, frame), d[0], d[1], d[2]);
      write_file(output, write_structure(s, f));
      out << fmt::format("wrote {} atoms to {} ({})\n", s.atoms.size(), output, to_string(f));
    } else if (*measure) {
      const std::vector<long long> serials = parse_atom_list(atoms);
      const Structure s = structure_at(load(file).payload, frame);
      const MeasurementReport r = measure_selection(s, picks_from_serials(serials));
      if (as_json) {
        out << json_io::body(json_io::measurement(r));
      } else {
        print_measurement(out, r);
      }
    } else if (*bonds) {
      const Structure s = structure_at(load(file).payload, frame);
      const auto list = detect_bonds(s, factor);
      if (as_json) {
        out << json_io::body({{"count", list.size()}, {"bonds", json_io::bonds(list)}});
      } else {
        for (const auto& b : list) {
          out << fmt::format("{}{}-{}{} [{} {} {}] {:.6f}\n", s.atoms[b.i].element.symbol, b.i + 1,
                             s.atoms[b.j].element.symbol, b.j + 1, b.image[0], b.image[1], b.image[2], b.length);
        }
        out << fmt::format("{} bonds\n", list.size());
      }
    } else if (*isosurface) {
      const Loaded l = load(file);
      const auto* g = std::get_if<VolumetricGrid>(&l.payload);
      if (!g) throw Error("WrongDocumentKind", "'" + file + "' holds no volumetric data");
      const double v = isovalue ? *isovalue : iso::default_isovalue(*g);
      const auto algo = iso::parse_algorithm(algorithm);
      const auto pair = iso::extract_pair(*g, v, algo, parse_dims(dims));
      std::vector<TriangleMesh> meshes{pair.positive};
      if (negative) meshes.push_back(pair.negative);
      write_file(output, write_mesh(meshes, mesh_format_for(output)));
      out << fmt::format("isovalue {}{}\n", v, isovalue ? "" : " (max|value|/200)");
      for (const auto& m : meshes) {
        out << fmt::format("{}: {} vertices, {} triangles\n", m.sign == MeshSign::positive ? "positive" : "negative",
                           m.vertices.size(), m.triangles.size());
      }
      out << fmt::format("wrote {}\n", output);
    } else if (*band) {
      const Loaded l = load(file);
      const auto* b = std::get_if<BandData>(&l.payload);
      if (!b) throw Error("WrongDocumentKind", "'" + file + "' holds no band data");
      write_file(csv, write_band_table(*b, emin, emax));
      out << fmt::format("wrote {}\n", csv);
    } else if (*serve) {
      service::Config cfg;
      if (port) cfg.port = port;
      if (!bind.empty()) cfg.bind = bind;
      if (max_upload) cfg.max_upload = max_upload;
      if (max_docs) cfg.max_documents = max_docs;
      cfg.static_dir = static_dir;
      cfg = service::apply_environment(cfg);
      service::Service svc(cfg);
      if (!svc.listen()) {
        err << fmt::format("mxv: cannot listen on {}:{}\n", cfg.bind, cfg.port);
        return 2;
      }
    }
  } catch (const Error& e) {
    std::string where = file;
    if (!e.context().empty()) where += (where.empty() ? "" : ": ") + e.context();
    err << fmt::format("mxv: {}{}{}: {}\n", where, where.empty() ? "" : ": ", e.name(), e.what());
    return usage_error(e.name()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << fmt::format("mxv: {}\n", e.what());
    return 2;
  }
  return 0;
}

}  // namespace mxv::cli

#include <algorithm>
#include <cctype>

#include "format.hpp"
#include "mxv/error.hpp"
#include "mxv/geometry.hpp"
#include "mxv/writers.hpp"

namespace mxv {
namespace {

using fmtx::fixed;

std::string species_of(const Atom& a) {
  return a.species.empty() ? std::string(a.element.symbol) : a.species;
}

std::string one_line(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\n' || c == '\r'; }, ' ');
  return s;
}

bool mentions_lattice(const std::string& comment) {
  std::string lc = comment;
  std::transform(lc.begin(), lc.end(), lc.begin(), [](unsigned char c) { return std::tolower(c); });
  return lc.find("lattice=") != std::string::npos || lc.find("cell_vectors") != std::string::npos;
}

std::string write_xyz(const Structure& s) {
  std::string out = fmt::format("{}\n", s.atoms.size());
  std::string comment = one_line(s.comment);
  if (s.lattice) {
    const Mat3& v = s.lattice->vectors();
    std::string lat = "Lattice=\"";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) lat += (r + c ? " " : "") + fixed(v(r, c), fmtx::kFine);
    lat += "\"";
    comment = mentions_lattice(comment) || comment.empty() ? lat : lat + " " + comment;
  }
  out += comment + "\n";
  for (const auto& a : s.atoms) {
    out += fmt::format("{} {} {} {}\n", species_of(a), fixed(a.position.x(), fmtx::kCart),
                       fixed(a.position.y(), fmtx::kCart), fixed(a.position.z(), fmtx::kCart));
  }
  return out;
}

std::string write_cif(const Structure& s) {
  const Lattice& lat = s.require_lattice("CIF output");
  const auto p = lat.parameters();
  std::string out = "data_mxv\n";
  if (!s.comment.empty()) out += "_audit_creation_method '" + one_line(s.comment) + "'\n";
  out += "_symmetry_space_group_name_H-M 'P 1'\n_symmetry_Int_Tables_number 1\n";
  const char* names[6] = {"_cell_length_a", "_cell_length_b", "_cell_length_c",
                          "_cell_angle_alpha", "_cell_angle_beta", "_cell_angle_gamma"};
  for (int i = 0; i < 6; ++i) out += fmt::format("{} {}\n", names[i], fixed(p[static_cast<std::size_t>(i)], fmtx::kFine));
  out += "loop_\n_symmetry_equiv_pos_as_xyz\n'x, y, z'\n";
  out += "loop_\n_atom_site_label\n_atom_site_type_symbol\n_atom_site_fract_x\n_atom_site_fract_y\n_atom_site_fract_z\n";
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    const Atom& a = s.atoms[i];
    const Vec3 f = cart_to_frac(a.position, lat);
    out += fmt::format("{}{} {} {} {} {}\n", a.element.symbol, i + 1, species_of(a), fixed(f.x(), fmtx::kFine),
                       fixed(f.y(), fmtx::kFine), fixed(f.z(), fmtx::kFine));
  }
  return out;
}

std::string write_omx(const Structure& s, bool frac) {
  if (frac) s.require_lattice("fractional OpenMX output");
  std::vector<std::string> species;
  for (const auto& a : s.atoms) {
    const std::string sp = species_of(a);
    if (std::find(species.begin(), species.end(), sp) == species.end()) species.push_back(sp);
  }
  std::string out =
      "# spin columns (up, down) are 0.0/0.0 unless the structure carries spin data;\n"
      "# basis and pseudopotential names below are placeholders\n";
  if (!s.comment.empty()) {
    std::string name = one_line(s.comment);
    std::replace(name.begin(), name.end(), ' ', '_');
    out += "System.Name " + name + "\n";
  }
  out += fmt::format("Species.Number {}\n<Definition.of.Atomic.Species\n", species.size());
  for (const auto& sp : species) {
    const auto sym = std::find_if(s.atoms.begin(), s.atoms.end(), [&](const Atom& a) { return species_of(a) == sp; })
                         ->element.symbol;
    out += fmt::format(" {} {}-PAO {}-VPS\n", sp, sym, sym);
  }
  out += "Definition.of.Atomic.Species>\n";
  out += fmt::format("Atoms.Number {}\n", s.atoms.size());
  out += fmt::format("Atoms.SpeciesAndCoordinates.Unit {}\n<Atoms.SpeciesAndCoordinates\n", frac ? "FRAC" : "Ang");
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    const Atom& a = s.atoms[i];
    const Vec3 p = frac ? cart_to_frac(a.position, *s.lattice) : a.position;
    const int prec = frac ? fmtx::kFine : fmtx::kCart;
    const double up = a.properties.spin_up.value_or(0.0);
    const double down = a.properties.spin_down.value_or(0.0);
    out += fmt::format(" {} {} {} {} {} {} {}\n", i + 1, species_of(a), fixed(p.x(), prec), fixed(p.y(), prec),
                       fixed(p.z(), prec), fixed(up, fmtx::kCart), fixed(down, fmtx::kCart));
  }
  out += "Atoms.SpeciesAndCoordinates>\n";
  if (s.lattice) {
    out += "Atoms.UnitVectors.Unit Ang\n<Atoms.UnitVectors\n";
    const Mat3& v = s.lattice->vectors();
    for (int r = 0; r < 3; ++r) {
      out += fmt::format(" {} {} {}\n", fixed(v(r, 0), fmtx::kFine), fixed(v(r, 1), fmtx::kFine),
                         fixed(v(r, 2), fmtx::kFine));
    }
    out += "Atoms.UnitVectors>\n";
  }
  return out;
}

}  // namespace

StructureFormat parse_structure_format(std::string_view name) {
  if (name == "xyz") return StructureFormat::xyz;
  if (name == "cif") return StructureFormat::cif;
  if (name == "omx-cart" || name == "omx_cart") return StructureFormat::omx_cart;
  if (name == "omx-frac" || name == "omx_frac") return StructureFormat::omx_frac;
  throw Error("BadFormat", "unknown output format '" + std::string(name) + "' (use xyz, cif, omx-cart or omx-frac)");
}

std::string_view to_string(StructureFormat f) {
  switch (f) {
    case StructureFormat::xyz: return "xyz";
    case StructureFormat::cif: return "cif";
    case StructureFormat::omx_cart: return "omx-cart";
    case StructureFormat::omx_frac: return "omx-frac";
  }
  return "unknown";
}

std::string write_structure(const Structure& s, StructureFormat format) {
  switch (format) {
    case StructureFormat::xyz: return write_xyz(s);
    case StructureFormat::cif: return write_cif(s);
    case StructureFormat::omx_cart: return write_omx(s, false);
    case StructureFormat::omx_frac: return write_omx(s, true);
  }
  throw Error("BadFormat", "unknown output format");
}

}  // namespace mxv

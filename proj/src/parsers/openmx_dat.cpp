#include <map>

#include "mxv/constants.hpp"
#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "text.hpp"

namespace mxv {
namespace {

struct Keywords {
  std::map<std::string, std::pair<std::string, std::size_t>> scalars;  // lower key -> (value, line)
  std::map<std::string, std::pair<std::vector<std::string_view>, std::size_t>> blocks;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return text::trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

Keywords scan(const std::vector<std::string_view>& lines) {
  Keywords kw;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = strip_comment(lines[i]);
    if (line.empty()) continue;
    const auto toks = text::tokens(line);
    if (toks[0].size() > 1 && toks[0].front() == '<') {
      const std::string name = text::lower(toks[0].substr(1));
      std::vector<std::string_view> body;
      std::size_t j = i + 1;
      bool closed = false;
      for (; j < lines.size(); ++j) {
        const std::string_view inner = strip_comment(lines[j]);
        if (inner.empty()) continue;
        const auto itoks = text::tokens(inner);
        if (itoks[0].size() > 1 && itoks[0].back() == '>' &&
            text::lower(itoks[0].substr(0, itoks[0].size() - 1)) == name) {
          closed = true;
          break;
        }
        body.push_back(inner);
      }
      if (!closed) {
        throw Error("MissingKeyword", "block <" + std::string(toks[0].substr(1)) + " is not closed",
                    text::line_context(i + 1));
      }
      kw.blocks[name] = {std::move(body), i + 2};
      i = j;
    } else if (toks.size() >= 2) {
      kw.scalars[text::lower(toks[0])] = {std::string(toks[1]), i + 1};
    }
  }
  return kw;
}

enum class Unit { ang, au, frac };

Unit read_unit(const Keywords& kw, const std::string& key, bool allow_frac) {
  auto it = kw.scalars.find(key);
  if (it == kw.scalars.end()) return Unit::ang;
  const std::string v = text::lower(it->second.first);
  if (v == "ang") return Unit::ang;
  if (v == "au") return Unit::au;
  if (allow_frac && v == "frac") return Unit::frac;
  throw Error("MalformedOpenMX", "unsupported unit '" + it->second.first + "' for " + key,
              text::line_context(it->second.second));
}

double number(std::string_view tok, std::size_t line) {
  auto v = text::to_double(tok);
  if (!v) throw Error("MalformedOpenMX", "expected a number, got '" + std::string(tok) + "'", text::line_context(line));
  return *v;
}

}  // namespace

Structure parse_openmx_dat(std::string_view source) {
  const auto lines = text::split_lines(source);
  const Keywords kw = scan(lines);

  auto count_it = kw.scalars.find("atoms.number");
  if (count_it == kw.scalars.end()) throw Error("MissingKeyword", "Atoms.Number is missing");
  const auto count = text::to_long(count_it->second.first);
  if (!count || *count < 0) {
    throw Error("MalformedOpenMX", "Atoms.Number must be a non-negative integer", text::line_context(count_it->second.second));
  }
  auto coords_it = kw.blocks.find("atoms.speciesandcoordinates");
  if (coords_it == kw.blocks.end()) throw Error("MissingKeyword", "<Atoms.SpeciesAndCoordinates block is missing");

  Structure s;
  if (auto uv = kw.blocks.find("atoms.unitvectors"); uv != kw.blocks.end()) {
    const auto& rows = uv->second.first;
    if (rows.size() < 3) {
      throw Error("MalformedOpenMX", "<Atoms.UnitVectors needs three rows", text::line_context(uv->second.second));
    }
    const double scale = read_unit(kw, "atoms.unitvectors.unit", false) == Unit::au ? units::kBohrToAng : 1.0;
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
      const auto toks = text::tokens(rows[r]);
      if (toks.size() < 3) {
        throw Error("MalformedOpenMX", "unit vector row needs three numbers", text::line_context(uv->second.second + r));
      }
      for (int c = 0; c < 3; ++c) m(r, c) = number(toks[c], uv->second.second + r) * scale;
    }
    s.lattice = Lattice(m);
  }

  // Species name -> definition tokens, used when the name alone is not an element.
  std::map<std::string, std::vector<std::string_view>> definitions;
  if (auto def = kw.blocks.find("definition.of.atomic.species"); def != kw.blocks.end()) {
    for (auto row : def->second.first) {
      auto toks = text::tokens(row);
      definitions[std::string(toks[0])] = toks;
    }
  }
  const auto resolve = [&](const std::string& species, std::size_t line) -> Element {
    try {
      return element_lookup(species);
    } catch (const Error&) {
      if (auto d = definitions.find(species); d != definitions.end()) {
        for (std::size_t t = 1; t < d->second.size(); ++t) {
          try {
            return element_lookup(d->second[t]);
          } catch (const Error&) {
          }
        }
      }
      throw Error("UnknownElement", "cannot resolve species '" + species + "'", text::line_context(line));
    }
  };

  const Unit unit = read_unit(kw, "atoms.speciesandcoordinates.unit", true);
  if (unit == Unit::frac && !s.lattice) {
    throw Error("FracWithoutCell", "fractional coordinates need <Atoms.UnitVectors");
  }
  const auto& rows = coords_it->second.first;
  const std::size_t first_line = coords_it->second.second;
  if (static_cast<long>(rows.size()) != *count) {
    throw Error("CountMismatch", "Atoms.Number is " + std::to_string(*count) + " but the coordinate block has " +
                                     std::to_string(rows.size()) + " rows",
                text::line_context(first_line));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto toks = text::tokens(rows[r]);
    const std::size_t line = first_line + r;
    if (toks.size() < 5) throw Error("MalformedOpenMX", "coordinate row needs serial, species and x y z", text::line_context(line));
    Atom atom;
    atom.species = std::string(toks[1]);
    atom.element = resolve(atom.species, line);
    Vec3 p(number(toks[2], line), number(toks[3], line), number(toks[4], line));
    switch (unit) {
      case Unit::ang: break;
      case Unit::au: p *= units::kBohrToAng; break;
      case Unit::frac: p = s.lattice->vectors().transpose() * p; break;
    }
    atom.position = p;
    if (toks.size() >= 7) {
      const double up = number(toks[5], line), down = number(toks[6], line);
      atom.properties.spin_up = up;
      atom.properties.spin_down = down;
      atom.properties.spin = up - down;
    }
    atom.serial = static_cast<int>(r) + 1;
    s.atoms.push_back(std::move(atom));
  }
  if (auto name = kw.scalars.find("system.name"); name != kw.scalars.end()) s.comment = name->second.first;
  return s;
}

}  // namespace mxv

// XYZ and OpenMX .md trajectories: repeated blocks of
//   N
//   comment (scanned for key=value pairs)
//   N rows of "Symbol x y z [vx vy vz [fx fy fz ...]]"

#include <cctype>

#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "text.hpp"

namespace mxv {
namespace {

using text::line_context;

// Finds `key=` (case-insensitive, whole word) and returns the text after '='.
std::optional<std::string_view> find_key(std::string_view comment, std::string_view key) {
  const std::string lc = text::lower(comment);
  const std::string lk = text::lower(key);
  std::size_t pos = 0;
  while ((pos = lc.find(lk, pos)) != std::string::npos) {
    const bool word_start = pos == 0 || !(std::isalnum(static_cast<unsigned char>(lc[pos - 1])) ||
                                          lc[pos - 1] == '_');
    std::size_t p = pos + lk.size();
    while (p < lc.size() && text::is_blank(lc[p])) ++p;
    if (word_start && p < lc.size() && lc[p] == '=') {
      ++p;
      while (p < lc.size() && text::is_blank(lc[p])) ++p;
      return comment.substr(p);
    }
    pos += lk.size();
  }
  return std::nullopt;
}

std::optional<double> scan_number(std::string_view comment, std::string_view key) {
  auto rest = find_key(comment, key);
  if (!rest) return std::nullopt;
  auto toks = text::tokens(*rest);
  if (toks.empty()) return std::nullopt;
  return text::to_double(toks.front());
}

// Extended-XYZ Lattice="..." or OpenMX Cell_Vectors= followed by nine numbers.
std::optional<Lattice> scan_lattice(std::string_view comment) {
  for (std::string_view key : {"Lattice", "Cell_Vectors"}) {
    auto rest = find_key(comment, key);
    if (!rest) continue;
    std::string_view r = *rest;
    if (!r.empty() && r.front() == '"') {
      r.remove_prefix(1);
      r = r.substr(0, r.find('"'));
    }
    auto toks = text::tokens(r);
    if (toks.size() < 9) continue;
    Mat3 m;
    bool ok = true;
    for (int i = 0; i < 9 && ok; ++i) {
      auto v = text::to_double(toks[i]);
      ok = v.has_value();
      if (ok) m(i / 3, i % 3) = *v;
    }
    if (ok) return Lattice(m);
  }
  return std::nullopt;
}

struct Flavor {
  const char* malformed;  // error name for structural problems
  bool md;                // errors carry the frame number
};

[[noreturn]] void fail(const Flavor& fl, std::size_t frame, std::size_t line, const std::string& what) {
  std::string ctx = line_context(line);
  if (fl.md) ctx = "frame " + std::to_string(frame) + ", " + ctx;
  throw Error(fl.malformed, what, ctx);
}

Trajectory read_frames(std::string_view text, const Flavor& fl) {
  const auto lines = text::split_lines(text);
  Trajectory traj;
  std::size_t i = 0;
  while (true) {
    while (i < lines.size() && text::trim(lines[i]).empty()) ++i;
    if (i >= lines.size()) break;
    const std::size_t frame_no = traj.frames.size() + 1;
    const auto head = text::tokens(lines[i]);
    const auto count = text::to_long(head.front());
    if (!count || *count < 0) fail(fl, frame_no, i + 1, "expected an atom count");
    ++i;
    if (i >= lines.size()) fail(fl, frame_no, i + 1, "missing comment line");
    Structure s;
    s.comment = std::string(text::trim(lines[i]));
    ++i;
    s.lattice = scan_lattice(s.comment);
    s.atoms.reserve(static_cast<std::size_t>(*count));
    for (long a = 0; a < *count; ++a, ++i) {
      if (i >= lines.size()) {
        fail(fl, frame_no, i + 1, "expected " + std::to_string(*count) + " atom rows, found " +
                                  std::to_string(a));
      }
      const auto toks = text::tokens(lines[i]);
      if (toks.size() < 4) fail(fl, frame_no, i + 1, "atom row needs a symbol and three coordinates");
      Atom atom;
      atom.species = std::string(toks[0]);
      try {
        atom.element = element_lookup(toks[0]);
      } catch (const Error& e) {
        throw Error(e.name(), e.what(), line_context(i + 1));
      }
      for (int c = 0; c < 3; ++c) {
        auto v = text::to_double(toks[1 + c]);
        if (!v) fail(fl, frame_no, i + 1, "non-numeric coordinate '" + std::string(toks[1 + c]) + "'");
        atom.position[c] = *v;
      }
      std::vector<double> extra;
      for (std::size_t t = 4; t < toks.size(); ++t) {
        auto v = text::to_double(toks[t]);
        if (!v) break;
        extra.push_back(*v);
      }
      if (extra.size() >= 3) atom.properties.velocity = Vec3(extra[0], extra[1], extra[2]);
      if (extra.size() >= 6) atom.properties.force = Vec3(extra[3], extra[4], extra[5]);
      atom.serial = static_cast<int>(a) + 1;
      s.atoms.push_back(std::move(atom));
    }
    traj.energies.push_back(scan_number(s.comment, "Energy"));
    traj.times.push_back(scan_number(s.comment, "time"));
    traj.frames.push_back(std::move(s));
  }
  if (traj.frames.empty()) throw Error(fl.malformed, "no frames found", line_context(1));
  return traj;
}

}  // namespace

Trajectory parse_xyz(std::string_view text) {
  Trajectory t = read_frames(text, Flavor{"MalformedXYZ", false});
  t.check_consistent();
  return t;
}

Trajectory parse_openmx_md(std::string_view text) {
  Trajectory t = read_frames(text, Flavor{"MalformedFrame", true});
  t.check_consistent();
  return t;
}

}  // namespace mxv

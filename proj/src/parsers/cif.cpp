#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "text.hpp"

namespace mxv {
namespace {

// Fractional images closer than this in every component (modulo 1) are the same site.
constexpr double kDedupTolerance = 1e-3;

struct Loop {
  std::vector<std::string> tags;  // lower-cased
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view tag) const {
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (tags[i] == tag) return static_cast<int>(i);
    }
    return -1;
  }
};

struct Block {
  std::string name;
  std::map<std::string, std::string> items;  // lower-cased tag -> value
  std::vector<Loop> loops;

  const Loop* loop_with(std::string_view tag) const {
    for (const auto& l : loops) {
      if (l.column(tag) >= 0) return &l;
    }
    return nullptr;
  }
  const std::string* item(std::string_view tag) const {
    auto it = items.find(std::string(tag));
    return it == items.end() ? nullptr : &it->second;
  }
};

struct Token {
  std::string value;
  bool quoted = false;
  std::size_t line = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  const auto lines = text::split_lines(text);
  std::vector<Token> out;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (!line.empty() && line.front() == ';') {
      // Multi-line text field, terminated by a line starting with ';'.
      std::string value(line.substr(1));
      const std::size_t start = ln;
      ++ln;
      while (ln < lines.size() && (lines[ln].empty() || lines[ln].front() != ';')) {
        value += '\n';
        value += lines[ln];
        ++ln;
      }
      if (ln >= lines.size()) {
        throw Error("MalformedCIF", "unterminated text field", text::line_context(start + 1));
      }
      out.push_back({value, true, start + 1});
      continue;
    }
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && text::is_blank(line[i])) ++i;
      if (i >= line.size() || line[i] == '#') break;
      if (line[i] == '\'' || line[i] == '"') {
        const char q = line[i];
        std::size_t j = i + 1;
        // A quote only closes when followed by whitespace or end of line.
        while (j < line.size() && !(line[j] == q && (j + 1 == line.size() || text::is_blank(line[j + 1])))) {
          ++j;
        }
        out.push_back({std::string(line.substr(i + 1, j - i - 1)), true, ln + 1});
        i = j + 1;
      } else {
        std::size_t j = i;
        while (j < line.size() && !text::is_blank(line[j])) ++j;
        out.push_back({std::string(line.substr(i, j - i)), false, ln + 1});
        i = j;
      }
    }
  }
  return out;
}

bool starts_with_ci(const std::string& s, std::string_view prefix) {
  return s.size() >= prefix.size() && text::iequals(std::string_view(s).substr(0, prefix.size()), prefix);
}

bool is_tag(const Token& t) { return !t.quoted && !t.value.empty() && t.value.front() == '_'; }
bool is_keyword(const Token& t) {
  return !t.quoted && (starts_with_ci(t.value, "data_") || text::iequals(t.value, "loop_") ||
                       starts_with_ci(t.value, "save_") || text::iequals(t.value, "global_") ||
                       text::iequals(t.value, "stop_"));
}

std::vector<Block> read_blocks(std::string_view text) {
  const auto toks = tokenize(text);
  std::vector<Block> blocks;
  std::size_t i = 0;
  auto current = [&]() -> Block& {
    if (blocks.empty()) throw Error("MalformedCIF", "data outside a data_ block", text::line_context(toks[i].line));
    return blocks.back();
  };
  while (i < toks.size()) {
    const Token& t = toks[i];
    if (!t.quoted && starts_with_ci(t.value, "data_")) {
      blocks.push_back(Block{t.value.substr(5), {}, {}});
      ++i;
    } else if (!t.quoted && text::iequals(t.value, "loop_")) {
      Block& b = current();
      Loop loop;
      ++i;
      while (i < toks.size() && is_tag(toks[i])) {
        loop.tags.push_back(text::lower(toks[i].value));
        ++i;
      }
      if (loop.tags.empty()) throw Error("MalformedCIF", "loop_ without tags", text::line_context(t.line));
      std::vector<std::string> row;
      while (i < toks.size() && !is_tag(toks[i]) && !is_keyword(toks[i])) {
        row.push_back(toks[i].value);
        if (row.size() == loop.tags.size()) {
          loop.rows.push_back(std::move(row));
          row.clear();
        }
        ++i;
      }
      if (!row.empty()) {
        throw Error("MalformedCIF", "loop values do not fill the last row", text::line_context(t.line));
      }
      b.loops.push_back(std::move(loop));
    } else if (is_tag(t)) {
      Block& b = current();
      if (i + 1 >= toks.size() || is_tag(toks[i + 1]) || is_keyword(toks[i + 1])) {
        throw Error("MalformedCIF", "tag " + t.value + " has no value", text::line_context(t.line));
      }
      b.items[text::lower(t.value)] = toks[i + 1].value;
      i += 2;
    } else {
      ++i;  // save frames, stray values: ignored
    }
  }
  return blocks;
}

// "5.4310(2)" -> 5.4310
std::optional<double> cif_number(std::string_view v) {
  const auto paren = v.find('(');
  if (paren != std::string_view::npos) v = v.substr(0, paren);
  return text::to_double(text::trim(v));
}

double cell_item(const Block& b, std::string_view tag) {
  const std::string* v = b.item(tag);
  if (!v) throw Error("MissingCell", "missing " + std::string(tag));
  auto x = cif_number(*v);
  if (!x) throw Error("MissingCell", "unreadable value '" + *v + "' for " + std::string(tag));
  return *x;
}

std::vector<SymmetryOp> read_symmetry(const Block& b) {
  static constexpr std::string_view kOpTags[] = {"_symmetry_equiv_pos_as_xyz",
                                                 "_space_group_symop_operation_xyz",
                                                 "_space_group_symop.operation_xyz",
                                                 "_symmetry_equiv.pos_as_xyz"};
  for (auto tag : kOpTags) {
    if (const Loop* l = b.loop_with(tag)) {
      const int col = l->column(tag);
      std::vector<SymmetryOp> ops;
      for (const auto& row : l->rows) ops.push_back(parse_symmetry_op(row[col]));
      return ops;
    }
    if (const std::string* v = b.item(tag)) return {parse_symmetry_op(*v)};
  }
  static constexpr std::string_view kNameTags[] = {"_symmetry_space_group_name_h-m",
                                                   "_space_group_name_h-m_alt",
                                                   "_space_group.name_h-m_alt"};
  static constexpr std::string_view kNumberTags[] = {"_symmetry_int_tables_number",
                                                     "_space_group_it_number",
                                                     "_space_group.it_number"};
  for (auto tag : kNameTags) {
    if (const std::string* v = b.item(tag)) {
      std::string compact;
      for (char c : *v) {
        if (!text::is_blank(c) && c != '_') compact += c;
      }
      if (!compact.empty() && compact != "?" && compact != "." && !text::iequals(compact, "P1")) {
        throw Error("UnsupportedSymmetry",
                    "space group '" + *v + "' is given without an explicit operator loop");
      }
    }
  }
  for (auto tag : kNumberTags) {
    if (const std::string* v = b.item(tag)) {
      auto n = text::to_long(text::trim(*v));
      if (n && *n != 1) {
        throw Error("UnsupportedSymmetry",
                    "space group number " + *v + " is given without an explicit operator loop");
      }
    }
  }
  return {identity_op()};
}

double wrap01(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w -= 1.0;  // x slightly below an integer rounds to 1.0
  return w;
}

bool same_site(const Vec3& a, const Vec3& b) {
  for (int c = 0; c < 3; ++c) {
    double d = std::abs(a[c] - b[c]);
    d = std::min(d, 1.0 - d);
    if (d > kDedupTolerance) return false;
  }
  return true;
}

}  // namespace

Lattice lattice_from_parameters(double a, double b, double c, double alpha_deg, double beta_deg,
                                double gamma_deg) {
  if (!(a > 0 && b > 0 && c > 0)) throw Error("DegenerateCell", "cell lengths must be positive");
  for (double ang : {alpha_deg, beta_deg, gamma_deg}) {
    if (!(ang > 0 && ang < 180)) throw Error("DegenerateCell", "cell angles must lie in (0, 180) degrees");
  }
  const double deg = std::numbers::pi / 180.0;
  const double ca = std::cos(alpha_deg * deg), cb = std::cos(beta_deg * deg), cg = std::cos(gamma_deg * deg);
  const double sg = std::sin(gamma_deg * deg);
  const double root = 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
  if (!(root > 1e-12)) throw Error("DegenerateCell", "cell angles do not form a valid parallelepiped");
  const Vec3 a1(a, 0.0, 0.0);
  const Vec3 a2(b * cg, b * sg, 0.0);
  const Vec3 a3(c * cb, c * (ca - cb * cg) / sg, c * std::sqrt(root) / sg);
  return Lattice(a1, a2, a3);
}

Structure parse_cif(std::string_view text) {
  const auto blocks = read_blocks(text);
  if (blocks.empty()) throw Error("MissingSites", "no data_ block found");
  const Block* block = nullptr;
  for (const auto& b : blocks) {
    if (b.loop_with("_atom_site_fract_x") || b.loop_with("_atom_site.fract_x")) {
      block = &b;
      break;
    }
  }
  if (!block) throw Error("MissingSites", "no _atom_site_fract_x loop found");
  const Block& b = *block;

  const Lattice lattice = lattice_from_parameters(
      cell_item(b, "_cell_length_a"), cell_item(b, "_cell_length_b"), cell_item(b, "_cell_length_c"),
      cell_item(b, "_cell_angle_alpha"), cell_item(b, "_cell_angle_beta"), cell_item(b, "_cell_angle_gamma"));
  const auto ops = read_symmetry(b);

  const bool mmcif_style = b.loop_with("_atom_site_fract_x") == nullptr;
  const auto tag = [&](std::string_view suffix) {
    return std::string(mmcif_style ? "_atom_site." : "_atom_site_") + std::string(suffix);
  };
  const Loop& sites = *b.loop_with(tag("fract_x"));
  const int cx = sites.column(tag("fract_x"));
  const int cy = sites.column(tag("fract_y"));
  const int cz = sites.column(tag("fract_z"));
  const int ctype = sites.column(tag("type_symbol"));
  const int clabel = sites.column(tag("label"));
  if (cy < 0 || cz < 0) throw Error("MissingSites", "atom-site loop lacks fract_y or fract_z");
  if (ctype < 0 && clabel < 0) throw Error("MissingSites", "atom-site loop has neither type_symbol nor label");

  Structure s;
  s.lattice = lattice;
  s.comment = b.name;
  for (std::size_t r = 0; r < sites.rows.size(); ++r) {
    const auto& row = sites.rows[r];
    Vec3 frac;
    for (int c = 0; c < 3; ++c) {
      const int col = c == 0 ? cx : (c == 1 ? cy : cz);
      auto v = cif_number(row[col]);
      if (!v) throw Error("MissingSites", "unreadable fractional coordinate '" + row[col] + "' in site " + std::to_string(r + 1));
      frac[c] = *v;
    }
    std::string species = ctype >= 0 && row[ctype] != "?" && row[ctype] != "." ? row[ctype] : row[clabel >= 0 ? clabel : ctype];
    const Element& element = element_lookup(species);

    std::vector<Vec3> images;
    for (const auto& op : ops) {
      Vec3 p = op.apply(frac);
      for (int c = 0; c < 3; ++c) p[c] = wrap01(p[c]);
      const bool seen = std::any_of(images.begin(), images.end(), [&](const Vec3& q) { return same_site(p, q); });
      if (!seen) images.push_back(p);
    }
    for (const Vec3& f : images) {
      Atom atom;
      atom.species = species;
      atom.element = element;
      atom.position = lattice.vectors().transpose() * f;
      atom.serial = static_cast<int>(s.atoms.size()) + 1;
      s.atoms.push_back(std::move(atom));
    }
  }
  return s;
}

}  // namespace mxv

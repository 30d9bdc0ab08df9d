#include <charconv>

#include "mxv/constants.hpp"
#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "text.hpp"

namespace mxv {
namespace {

// Walks the text line by line so the bulk data section can be scanned in place.
class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    if (pos_ >= text_.size()) return std::nullopt;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++line_no_;
    return line;
  }
  std::string_view rest() const { return pos_ >= text_.size() ? std::string_view{} : text_.substr(pos_); }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

[[noreturn]] void bad_header(const std::string& what, std::size_t line) {
  throw Error("BadHeader", what, text::line_context(line));
}

std::vector<double> numbers(std::string_view line, std::size_t want, std::size_t line_no, const char* what) {
  const auto toks = text::tokens(line);
  if (toks.size() < want) bad_header(std::string(what) + ": expected " + std::to_string(want) + " fields", line_no);
  std::vector<double> out;
  for (std::size_t i = 0; i < want; ++i) {
    auto v = text::to_double(toks[i]);
    if (!v) bad_header(std::string(what) + ": '" + std::string(toks[i]) + "' is not a number", line_no);
    out.push_back(*v);
  }
  return out;
}

long integer(double v, std::size_t line_no, const char* what) {
  const long n = static_cast<long>(v);
  if (static_cast<double>(n) != v) bad_header(std::string(what) + " must be an integer", line_no);
  return n;
}

}  // namespace

VolumetricGrid parse_cube(std::string_view source) {
  LineCursor cur(source);
  for (int c = 0; c < 2; ++c) {
    if (!cur.next()) bad_header("missing comment lines", cur.line_no() + 1);
  }
  const auto need_line = [&]() {
    auto l = cur.next();
    if (!l) bad_header("header ends early", cur.line_no() + 1);
    return *l;
  };

  VolumetricGrid g;
  const auto head = numbers(need_line(), 4, cur.line_no(), "atom count and origin");
  const long natoms_signed = integer(head[0], cur.line_no(), "atom count");
  Vec3 origin(head[1], head[2], head[3]);

  bool bohr = true;
  for (int axis = 0; axis < 3; ++axis) {
    const auto row = numbers(need_line(), 4, cur.line_no(), "grid axis");
    const long n = integer(row[0], cur.line_no(), "grid count");
    if (n == 0) bad_header("grid count must be non-zero", cur.line_no());
    // Positive counts mean Bohr, negative counts mean Å.
    const bool axis_bohr = n > 0;
    if (axis == 0) bohr = axis_bohr;
    g.dims[axis] = static_cast<int>(n > 0 ? n : -n);
    Vec3 step(row[1], row[2], row[3]);
    g.steps[axis] = axis_bohr ? Vec3(step * units::kBohrToAng) : step;
  }
  g.origin = bohr ? Vec3(origin * units::kBohrToAng) : origin;

  const long natoms = natoms_signed < 0 ? -natoms_signed : natoms_signed;
  for (long a = 0; a < natoms; ++a) {
    const auto row = numbers(need_line(), 5, cur.line_no(), "atom row");
    Atom atom;
    try {
      atom.element = element_by_number(static_cast<int>(integer(row[0], cur.line_no(), "atomic number")));
    } catch (const Error& e) {
      if (e.name() == "BadHeader") throw;
      throw Error(e.name(), e.what(), text::line_context(cur.line_no()));
    }
    atom.species = std::string(atom.element.symbol);
    const Vec3 p(row[2], row[3], row[4]);
    atom.position = bohr ? Vec3(p * units::kBohrToAng) : p;
    atom.serial = static_cast<int>(a) + 1;
    g.atoms.push_back(std::move(atom));
  }

  if (natoms_signed < 0) {
    const auto line = need_line();
    const auto toks = text::tokens(line);
    const auto m = toks.empty() ? std::nullopt : text::to_long(toks[0]);
    if (!m || *m < 1) bad_header("expected a dataset-id line", cur.line_no());
    if (*m > 1) {
      throw Error("MultiOrbitalUnsupported", "cube holds " + std::to_string(*m) + " datasets; only one is supported",
                  text::line_context(cur.line_no()));
    }
  }

  const std::size_t expected = g.point_count();
  g.values.reserve(expected);
  std::string_view rest = cur.rest();
  const char* p = rest.data();
  const char* end = rest.data() + rest.size();
  const std::size_t data_line = cur.line_no() + 1;
  while (g.values.size() < expected) {
    while (p < end && (text::is_blank(*p) || *p == '\n')) ++p;
    if (p >= end) break;
    const char* tok_end = p;
    while (tok_end < end && !text::is_blank(*tok_end) && *tok_end != '\n') ++tok_end;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(p, tok_end, v);
    if (ec != std::errc() || ptr != tok_end) {
      auto slow = text::to_double(std::string_view(p, static_cast<std::size_t>(tok_end - p)));
      if (!slow) {
        throw Error("BadHeader", "non-numeric grid value '" + std::string(p, tok_end) + "'",
                    "value " + std::to_string(g.values.size() + 1) + " (data starts at line " +
                        std::to_string(data_line) + ")");
      }
      v = *slow;
    }
    g.values.push_back(v);
    p = tok_end;
  }
  if (g.values.size() < expected) {
    throw Error("TruncatedData", "expected " + std::to_string(expected) + " values, got " + std::to_string(g.values.size()));
  }
  g.validate();
  return g;
}

}  // namespace mxv

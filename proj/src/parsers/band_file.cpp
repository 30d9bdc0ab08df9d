// OpenMX .Band files. Eigenvalue records are written spin-major: every
// k-point of every path segment for spin 0, then the same sequence for spin 1.

#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "text.hpp"

namespace mxv {
namespace {

class BandReader {
 public:
  explicit BandReader(std::string_view source) : lines_(text::split_lines(source)), stream_(lines_, 0) {}

  std::string_view token(const std::string& where) {
    auto t = stream_.next();
    if (!t) throw Error("TruncatedBand", "file ends while reading " + where, text::line_context(lines_.size()));
    return *t;
  }
  double real(const std::string& where) {
    auto tok = token(where);
    auto v = text::to_double(tok);
    if (!v) throw Error("MalformedBand", "expected a number for " + where + ", got '" + std::string(tok) + "'", context());
    return *v;
  }
  long integer(const std::string& where) {
    auto tok = token(where);
    auto v = text::to_long(tok);
    if (!v) throw Error("MalformedBand", "expected an integer for " + where + ", got '" + std::string(tok) + "'", context());
    return *v;
  }
  std::string label(const std::string& where) {
    std::string_view t = token(where);
    if (t.size() >= 2 && (t.front() == '\'' || t.front() == '"') && t.back() == t.front()) {
      t = t.substr(1, t.size() - 2);
    }
    return std::string(t);
  }
  std::string context() const { return text::line_context(stream_.line_no()); }

 private:
  std::vector<std::string_view> lines_;
  text::TokenStream stream_;
};

}  // namespace

BandData parse_band(std::string_view source) {
  BandReader in(source);
  BandData b;
  b.n_bands = static_cast<int>(in.integer("the band count"));
  if (b.n_bands < 0) throw Error("MalformedBand", "negative band count", in.context());
  const long spin_switch = in.integer("the spin switch");
  if (spin_switch != 0 && spin_switch != 1) {
    throw Error("MalformedBand", "spin switch must be 0 or 1", in.context());
  }
  b.spin_channels = spin_switch == 1 ? 2 : 1;
  b.chem_potential = in.real("the chemical potential");
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) b.reciprocal(r, c) = in.real("the reciprocal vectors");
  }
  const long nseg = in.integer("the number of k-path segments");
  if (nseg < 0) throw Error("MalformedBand", "negative segment count", in.context());
  for (long s = 0; s < nseg; ++s) {
    const std::string where = "segment " + std::to_string(s + 1);
    KPathSegment seg;
    seg.n_points = static_cast<int>(in.integer(where));
    if (seg.n_points < 0) throw Error("MalformedBand", "negative k-point count", in.context());
    for (int c = 0; c < 3; ++c) seg.k_start[c] = in.real(where);
    for (int c = 0; c < 3; ++c) seg.k_end[c] = in.real(where);
    seg.label_start = in.label(where);
    seg.label_end = in.label(where);
    seg.kpoints.resize(static_cast<std::size_t>(seg.n_points));
    for (auto& kp : seg.kpoints) kp.energies.resize(static_cast<std::size_t>(b.spin_channels));
    b.segments.push_back(std::move(seg));
  }
  for (int spin = 0; spin < b.spin_channels; ++spin) {
    for (std::size_t s = 0; s < b.segments.size(); ++s) {
      auto& seg = b.segments[s];
      for (int k = 0; k < seg.n_points; ++k) {
        const std::string where = "spin " + std::to_string(spin) + ", segment " + std::to_string(s + 1) +
                                  ", k-point " + std::to_string(k + 1);
        const long n = in.integer(where);
        if (n != b.n_bands) {
          throw Error("BandCountMismatch",
                      where + " lists " + std::to_string(n) + " bands, header says " + std::to_string(b.n_bands),
                      in.context());
        }
        KPoint& kp = seg.kpoints[static_cast<std::size_t>(k)];
        Vec3 kf;
        for (int c = 0; c < 3; ++c) kf[c] = in.real(where);
        if (spin == 0) kp.k = kf;
        auto& e = kp.energies[static_cast<std::size_t>(spin)];
        e.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) e.push_back(in.real(where));
      }
    }
  }
  b.validate();
  return b;
}

}  // namespace mxv

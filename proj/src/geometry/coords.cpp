#include <charconv>

#include "mxv/error.hpp"
#include "mxv/geometry.hpp"

namespace mxv {

Vec3 frac_to_cart(const Vec3& frac, const Lattice& lattice) { return lattice.vectors().transpose() * frac; }

Vec3 cart_to_frac(const Vec3& cart, const Lattice& lattice) {
  // Lattice construction already rejected singular matrices.
  return lattice.vectors().transpose().partialPivLu().solve(cart);
}

Structure make_supercell(const Structure& s, int na, int nb, int nc) {
  const Lattice& lat = s.require_lattice("supercell");
  if (na < 1 || nb < 1 || nc < 1) {
    throw Error("BadSupercell", "supercell counts must be positive integers");
  }
  Structure out;
  out.comment = s.comment;
  out.lattice = Lattice(lat.vector(0) * na, lat.vector(1) * nb, lat.vector(2) * nc);
  out.atoms.reserve(s.atoms.size() * static_cast<std::size_t>(na) * nb * nc);
  int serial = 1;
  for (const Atom& atom : s.atoms) {
    for (int p = 0; p < na; ++p) {
      for (int q = 0; q < nb; ++q) {
        for (int r = 0; r < nc; ++r) {
          Atom copy = atom;
          copy.position = atom.position + lat.vector(0) * p + lat.vector(1) * q + lat.vector(2) * r;
          copy.serial = serial++;
          out.atoms.push_back(std::move(copy));
        }
      }
    }
  }
  return out;
}

}  // namespace mxv

namespace mxv {

std::array<int, 3> parse_dims(std::string_view text) {
  std::string t(text);
  for (const std::string sep : {"×", "*", "X"}) {
    for (std::size_t p = t.find(sep); p != std::string::npos; p = t.find(sep)) t.replace(p, sep.size(), "x");
  }
  std::array<int, 3> out{};
  std::size_t start = 0;
  for (int c = 0; c < 3; ++c) {
    const std::size_t end = c < 2 ? t.find('x', start) : t.size();
    if (end == std::string::npos) throw Error("BadSupercell", "expected AxBxC, got '" + std::string(text) + "'");
    const std::string part = t.substr(start, end - start);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || v < 1) {
      throw Error("BadSupercell", "expected AxBxC with positive integers, got '" + std::string(text) + "'");
    }
    out[static_cast<std::size_t>(c)] = v;
    start = end + 1;
  }
  return out;
}

}  // namespace mxv

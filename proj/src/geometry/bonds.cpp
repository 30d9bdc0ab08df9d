#include <algorithm>
#include <cmath>

#include "mxv/error.hpp"
#include "mxv/geometry.hpp"

namespace mxv {
namespace {

// A candidate partner: atom `atom` translated by lattice image `image`.
struct Ghost {
  Vec3 position;
  std::size_t atom;
  std::array<int, 3> image;
};

// Uniform bins in a compressed (CSR) layout over an axis-aligned box.
class BinGrid {
 public:
  BinGrid(const std::vector<Ghost>& ghosts, double cell) {
    lo_ = ghosts.front().position;
    Vec3 hi = lo_;
    for (const auto& g : ghosts) {
      lo_ = lo_.cwiseMin(g.position);
      hi = hi.cwiseMax(g.position);
    }
    // Keep the bin count proportional to the number of points for sparse inputs.
    const Vec3 extent = (hi - lo_).cwiseMax(Vec3::Constant(1e-9));
    const double budget = 8.0 * static_cast<double>(ghosts.size()) + 64.0;
    while (((extent / cell).array().floor() + 1.0).prod() > budget) cell *= 1.5;
    cell_ = cell;
    for (int c = 0; c < 3; ++c) dims_[c] = static_cast<int>(std::floor(extent[c] / cell_)) + 1;

    std::vector<std::size_t> key(ghosts.size());
    offsets_.assign(bin_count() + 1, 0);
    for (std::size_t g = 0; g < ghosts.size(); ++g) {
      key[g] = flat(bin_of(ghosts[g].position));
      ++offsets_[key[g] + 1];
    }
    for (std::size_t b = 0; b < bin_count(); ++b) offsets_[b + 1] += offsets_[b];
    members_.resize(ghosts.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t g = 0; g < ghosts.size(); ++g) members_[fill[key[g]]++] = g;
  }

  std::array<int, 3> bin_of(const Vec3& p) const {
    std::array<int, 3> b{};
    for (int c = 0; c < 3; ++c) {
      b[c] = std::clamp(static_cast<int>(std::floor((p[c] - lo_[c]) / cell_)), 0, dims_[c] - 1);
    }
    return b;
  }

  template <class Visit>
  void for_each_near(const Vec3& p, Visit&& visit) const {
    const auto b = bin_of(p);
    for (int x = std::max(b[0] - 1, 0); x <= std::min(b[0] + 1, dims_[0] - 1); ++x)
      for (int y = std::max(b[1] - 1, 0); y <= std::min(b[1] + 1, dims_[1] - 1); ++y)
        for (int z = std::max(b[2] - 1, 0); z <= std::min(b[2] + 1, dims_[2] - 1); ++z) {
          const std::size_t f = flat({x, y, z});
          for (std::size_t m = offsets_[f]; m < offsets_[f + 1]; ++m) visit(members_[m]);
        }
  }

 private:
  std::size_t bin_count() const { return static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2]; }
  std::size_t flat(const std::array<int, 3>& b) const {
    return (static_cast<std::size_t>(b[0]) * dims_[1] + b[1]) * dims_[2] + b[2];
  }

  Vec3 lo_;
  double cell_ = 1.0;
  std::array<int, 3> dims_{1, 1, 1};
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> members_;
};

}  // namespace

std::vector<Bond> detect_bonds(const Structure& s, double bond_factor) {
  if (!(bond_factor > 0.0)) throw Error("BadBondFactor", "bond factor must be positive");
  std::vector<Bond> bonds;
  const std::size_t n = s.atoms.size();
  if (n < 2) return bonds;

  double max_radius = 0.0;
  for (const auto& a : s.atoms) max_radius = std::max(max_radius, a.element.covalent_radius);
  const double max_cutoff = bond_factor * 2.0 * max_radius;

  // Home positions, wrapped into the cell for periodic structures. `shift`
  // records the integer translation removed by the wrap.
  std::vector<Vec3> home(n);
  std::vector<std::array<int, 3>> shift(n, {0, 0, 0});
  std::vector<Ghost> ghosts;
  if (s.lattice) {
    const Lattice& lat = *s.lattice;
    const Vec3 widths = lat.perpendicular_widths();
    if (widths.minCoeff() < max_cutoff) {
      throw Error("CellTooSmall", "a cell width (" + std::to_string(widths.minCoeff()) +
                                      " Å) is shorter than the largest bond cutoff (" + std::to_string(max_cutoff) +
                                      " Å); build a supercell first");
    }
    const Mat3 to_cart = lat.vectors().transpose();
    const auto lu = to_cart.partialPivLu();
    ghosts.reserve(27 * n);
    for (std::size_t a = 0; a < n; ++a) {
      Vec3 f = lu.solve(s.atoms[a].position);
      for (int c = 0; c < 3; ++c) {
        const double fl = std::floor(f[c]);
        shift[a][c] = static_cast<int>(fl);
        f[c] -= fl;
      }
      home[a] = to_cart * f;
      for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
          for (int z = -1; z <= 1; ++z) ghosts.push_back({home[a] + to_cart * Vec3(x, y, z), a, {x, y, z}});
    }
  } else {
    ghosts.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
      home[a] = s.atoms[a].position;
      ghosts.push_back({home[a], a, {0, 0, 0}});
    }
  }

  const BinGrid grid(ghosts, std::max(max_cutoff, 1e-3));
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = s.atoms[i].element.covalent_radius;
    grid.for_each_near(home[i], [&](std::size_t g) {
      const Ghost& gh = ghosts[g];
      if (gh.atom <= i) return;
      const double d = (gh.position - home[i]).norm();
      const double cutoff = bond_factor * (ri + s.atoms[gh.atom].element.covalent_radius);
      if (d <= kMinBondLength || d > cutoff) return;
      Bond b;
      b.i = i;
      b.j = gh.atom;
      for (int c = 0; c < 3; ++c) b.image[c] = gh.image[c] - shift[gh.atom][c] + shift[i][c];
      b.length = d;
      bonds.push_back(b);
    });
  }
  std::sort(bonds.begin(), bonds.end());
  return bonds;
}

}  // namespace mxv

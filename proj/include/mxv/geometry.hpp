#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mxv/model.hpp"

namespace mxv {

/// c = f^T * vectors
Vec3 frac_to_cart(const Vec3& frac, const Lattice& lattice);
Vec3 cart_to_frac(const Vec3& cart, const Lattice& lattice);

/// Replicates the cell na x nb x nc times. Atom order is (original atom, p, q, r)
/// lexicographic and serials are renumbered from 1. Throws NeedsLattice for
/// molecules and BadSupercell for non-positive counts.
Structure make_supercell(const Structure& s, int na, int nb, int nc);

/// Parses "AxBxC" (also accepts '*' or the multiplication sign) into positive
/// counts. Throws BadSupercell.
std::array<int, 3> parse_dims(std::string_view text);

struct Bond {
  std::size_t i = 0;
  std::size_t j = 0;                    // i < j
  std::array<int, 3> image{0, 0, 0};    // lattice translation applied to atom j
  double length = 0.0;                  // Å

  friend bool operator==(const Bond&, const Bond&) = default;
  friend auto operator<=>(const Bond& a, const Bond& b) {
    if (auto c = a.i <=> b.i; c != 0) return c;
    if (auto c = a.j <=> b.j; c != 0) return c;
    return a.image <=> b.image;
  }
};

inline constexpr double kMinBondLength = 0.4;  // Å

/// Bonds A-B with 0.4 Å < d <= factor * (r_cov(A) + r_cov(B)). Periodic
/// structures are searched over the 27 neighbouring cell images using
/// spatial binning. The result is sorted by (i, j, image).
/// Throws CellTooSmall when a cell width is below the largest cutoff.
std::vector<Bond> detect_bonds(const Structure& s, double bond_factor = 1.0);

/// Ångström distance between two points.
double distance(const Vec3& p1, const Vec3& p2);
/// Angle at p2 in degrees. Throws DegenerateGeometry for a zero-length arm.
double angle(const Vec3& p1, const Vec3& p2, const Vec3& p3);
/// Signed dihedral about p2-p3 in degrees, range (-180, 180]. Throws
/// DegenerateGeometry when a bond vector vanishes or three points are collinear.
double dihedral(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4);

struct PickedAtom {
  int serial = 0;
  std::string species;
  std::string symbol;
  Vec3 position = Vec3::Zero();
};

struct MeasurementReport {
  std::vector<PickedAtom> picked;
  std::vector<double> distances;  // (1-2), (2-3), (3-4)
  std::vector<double> angles;     // (1-2-3), (2-3-4)
  std::optional<double> dihedral;
  std::optional<std::string> dihedral_note;  // why a 4-pick dihedral is absent
};

/// Measures 1..4 atoms picked in order (0-based indices). Throws BadIndex,
/// DuplicatePick, or BadPickCount.
MeasurementReport measure_selection(const Structure& s, std::span<const std::size_t> picks);

/// 1-based atom numbers as typed by a user to 0-based picks. Throws BadIndex
/// for numbers below 1.
std::vector<std::size_t> picks_from_serials(std::span<const long long> serials);

}  // namespace mxv

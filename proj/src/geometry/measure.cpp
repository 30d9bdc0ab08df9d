#include <algorithm>
#include <cmath>
#include <numbers>

#include "mxv/error.hpp"
#include "mxv/geometry.hpp"

namespace mxv {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

double distance(const Vec3& p1, const Vec3& p2) { return (p1 - p2).norm(); }

double angle(const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  const Vec3 u = p1 - p2;
  const Vec3 v = p3 - p2;
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw Error("DegenerateGeometry", "angle arm has zero length");
  // Clamp before acos: rounding can push the cosine just past +-1.
  const double cosine = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  return std::acos(cosine) * kRadToDeg;
}

double dihedral(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
  const Vec3 b1 = p2 - p1;
  const Vec3 b2 = p3 - p2;
  const Vec3 b3 = p4 - p3;
  const double l1 = b1.norm(), l2 = b2.norm(), l3 = b3.norm();
  if (l1 == 0.0 || l2 == 0.0 || l3 == 0.0) throw Error("DegenerateGeometry", "dihedral bond vector has zero length");
  const Vec3 n1 = b1.cross(b2);
  const Vec3 n2 = b2.cross(b3);
  constexpr double kCollinear = 1e-10;
  if (n1.norm() <= kCollinear * l1 * l2 || n2.norm() <= kCollinear * l2 * l3) {
    throw Error("DegenerateGeometry", "three consecutive points are collinear");
  }
  double deg = std::atan2(l2 * b1.dot(n2), n1.dot(n2)) * kRadToDeg;
  if (deg <= -180.0) deg = 180.0;
  return deg;
}

MeasurementReport measure_selection(const Structure& s, std::span<const std::size_t> picks) {
  if (picks.empty() || picks.size() > 4) {
    throw Error("BadPickCount", "pick between one and four atoms, got " + std::to_string(picks.size()));
  }
  for (std::size_t a = 0; a < picks.size(); ++a) {
    if (picks[a] >= s.atoms.size()) {
      throw Error("BadIndex", "atom " + std::to_string(picks[a] + 1) + " does not exist (structure has " +
                                  std::to_string(s.atoms.size()) + " atoms)");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (picks[a] == picks[b]) throw Error("DuplicatePick", "atom " + std::to_string(picks[a] + 1) + " was picked twice");
    }
  }
  MeasurementReport report;
  std::vector<Vec3> p;
  for (std::size_t idx : picks) {
    const Atom& atom = s.atoms[idx];
    report.picked.push_back({atom.serial, atom.species, std::string(atom.element.symbol), atom.position});
    p.push_back(atom.position);
  }
  for (std::size_t k = 0; k + 1 < p.size(); ++k) report.distances.push_back(distance(p[k], p[k + 1]));
  for (std::size_t k = 0; k + 2 < p.size(); ++k) report.angles.push_back(angle(p[k], p[k + 1], p[k + 2]));
  if (p.size() == 4) {
    try {
      report.dihedral = dihedral(p[0], p[1], p[2], p[3]);
    } catch (const Error& e) {
      report.dihedral_note = e.name();
    }
  }
  return report;
}

}  // namespace mxv

namespace mxv {

std::vector<std::size_t> picks_from_serials(std::span<const long long> serials) {
  std::vector<std::size_t> out;
  out.reserve(serials.size());
  for (long long s : serials) {
    if (s < 1) throw Error("BadIndex", "atom numbers start at 1, got " + std::to_string(s));
    out.push_back(static_cast<std::size_t>(s - 1));
  }
  return out;
}

}  // namespace mxv

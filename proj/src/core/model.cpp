#include <algorithm>
#include "mxv/model.hpp"

#include <cmath>
#include <numbers>

#include "mxv/error.hpp"

namespace mxv {

Lattice::Lattice(const Mat3& rows) : rows_(rows) {
  if (!rows_.allFinite()) {
    throw Error("SingularLattice", "lattice vectors contain non-finite entries");
  }
  const double scale = rows_.rowwise().norm().prod();
  if (scale == 0.0 || std::abs(rows_.determinant()) <= 1e-12 * scale) {
    throw Error("SingularLattice", "lattice vectors are linearly dependent");
  }
}

Lattice::Lattice(const Vec3& a1, const Vec3& a2, const Vec3& a3)
    : Lattice([&] {
        Mat3 m;
        m.row(0) = a1.transpose();
        m.row(1) = a2.transpose();
        m.row(2) = a3.transpose();
        return m;
      }()) {}

std::array<double, 6> Lattice::parameters() const {
  const Vec3 a = vector(0), b = vector(1), c = vector(2);
  const auto angle = [](const Vec3& u, const Vec3& v) {
    const double cosine = std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0);
    return std::acos(cosine) * 180.0 / std::numbers::pi;
  };
  return {a.norm(), b.norm(), c.norm(), angle(b, c), angle(a, c), angle(a, b)};
}

Vec3 Lattice::perpendicular_widths() const {
  const double vol = volume();
  const Vec3 a = vector(0), b = vector(1), c = vector(2);
  return {vol / b.cross(c).norm(), vol / c.cross(a).norm(), vol / a.cross(b).norm()};
}

const Lattice& Structure::require_lattice(const char* operation) const {
  if (!lattice) {
    throw Error("NeedsLattice", std::string(operation) + " requires a periodic cell");
  }
  return *lattice;
}

void Trajectory::check_consistent() const {
  if (frames.empty()) return;
  const Structure& first = frames.front();
  for (std::size_t f = 1; f < frames.size(); ++f) {
    const Structure& s = frames[f];
    if (s.size() != first.size()) {
      throw Error("InconsistentFrames",
                  "frame " + std::to_string(f + 1) + " has " + std::to_string(s.size()) +
                      " atoms, expected " + std::to_string(first.size()));
    }
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (s.atoms[a].species != first.atoms[a].species) {
        throw Error("InconsistentFrames", "frame " + std::to_string(f + 1) +
                                              " changes the species of atom " +
                                              std::to_string(a + 1));
      }
    }
  }
}

Mat3 VolumetricGrid::step_matrix() const {
  Mat3 m;
  for (int c = 0; c < 3; ++c) m.col(c) = steps[c];
  return m;
}

Lattice VolumetricGrid::cell() const {
  return Lattice(steps[0] * dims[0], steps[1] * dims[1], steps[2] * dims[2]);
}

double VolumetricGrid::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void VolumetricGrid::validate() const {
  for (int d : dims) {
    if (d <= 0) throw Error("BadHeader", "grid dimensions must be positive");
  }
  if (values.size() != point_count()) {
    throw Error("BadHeader", "grid holds " + std::to_string(values.size()) + " values, expected " +
                                 std::to_string(point_count()));
  }
  const Mat3 v = step_matrix();
  const double scale = v.colwise().norm().prod();
  if (scale == 0.0 || std::abs(v.determinant()) <= 1e-12 * scale) {
    throw Error("SingularSteps", "voxel step vectors are linearly dependent");
  }
}

void BandData::validate() const {
  if (spin_channels != 1 && spin_channels != 2) {
    throw Error("BandCountMismatch", "spin channel count must be 1 or 2");
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (static_cast<int>(seg.kpoints.size()) != seg.n_points) {
      throw Error("TruncatedBand", "segment " + std::to_string(s + 1) + " carries " +
                                       std::to_string(seg.kpoints.size()) + " k-points, expected " +
                                       std::to_string(seg.n_points));
    }
    for (const auto& kp : seg.kpoints) {
      if (static_cast<int>(kp.energies.size()) != spin_channels) {
        throw Error("BandCountMismatch", "k-point has the wrong number of spin channels");
      }
      for (const auto& e : kp.energies) {
        if (static_cast<int>(e.size()) != n_bands) {
          throw Error("BandCountMismatch", "k-point carries " + std::to_string(e.size()) +
                                               " eigenvalues, expected " + std::to_string(n_bands));
        }
      }
    }
  }
}

}  // namespace mxv

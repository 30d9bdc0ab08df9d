#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mxv/element.hpp"

namespace mxv {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Three lattice vectors a1, a2, a3 stored as the rows of a matrix (Å).
class Lattice {
 public:
  /// Throws SingularLattice when the determinant vanishes or an entry is not finite.
  explicit Lattice(const Mat3& rows);
  Lattice(const Vec3& a1, const Vec3& a2, const Vec3& a3);

  const Mat3& vectors() const { return rows_; }
  Vec3 vector(int i) const { return rows_.row(i).transpose(); }
  double volume() const { return std::abs(rows_.determinant()); }

  /// Cell parameters (a, b, c in Å; alpha, beta, gamma in degrees).
  std::array<double, 6> parameters() const;

  /// Distance between opposite faces of the cell, per lattice direction.
  Vec3 perpendicular_widths() const;

 private:
  Mat3 rows_;
};

struct AtomProperties {
  std::optional<double> net_charge;  // e
  std::optional<double> spin;        // μ_B
  std::optional<Vec3> force;         // Hartree/Bohr
  std::optional<Vec3> velocity;      // atomic units
  std::optional<double> spin_up;     // e
  std::optional<double> spin_down;   // e

  bool empty() const {
    return !net_charge && !spin && !force && !velocity && !spin_up && !spin_down;
  }
};

struct Atom {
  std::string species;
  Element element;
  Vec3 position = Vec3::Zero();  // Cartesian, Å
  int serial = 1;
  AtomProperties properties;
};

struct Structure {
  std::vector<Atom> atoms;
  std::optional<Lattice> lattice;
  std::string comment;

  std::size_t size() const { return atoms.size(); }
  /// Throws NeedsLattice for molecules.
  const Lattice& require_lattice(const char* operation) const;
};

struct Trajectory {
  std::vector<Structure> frames;
  std::vector<std::optional<double>> energies;  // Hartree, one entry per frame
  std::vector<std::optional<double>> times;     // fs, one entry per frame

  /// Throws InconsistentFrames unless all frames share atom count and species order.
  void check_consistent() const;
};

// Scalar samples on a regular grid. Point (i, j, k) sits at
// origin + i*e1 + j*e2 + k*e3 and its value lives at i*n2*n3 + j*n3 + k.
struct VolumetricGrid {
  Vec3 origin = Vec3::Zero();
  std::array<Vec3, 3> steps{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};  // Å
  std::array<int, 3> dims{0, 0, 0};
  std::vector<double> values;
  std::vector<Atom> atoms;

  std::size_t point_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + k;
  }
  double at(int i, int j, int k) const { return values[index(i, j, k)]; }

  /// Columns are the voxel step vectors.
  Mat3 step_matrix() const;
  /// Lattice spanned by dims[i] * steps[i]; throws SingularLattice for flat steps.
  Lattice cell() const;
  double max_abs() const;
  /// Throws BadHeader when the value count or the step matrix is inconsistent.
  void validate() const;
};

enum class MeshSign { positive, negative };

struct TriangleMesh {
  std::vector<Vec3> vertices;  // Å
  std::vector<Vec3> normals;   // unit length, one per vertex
  std::vector<std::array<std::uint32_t, 3>> triangles;
  double isovalue = 0.0;
  MeshSign sign = MeshSign::positive;

  bool empty() const { return triangles.empty(); }
};

struct KPoint {
  Vec3 k = Vec3::Zero();  // fractional, in units of the reciprocal vectors
  // energies[spin][band], Hartree
  std::vector<std::vector<double>> energies;
};

struct KPathSegment {
  int n_points = 0;
  Vec3 k_start = Vec3::Zero();
  Vec3 k_end = Vec3::Zero();
  std::string label_start;
  std::string label_end;
  std::vector<KPoint> kpoints;
};

struct BandData {
  int n_bands = 0;
  int spin_channels = 1;
  double chem_potential = 0.0;  // Hartree
  Mat3 reciprocal = Mat3::Identity();  // rows b1, b2, b3 in 1/Bohr
  std::vector<KPathSegment> segments;

  /// Throws BandCountMismatch / TruncatedBand when record counts disagree.
  void validate() const;
};

}  // namespace mxv

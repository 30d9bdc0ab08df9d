#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "mxv/model.hpp"

namespace mxv::iso {

enum class Algorithm { marching_cubes, marching_tetrahedra, surface_nets };

std::string_view to_string(Algorithm a);
/// Accepts "mc", "mt", "sn" and the long names; throws BadAlgorithm otherwise.
Algorithm parse_algorithm(std::string_view name);

// How samples beyond the last grid point are obtained.
//   periodic: index i reads grid point i mod n, so a cell of n points spans
//             n cells and tiles seamlessly (cube files of crystals).
//   open:     only the n-1 cells between existing points are meshed.
enum class Boundary { periodic, open };

// Index-space view of a VolumetricGrid, optionally tiled into a supercell and
// optionally negated. Holds a reference: the grid must outlive the field.
class ScalarField {
 public:
  explicit ScalarField(const VolumetricGrid& grid, std::array<int, 3> supercell = {1, 1, 1},
                       Boundary boundary = Boundary::periodic);

  ScalarField negated() const;

  const VolumetricGrid& grid() const { return *grid_; }
  std::array<int, 3> supercell() const { return supercell_; }
  Boundary boundary() const { return boundary_; }

  /// Number of cells along each axis of the (tiled) index box.
  std::array<int, 3> cells() const { return cells_; }
  /// Number of sample points along each axis (cells + 1).
  std::array<int, 3> points() const { return {cells_[0] + 1, cells_[1] + 1, cells_[2] + 1}; }

  /// Sample at integer index; valid for 0 <= index < points().
  double value(int i, int j, int k) const {
    return sign_ * grid_->values[static_cast<std::size_t>(wrap_[0][i]) + wrap_[1][j] + wrap_[2][k]];
  }
  /// Central-difference gradient in index units (one-sided at open edges).
  Vec3 gradient(int i, int j, int k) const;

 private:
  const VolumetricGrid* grid_;
  std::array<int, 3> supercell_;
  Boundary boundary_;
  std::array<int, 3> cells_{};
  double sign_ = 1.0;
  // Per-axis lookup from tiled index (0 .. points-1) to the flattened offset of
  // the wrapped grid index along that axis.
  std::array<std::vector<std::size_t>, 3> wrap_;
};

// Mesh in continuous index coordinates (units of voxels).
struct IndexMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;  // unit, pointing toward decreasing field
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

struct ExtractOptions {
  // Worker threads for slab-parallel extraction; 0 picks hardware concurrency.
  // The output does not depend on this value.
  unsigned threads = 0;
};

/// max |value| / 200. Throws EmptyGrid for a grid without values.
double default_isovalue(const VolumetricGrid& g);

/// Classic 256-case marching cubes. Vertices are welded by edge identity.
IndexMesh marching_cubes(const ScalarField& f, double iso, const ExtractOptions& opt = {});
/// Six tetrahedra per cell around the (0,0,0)-(1,1,1) diagonal.
IndexMesh marching_tetrahedra(const ScalarField& f, double iso, const ExtractOptions& opt = {});
/// Naive surface nets: one vertex per sign-changing cell at the centroid of
/// its edge crossings, one quad per crossing edge.
IndexMesh surface_nets(const ScalarField& f, double iso, const ExtractOptions& opt = {});

IndexMesh extract(Algorithm a, const ScalarField& f, double iso, const ExtractOptions& opt = {});

/// Number of cells whose corners are not all on the same side of `iso`.
std::size_t count_sign_changing_cells(const ScalarField& f, double iso);

/// Maps index space onto the lattice: p = origin + V * idx with V's columns
/// the voxel steps; normals use the inverse transpose. Winding flips when
/// det(V) < 0. Throws SingularSteps.
TriangleMesh transform_mesh(const IndexMesh& m, const VolumetricGrid& g, double isovalue, MeshSign sign);

struct MeshPair {
  TriangleMesh positive;
  TriangleMesh negative;
};

/// Positive mesh from f at +iso and negative mesh from -f at +iso, both in
/// Cartesian Å. Throws BadIsovalue unless iso > 0.
MeshPair extract_pair(const VolumetricGrid& g, double iso, Algorithm a, std::array<int, 3> supercell = {1, 1, 1},
                      const ExtractOptions& opt = {});

struct EvolutionState {
  double iso = 0.0;
  int direction = +1;   // +1 raises the isovalue, -1 lowers it
  double delay = 0.25;  // seconds between ticks
  double step = 0.0;    // isovalue change per tick
};

/// Step used when the caller does not choose one: default_isovalue / 10.
double default_evolution_step(const VolumetricGrid& g);

/// iso + direction * step clamped into (0, max_abs]. A step that would reach
/// zero or below leaves the isovalue where it is. Throws BadStep unless step > 0.
double evolve_isovalue(const EvolutionState& state, double max_abs);

}  // namespace mxv::iso

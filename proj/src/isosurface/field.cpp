#include <cmath>

#include "common.hpp"
#include "mxv/error.hpp"

namespace mxv::iso {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::marching_cubes: return "marching_cubes";
    case Algorithm::marching_tetrahedra: return "marching_tetrahedra";
    case Algorithm::surface_nets: return "surface_nets";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "mc" || name == "marching_cubes") return Algorithm::marching_cubes;
  if (name == "mt" || name == "marching_tetrahedra") return Algorithm::marching_tetrahedra;
  if (name == "sn" || name == "surface_nets") return Algorithm::surface_nets;
  throw Error("BadAlgorithm", "unknown isosurface algorithm '" + std::string(name) + "' (use mc, mt or sn)");
}

ScalarField::ScalarField(const VolumetricGrid& grid, std::array<int, 3> supercell, Boundary boundary)
    : grid_(&grid), supercell_(supercell), boundary_(boundary) {
  for (int c = 0; c < 3; ++c) {
    if (supercell[c] < 1) throw Error("BadSupercell", "supercell counts must be positive");
    if (grid.dims[c] < 1) throw Error("EmptyGrid", "grid has no points along axis " + std::to_string(c + 1));
  }
  if (grid.values.size() != grid.point_count()) throw Error("BadHeader", "value count does not match grid dimensions");
  if (boundary == Boundary::open && supercell != std::array<int, 3>{1, 1, 1}) {
    throw Error("BadSupercell", "an open-boundary field cannot be tiled");
  }
  const std::array<std::size_t, 3> stride{static_cast<std::size_t>(grid.dims[1]) * grid.dims[2],
                                          static_cast<std::size_t>(grid.dims[2]), 1};
  for (int c = 0; c < 3; ++c) {
    const int n = grid.dims[c];
    cells_[c] = boundary == Boundary::periodic ? supercell[c] * n : n - 1;
    wrap_[c].resize(static_cast<std::size_t>(cells_[c]) + 1);
    for (int i = 0; i <= cells_[c]; ++i) wrap_[c][static_cast<std::size_t>(i)] = static_cast<std::size_t>(i % n) * stride[c];
  }
}

ScalarField ScalarField::negated() const {
  ScalarField f = *this;
  f.sign_ = -sign_;
  return f;
}

Vec3 ScalarField::gradient(int i, int j, int k) const {
  const std::array<int, 3> p{i, j, k};
  const auto pts = points();
  Vec3 g;
  for (int c = 0; c < 3; ++c) {
    std::array<int, 3> lo = p, hi = p;
    double span = 2.0;
    if (boundary_ == Boundary::periodic) {
      // Point pts-1 coincides with point 0, so stepping past either end wraps
      // to the neighbour of the coincident point.
      lo[c] = p[c] == 0 ? pts[c] - 2 : p[c] - 1;
      hi[c] = p[c] == pts[c] - 1 ? 1 : p[c] + 1;
      if (pts[c] < 2 || cells_[c] < 1) {
        g[c] = 0.0;
        continue;
      }
      if (lo[c] < 0) lo[c] = 0;
      if (hi[c] > pts[c] - 1) hi[c] = pts[c] - 1;
    } else {
      if (pts[c] < 2) {
        g[c] = 0.0;
        continue;
      }
      if (p[c] == 0) {
        lo[c] = 0;
        hi[c] = 1;
        span = 1.0;
      } else if (p[c] == pts[c] - 1) {
        lo[c] = p[c] - 1;
        hi[c] = p[c];
        span = 1.0;
      } else {
        lo[c] = p[c] - 1;
        hi[c] = p[c] + 1;
      }
    }
    g[c] = (value(hi[0], hi[1], hi[2]) - value(lo[0], lo[1], lo[2])) / span;
  }
  return g;
}

double default_isovalue(const VolumetricGrid& g) {
  if (g.values.empty()) throw Error("EmptyGrid", "grid has no values");
  return g.max_abs() / 200.0;
}

double default_evolution_step(const VolumetricGrid& g) { return default_isovalue(g) / 10.0; }

double evolve_isovalue(const EvolutionState& s, double max_abs) {
  if (!(s.step > 0.0)) throw Error("BadStep", "isovalue step must be positive");
  const double next = s.iso + (s.direction >= 0 ? s.step : -s.step);
  if (next <= 0.0) return s.iso;
  return std::min(next, max_abs);
}

IndexMesh extract(Algorithm a, const ScalarField& f, double iso, const ExtractOptions& opt) {
  switch (a) {
    case Algorithm::marching_cubes: return marching_cubes(f, iso, opt);
    case Algorithm::marching_tetrahedra: return marching_tetrahedra(f, iso, opt);
    case Algorithm::surface_nets: return surface_nets(f, iso, opt);
  }
  throw Error("BadAlgorithm", "unknown isosurface algorithm");
}

std::size_t count_sign_changing_cells(const ScalarField& f, double iso) {
  const auto cells = f.cells();
  std::size_t count = 0;
  for (int i = 0; i < cells[0]; ++i)
    for (int j = 0; j < cells[1]; ++j)
      for (int k = 0; k < cells[2]; ++k) {
        int inside = 0;
        for (int c = 0; c < 8; ++c) inside += f.value(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1)) >= iso;
        if (inside != 0 && inside != 8) ++count;
      }
  return count;
}

TriangleMesh transform_mesh(const IndexMesh& m, const VolumetricGrid& g, double isovalue, MeshSign sign) {
  const Mat3 v = g.step_matrix();
  const double det = v.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-12 * std::pow(v.norm(), 3)) {
    throw Error("SingularSteps", "voxel step vectors are linearly dependent");
  }
  const Mat3 inv_t = v.inverse().transpose();
  TriangleMesh out;
  out.isovalue = isovalue;
  out.sign = sign;
  out.vertices.reserve(m.vertices.size());
  out.normals.reserve(m.normals.size());
  for (const auto& p : m.vertices) out.vertices.push_back(g.origin + v * p);
  for (const auto& n : m.normals) {
    Vec3 t = inv_t * n;
    const double len = t.norm();
    out.normals.push_back(len > 0.0 ? Vec3(t / len) : Vec3::UnitZ());
  }
  out.triangles = m.triangles;
  if (det < 0.0) {
    for (auto& t : out.triangles) std::swap(t[1], t[2]);
  }
  return out;
}

MeshPair extract_pair(const VolumetricGrid& g, double iso, Algorithm a, std::array<int, 3> supercell,
                      const ExtractOptions& opt) {
  if (!(iso > 0.0) || !std::isfinite(iso)) throw Error("BadIsovalue", "isovalue must be a positive number");
  g.validate();
  const ScalarField field(g, supercell);
  MeshPair out;
  out.positive = transform_mesh(extract(a, field, iso, opt), g, iso, MeshSign::positive);
  out.negative = transform_mesh(extract(a, field.negated(), iso, opt), g, iso, MeshSign::negative);
  return out;
}

namespace detail {

VertexTable edge_vertices(const ScalarField& f, double iso, const std::vector<int>& masks, unsigned slabs) {
  const auto pts = f.points();
  std::vector<VertexTable> parts(slabs);
  for_slabs(pts[0], slabs, [&](unsigned s, int begin, int end) {
    VertexTable& out = parts[s];
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < pts[1]; ++j)
        for (int k = 0; k < pts[2]; ++k) {
          const double fa = f.value(i, j, k);
          const bool in_a = fa >= iso;
          const std::uint64_t base = point_key(pts, i, j, k) * 8;
          for (int mask : masks) {
            const auto o = mask_offset(mask);
            const std::array<int, 3> b{i + o[0], j + o[1], k + o[2]};
            if (b[0] >= pts[0] || b[1] >= pts[1] || b[2] >= pts[2]) continue;
            const double fb = f.value(b[0], b[1], b[2]);
            if ((fb >= iso) == in_a) continue;
            const Crossing c = cross_edge(f, iso, {i, j, k}, b, fa, fb);
            out.add(base + static_cast<std::uint64_t>(mask), c.position, normal_from_gradient(c.gradient, c.downhill));
          }
        }
  });
  VertexTable all;
  for (auto& p : parts) all.append(std::move(p));
  return all;
}

IndexMesh assemble(VertexTable&& verts, std::vector<Triangles>&& parts) {
  IndexMesh m;
  m.vertices = std::move(verts.positions);
  m.normals = std::move(verts.normals);
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  m.triangles.reserve(total);
  for (auto& p : parts) m.triangles.insert(m.triangles.end(), p.begin(), p.end());
  return m;
}

}  // namespace detail
}  // namespace mxv::iso

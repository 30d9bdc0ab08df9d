#include "common.hpp"
#include "mc_tables.hpp"

namespace mxv::iso {
namespace {

// Corner c of a cell in table numbering, as an index offset.
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// Table edge -> (lower end offset, edge type bit).
struct EdgeRef {
  int base[3];
  int mask;
};
constexpr EdgeRef kEdge[12] = {
    {{0, 0, 0}, 1}, {{1, 0, 0}, 2}, {{0, 1, 0}, 1}, {{0, 0, 0}, 2},
    {{0, 0, 1}, 1}, {{1, 0, 1}, 2}, {{0, 1, 1}, 1}, {{0, 0, 1}, 2},
    {{0, 0, 0}, 4}, {{1, 0, 0}, 4}, {{1, 1, 0}, 4}, {{0, 1, 0}, 4},
};

}  // namespace

IndexMesh marching_cubes(const ScalarField& f, double iso, const ExtractOptions& opt) {
  using namespace detail;
  const auto cells = f.cells();
  const auto pts = f.points();
  const unsigned slabs = worker_count(opt, cells[0]);
  VertexTable verts = edge_vertices(f, iso, {1, 2, 4}, slabs);

  std::vector<Triangles> parts(slabs);
  for_slabs(cells[0], slabs, [&](unsigned s, int begin, int end) {
    Triangles& out = parts[s];
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < cells[1]; ++j)
        for (int k = 0; k < cells[2]; ++k) {
          int cube = 0;
          for (int c = 0; c < 8; ++c) {
            if (f.value(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]) < iso) cube |= 1 << c;
          }
          if (cube == 0 || cube == 255) continue;
          const auto& row = kTriTable[cube];
          for (int t = 0; row[t] != -1; t += 3) {
            std::array<std::uint32_t, 3> tri{};
            for (int v = 0; v < 3; ++v) {
              const EdgeRef& e = kEdge[row[t + v]];
              const std::uint64_t key =
                  point_key(pts, i + e.base[0], j + e.base[1], k + e.base[2]) * 8 + static_cast<std::uint64_t>(e.mask);
              tri[static_cast<std::size_t>(v)] = verts.find(key);
            }
            out.push_back(tri);
          }
        }
  });
  return assemble(std::move(verts), std::move(parts));
}

}  // namespace mxv::iso

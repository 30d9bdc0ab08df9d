#include "common.hpp"

namespace mxv::iso {
namespace {

// Corners are numbered by bits (1: +i, 2: +j, 4: +k). The six tetrahedra all
// contain the 0-7 body diagonal; each is a chain 0 < a < a|b < 7, so every
// tet edge runs from a corner to a superset corner and maps to one edge type.
constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7},
                             {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}};

Vec3 corner_pos(int c) { return Vec3(c & 1, (c >> 1) & 1, (c >> 2) & 1); }

}  // namespace

IndexMesh marching_tetrahedra(const ScalarField& f, double iso, const ExtractOptions& opt) {
  using namespace detail;
  const auto cells = f.cells();
  const auto pts = f.points();
  const unsigned slabs = worker_count(opt, cells[0]);
  VertexTable verts = edge_vertices(f, iso, {1, 2, 3, 4, 5, 6, 7}, slabs);

  std::vector<Triangles> parts(slabs);
  for_slabs(cells[0], slabs, [&](unsigned s, int begin, int end) {
    Triangles& out = parts[s];
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < cells[1]; ++j)
        for (int k = 0; k < cells[2]; ++k) {
          bool inside[8];
          int count = 0;
          for (int c = 0; c < 8; ++c) {
            inside[c] = f.value(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1)) >= iso;
            count += inside[c];
          }
          if (count == 0 || count == 8) continue;

          auto edge = [&](int u, int v) {
            if (u > v) std::swap(u, v);
            const std::uint64_t key =
                point_key(pts, i + (u & 1), j + ((u >> 1) & 1), k + ((u >> 2) & 1)) * 8 + static_cast<std::uint64_t>(v ^ u);
            return verts.find(key);
          };
          // Orientation is decided on edge midpoints, which never degenerate,
          // so it does not depend on where the crossings fall.
          auto emit = [&](std::array<std::pair<int, int>, 3> e, const Vec3& downhill) {
            const Vec3 m0 = 0.5 * (corner_pos(e[0].first) + corner_pos(e[0].second));
            const Vec3 m1 = 0.5 * (corner_pos(e[1].first) + corner_pos(e[1].second));
            const Vec3 m2 = 0.5 * (corner_pos(e[2].first) + corner_pos(e[2].second));
            if ((m1 - m0).cross(m2 - m0).dot(downhill) < 0.0) std::swap(e[1], e[2]);
            out.push_back({edge(e[0].first, e[0].second), edge(e[1].first, e[1].second),
                           edge(e[2].first, e[2].second)});
          };

          for (const auto& tet : kTets) {
            int in[4], outv[4], ni = 0, no = 0;
            for (int c : tet) (inside[c] ? in[ni++] : outv[no++]) = c;
            if (ni == 0 || ni == 4) continue;
            Vec3 hi = Vec3::Zero(), lo = Vec3::Zero();
            for (int a = 0; a < ni; ++a) hi += corner_pos(in[a]);
            for (int a = 0; a < no; ++a) lo += corner_pos(outv[a]);
            const Vec3 downhill = lo / no - hi / ni;
            if (ni == 1) {
              emit({{{in[0], outv[0]}, {in[0], outv[1]}, {in[0], outv[2]}}}, downhill);
            } else if (ni == 3) {
              emit({{{outv[0], in[0]}, {outv[0], in[1]}, {outv[0], in[2]}}}, downhill);
            } else {
              const int a = in[0], b = in[1], c = outv[0], d = outv[1];
              emit({{{a, c}, {a, d}, {b, d}}}, downhill);
              emit({{{a, c}, {b, d}, {b, c}}}, downhill);
            }
          }
        }
  });
  return assemble(std::move(verts), std::move(parts));
}

}  // namespace mxv::iso

#include "common.hpp"

namespace mxv::iso {
namespace {

// The 12 cube edges as corner pairs (corner bits: 1 = +i, 2 = +j, 4 = +k).
constexpr int kCubeEdges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {0, 2}, {1, 3},
                                   {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

}  // namespace

IndexMesh surface_nets(const ScalarField& f, double iso, const ExtractOptions& opt) {
  using namespace detail;
  const auto cells = f.cells();
  const auto pts = f.points();
  const unsigned slabs = worker_count(opt, cells[0]);
  auto cell_key = [&](int i, int j, int k) {
    return (static_cast<std::uint64_t>(i) * cells[1] + j) * cells[2] + k;
  };

  std::vector<VertexTable> vparts(slabs);
  for_slabs(cells[0], slabs, [&](unsigned s, int begin, int end) {
    VertexTable& out = vparts[s];
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < cells[1]; ++j)
        for (int k = 0; k < cells[2]; ++k) {
          double v[8];
          int count = 0;
          for (int c = 0; c < 8; ++c) {
            v[c] = f.value(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
            count += v[c] >= iso;
          }
          if (count == 0 || count == 8) continue;
          Vec3 sum = Vec3::Zero(), grad = Vec3::Zero(), down = Vec3::Zero();
          int n = 0;
          for (const auto& e : kCubeEdges) {
            const int a = e[0], b = e[1];
            if ((v[a] >= iso) == (v[b] >= iso)) continue;
            const Crossing x = cross_edge(f, iso, {i + (a & 1), j + ((a >> 1) & 1), k + ((a >> 2) & 1)},
                                          {i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1)}, v[a], v[b]);
            sum += x.position;
            grad += x.gradient;
            down += x.downhill;
            ++n;
          }
          out.add(cell_key(i, j, k), sum / n, normal_from_gradient(grad, down));
        }
  });
  VertexTable verts;
  for (auto& p : vparts) verts.append(std::move(p));

  // One quad per crossing edge whose four surrounding cells all exist. The
  // listed cell order winds counter-clockwise about +axis.
  std::vector<Triangles> parts(slabs);
  for_slabs(pts[0], slabs, [&](unsigned s, int begin, int end) {
    Triangles& out = parts[s];
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < pts[1]; ++j)
        for (int k = 0; k < pts[2]; ++k) {
          const double fa = f.value(i, j, k);
          for (int axis = 0; axis < 3; ++axis) {
            std::array<int, 3> b{i, j, k};
            ++b[static_cast<std::size_t>(axis)];
            if (b[static_cast<std::size_t>(axis)] >= pts[static_cast<std::size_t>(axis)]) continue;
            const double fb = f.value(b[0], b[1], b[2]);
            if ((fa >= iso) == (fb >= iso)) continue;
            std::array<std::array<int, 3>, 4> q;
            if (axis == 0) {
              q = {{{i, j - 1, k - 1}, {i, j, k - 1}, {i, j, k}, {i, j - 1, k}}};
            } else if (axis == 1) {
              q = {{{i - 1, j, k - 1}, {i - 1, j, k}, {i, j, k}, {i, j, k - 1}}};
            } else {
              q = {{{i - 1, j - 1, k}, {i, j - 1, k}, {i, j, k}, {i - 1, j, k}}};
            }
            bool ok = true;
            for (const auto& c : q) {
              for (int d = 0; d < 3; ++d) ok = ok && c[static_cast<std::size_t>(d)] >= 0 && c[static_cast<std::size_t>(d)] < cells[static_cast<std::size_t>(d)];
            }
            if (!ok) continue;
            std::array<std::uint32_t, 4> id{};
            for (int c = 0; c < 4; ++c) {
              const auto& cc = q[static_cast<std::size_t>(c)];
              id[static_cast<std::size_t>(c)] = verts.find(cell_key(cc[0], cc[1], cc[2]));
            }
            // Face the quad toward decreasing field.
            if (fa < fb) std::swap(id[1], id[3]);
            out.push_back({id[0], id[1], id[2]});
            out.push_back({id[0], id[2], id[3]});
          }
        }
  });
  return assemble(std::move(verts), std::move(parts));
}

}  // namespace mxv::iso

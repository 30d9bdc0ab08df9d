#pragma once

// Pieces shared by the three extractors: slab scheduling and the sorted
// edge-keyed vertex table that welds vertices across cells and slabs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mxv/isosurface.hpp"

namespace mxv::iso::detail {

inline unsigned worker_count(const ExtractOptions& opt, int work_rows) {
  unsigned t = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  return std::max(1u, std::min<unsigned>(t, static_cast<unsigned>(std::max(work_rows, 1))));
}

// Runs fn(slab, begin, end) over contiguous row ranges of [0, rows). Each slab
// writes only into its own output, so results are combined in slab order.
template <class Fn>
void for_slabs(int rows, unsigned slabs, Fn&& fn) {
  auto bounds = [&](unsigned s) { return static_cast<int>(static_cast<long long>(rows) * s / slabs); };
  if (slabs <= 1) {
    fn(0u, 0, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(slabs - 1);
  for (unsigned s = 1; s < slabs; ++s) pool.emplace_back([&, s] { fn(s, bounds(s), bounds(s + 1)); });
  fn(0u, 0, bounds(1));
}

// Vertices keyed by an integer that identifies the edge (or cell) they sit on.
// Keys are appended in increasing order, so lookups are a binary search.
struct VertexTable {
  std::vector<std::uint64_t> keys;
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;

  void add(std::uint64_t key, const Vec3& p, const Vec3& n) {
    keys.push_back(key);
    positions.push_back(p);
    normals.push_back(n);
  }

  void append(VertexTable&& o) {
    keys.insert(keys.end(), o.keys.begin(), o.keys.end());
    positions.insert(positions.end(), o.positions.begin(), o.positions.end());
    normals.insert(normals.end(), o.normals.begin(), o.normals.end());
  }

  std::uint32_t find(std::uint64_t key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) throw std::logic_error("isosurface: missing edge vertex");
    return static_cast<std::uint32_t>(it - keys.begin());
  }
};

using Triangles = std::vector<std::array<std::uint32_t, 3>>;

inline std::uint64_t point_key(const std::array<int, 3>& pts, int i, int j, int k) {
  return (static_cast<std::uint64_t>(i) * pts[1] + j) * pts[2] + k;
}

// Offset of an edge type. Bit 0 steps along i, bit 1 along j, bit 2 along k.
inline std::array<int, 3> mask_offset(int mask) { return {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1}; }

// Unit normal pointing toward decreasing field. `fallback` is used when the
// gradient vanishes.
inline Vec3 normal_from_gradient(const Vec3& g, const Vec3& fallback) {
  const double n = g.norm();
  if (n > 1e-300 && std::isfinite(n)) return -g / n;
  const double fn = fallback.norm();
  if (fn > 0.0) return fallback / fn;
  return Vec3::UnitZ();
}

struct Crossing {
  Vec3 position;
  Vec3 gradient;
  Vec3 downhill;  // unit direction along the edge toward the lower value
};

inline Crossing cross_edge(const ScalarField& f, double iso, const std::array<int, 3>& a, const std::array<int, 3>& b,
                           double fa, double fb) {
  const double t = fb == fa ? 0.5 : std::clamp((iso - fa) / (fb - fa), 0.0, 1.0);
  const Vec3 pa(a[0], a[1], a[2]);
  const Vec3 pb(b[0], b[1], b[2]);
  Crossing c;
  c.position = pa + t * (pb - pa);
  c.gradient = (1.0 - t) * f.gradient(a[0], a[1], a[2]) + t * f.gradient(b[0], b[1], b[2]);
  c.downhill = (fa >= fb ? (pb - pa) : (pa - pb)).normalized();
  return c;
}

// Vertices on every bipolar edge of the given types, ordered by key.
VertexTable edge_vertices(const ScalarField& f, double iso, const std::vector<int>& masks, unsigned slabs);

IndexMesh assemble(VertexTable&& verts, std::vector<Triangles>&& parts);

}  // namespace mxv::iso::detail

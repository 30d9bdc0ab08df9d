#include "format.hpp"
#include "mxv/writers.hpp"

namespace mxv {
namespace {

using fmtx::fixed;

const char* group_name(MeshSign s) { return s == MeshSign::positive ? "positive" : "negative"; }

std::string triple(const Vec3& v) {
  return fixed(v.x(), fmtx::kCart) + " " + fixed(v.y(), fmtx::kCart) + " " + fixed(v.z(), fmtx::kCart);
}

std::string write_obj(std::span<const TriangleMesh> meshes) {
  std::string out = "# mxv isosurface\n";
  std::size_t base = 1;
  for (const auto& m : meshes) {
    out += fmt::format("# isovalue {}\ng {}\n", m.isovalue, group_name(m.sign));
    for (const auto& v : m.vertices) out += "v " + triple(v) + "\n";
    for (const auto& n : m.normals) out += "vn " + triple(n) + "\n";
    for (const auto& t : m.triangles) {
      const std::size_t a = base + t[0], b = base + t[1], c = base + t[2];
      out += fmt::format("f {0}//{0} {1}//{1} {2}//{2}\n", a, b, c);
    }
    base += m.vertices.size();
  }
  return out;
}

std::string write_ply(std::span<const TriangleMesh> meshes) {
  std::size_t nv = 0, nf = 0;
  for (const auto& m : meshes) {
    nv += m.vertices.size();
    nf += m.triangles.size();
  }
  std::string out = "ply\nformat ascii 1.0\ncomment mxv isosurface\n";
  // PLY has no groups; the ranges of each mesh are recorded as comments.
  std::size_t v0 = 0, f0 = 0;
  for (const auto& m : meshes) {
    out += fmt::format("comment group {} isovalue {} vertices {} {} faces {} {}\n", group_name(m.sign), m.isovalue, v0,
                       m.vertices.size(), f0, m.triangles.size());
    v0 += m.vertices.size();
    f0 += m.triangles.size();
  }
  out += fmt::format(
      "element vertex {}\nproperty float x\nproperty float y\nproperty float z\n"
      "property float nx\nproperty float ny\nproperty float nz\n"
      "element face {}\nproperty list uchar int vertex_indices\nend_header\n",
      nv, nf);
  for (const auto& m : meshes) {
    for (std::size_t i = 0; i < m.vertices.size(); ++i) out += triple(m.vertices[i]) + " " + triple(m.normals[i]) + "\n";
  }
  std::size_t base = 0;
  for (const auto& m : meshes) {
    for (const auto& t : m.triangles) out += fmt::format("3 {} {} {}\n", base + t[0], base + t[1], base + t[2]);
    base += m.vertices.size();
  }
  return out;
}

}  // namespace

MeshFormat mesh_format_for(std::string_view path) {
  if (path.size() >= 4) {
    std::string ext(path.substr(path.size() - 4));
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".ply") return MeshFormat::ply;
  }
  return MeshFormat::obj;
}

std::string write_mesh(std::span<const TriangleMesh> meshes, MeshFormat format) {
  return format == MeshFormat::ply ? write_ply(meshes) : write_obj(meshes);
}

std::string write_mesh(const TriangleMesh& mesh, MeshFormat format) {
  return write_mesh(std::span<const TriangleMesh>(&mesh, 1), format);
}

}  // namespace mxv

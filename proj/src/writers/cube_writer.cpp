#include "format.hpp"
#include "mxv/constants.hpp"
#include "mxv/writers.hpp"

namespace mxv {

std::string write_cube(const VolumetricGrid& g, std::string_view comment) {
  g.validate();
  using units::ang_to_bohr;
  auto bohr = [](const Vec3& v) {
    return fmt::format("{:14.8f}{:14.8f}{:14.8f}", ang_to_bohr(v.x()), ang_to_bohr(v.y()), ang_to_bohr(v.z()));
  };
  std::string line1(comment);
  for (auto& c : line1) if (c == '\n' || c == '\r') c = ' ';
  std::string out = line1 + "\nvalues on a regular grid, Bohr units\n";
  out += fmt::format("{:5d}{}\n", g.atoms.size(), bohr(g.origin));
  for (int a = 0; a < 3; ++a) out += fmt::format("{:5d}{}\n", g.dims[static_cast<std::size_t>(a)], bohr(g.steps[static_cast<std::size_t>(a)]));
  for (const auto& at : g.atoms) {
    const int z = at.element.atomic_number;
    out += fmt::format("{:5d}{:14.8f}{}\n", z, static_cast<double>(z), bohr(at.position));
  }
  out.reserve(out.size() + g.values.size() * 20);
  const int n3 = g.dims[2];
  std::size_t idx = 0;
  for (int ij = 0; ij < g.dims[0] * g.dims[1]; ++ij) {
    for (int k = 0; k < n3; ++k) {
      out += fmt::format(" {:.12E}", g.values[idx++]);
      if (k % 6 == 5 || k == n3 - 1) out += '\n';
    }
  }
  return out;
}

}  // namespace mxv

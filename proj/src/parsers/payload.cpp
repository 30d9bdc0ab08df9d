#include "mxv/error.hpp"
#include "mxv/parsers.hpp"

namespace mxv {

int frame_count(const Payload& p) {
  if (const auto* t = std::get_if<Trajectory>(&p)) return static_cast<int>(t->frames.size());
  if (std::holds_alternative<BandData>(p)) return 0;
  return 1;
}

Structure structure_at(const Payload& p, int frame) {
  const int n = frame_count(p);
  if (n == 0) throw Error("NoStructure", "band data has no atomic structure");
  if (frame < 0 || frame >= n) {
    throw Error("BadFrame", "frame " + std::to_string(frame) + " is out of range (0.." + std::to_string(n - 1) + ")");
  }
  if (const auto* s = std::get_if<Structure>(&p)) return *s;
  if (const auto* t = std::get_if<Trajectory>(&p)) return t->frames[static_cast<std::size_t>(frame)];
  const auto& g = std::get<VolumetricGrid>(p);
  Structure s;
  s.atoms = g.atoms;
  s.lattice = g.cell();
  s.comment = "atoms of the volumetric grid";
  return s;
}

}  // namespace mxv

#include "format.hpp"
#include "mxv/band.hpp"
#include "mxv/writers.hpp"

namespace mxv {

std::string write_band_table(const BandData& b, std::optional<double> emin, std::optional<double> emax) {
  BandPlot plot = assemble_band_plot(b);
  if (emin || emax) plot = window(plot, emin.value_or(plot.e_min), emax.value_or(plot.e_max));

  // Shortest round-trip formatting keeps e.g. 1 Hartree at 27.211386245988.
  std::string out = "# ticks";
  for (const auto& t : plot.ticks) out += fmt::format(" {}:{}", t.distance, t.label);
  out += "\n# distance in 1/Bohr, energy in eV relative to the chemical potential\n";
  out += "distance,spin,band,energy_ev\n";
  for (const auto& line : plot.lines) {
    for (const auto& p : line.points) out += fmt::format("{},{},{},{}\n", p.distance, line.spin, line.band, p.energy);
  }
  return out;
}

}  // namespace mxv

#pragma once

#include <string>
#include <vector>

#include "mxv/model.hpp"

namespace mxv {

struct BandPoint {
  double distance = 0.0;  // cumulative |Δk|, 1/Bohr
  double energy = 0.0;    // eV, chemical potential at zero
};

// One connected polyline. A windowed band may split into several lines.
struct BandLine {
  int spin = 0;  // 0-based
  int band = 1;  // 1-based
  std::vector<BandPoint> points;
};

struct BandTick {
  double distance = 0.0;
  std::string label;
};

struct BandPlot {
  std::vector<BandLine> lines;
  std::vector<BandTick> ticks;
  double e_min = 0.0;
  double e_max = 0.0;
};

/// Cartesian k = fractional row times the reciprocal matrix. Distances run
/// continuously across segments; a junction whose labels differ gets "L1|L2".
BandPlot assemble_band_plot(const BandData& b);

/// Clips every polyline to [emin, emax], interpolating crossings linearly.
/// Ticks are kept. Throws BadWindow unless emin < emax, EmptyWindow when
/// nothing survives.
BandPlot window(const BandPlot& plot, double emin, double emax);

}  // namespace mxv

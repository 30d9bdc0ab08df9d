#include <algorithm>
#include <cmath>
#include <limits>

#include "mxv/band.hpp"
#include "mxv/constants.hpp"
#include "mxv/error.hpp"

namespace mxv {

BandPlot assemble_band_plot(const BandData& b) {
  b.validate();
  BandPlot plot;

  // Distance axis shared by all bands.
  std::vector<double> dist;
  std::vector<const KPoint*> kps;
  double d = 0.0;
  for (const auto& seg : b.segments) {
    if (seg.kpoints.empty()) continue;
    const double start = d;
    Vec3 prev = b.reciprocal.transpose() * seg.kpoints.front().k;
    for (std::size_t i = 0; i < seg.kpoints.size(); ++i) {
      const Vec3 k = b.reciprocal.transpose() * seg.kpoints[i].k;
      if (i > 0) d += (k - prev).norm();
      prev = k;
      dist.push_back(d);
      kps.push_back(&seg.kpoints[i]);
    }
    if (!plot.ticks.empty() && plot.ticks.back().distance == start) {
      auto& last = plot.ticks.back().label;
      if (last != seg.label_start) last += "|" + seg.label_start;
    } else {
      plot.ticks.push_back({start, seg.label_start});
    }
    plot.ticks.push_back({d, seg.label_end});
  }

  plot.e_min = std::numeric_limits<double>::infinity();
  plot.e_max = -plot.e_min;
  for (int spin = 0; spin < b.spin_channels; ++spin) {
    for (int band = 0; band < b.n_bands; ++band) {
      BandLine line;
      line.spin = spin;
      line.band = band + 1;
      line.points.reserve(kps.size());
      for (std::size_t i = 0; i < kps.size(); ++i) {
        const double e = kps[i]->energies[static_cast<std::size_t>(spin)][static_cast<std::size_t>(band)];
        const double ev = units::hartree_to_ev(e - b.chem_potential);
        line.points.push_back({dist[i], ev});
        plot.e_min = std::min(plot.e_min, ev);
        plot.e_max = std::max(plot.e_max, ev);
      }
      if (!line.points.empty()) plot.lines.push_back(std::move(line));
    }
  }
  if (plot.lines.empty()) plot.e_min = plot.e_max = 0.0;
  return plot;
}

BandPlot window(const BandPlot& plot, double emin, double emax) {
  if (!(emin < emax)) throw Error("BadWindow", "energy window needs emin < emax");
  BandPlot out;
  out.ticks = plot.ticks;
  auto inside = [&](double e) { return e >= emin && e <= emax; };
  auto at = [](const BandPoint& p, const BandPoint& q, double t) {
    return BandPoint{p.distance + t * (q.distance - p.distance), p.energy + t * (q.energy - p.energy)};
  };

  for (const auto& line : plot.lines) {
    BandLine cur{line.spin, line.band, {}};
    auto flush = [&] {
      if (!cur.points.empty()) out.lines.push_back(cur);
      cur.points.clear();
    };
    const auto& pts = line.points;
    if (pts.size() == 1) {
      if (inside(pts[0].energy)) cur.points.push_back(pts[0]);
      flush();
      continue;
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const BandPoint& p = pts[i];
      const BandPoint& q = pts[i + 1];
      // Parameter interval where p + t (q - p) stays inside the window.
      double t0 = 0.0, t1 = 1.0;
      const double de = q.energy - p.energy;
      if (de == 0.0) {
        if (!inside(p.energy)) t0 = 2.0;
      } else {
        double ta = (emin - p.energy) / de, tb = (emax - p.energy) / de;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
      }
      if (t0 > t1) {
        flush();
        continue;
      }
      if (t0 > 0.0) {
        flush();
        cur.points.push_back(at(p, q, t0));
      } else if (cur.points.empty()) {
        cur.points.push_back(p);
      }
      cur.points.push_back(t1 < 1.0 ? at(p, q, t1) : q);
      if (t1 < 1.0) flush();
    }
    flush();
  }
  if (out.lines.empty()) throw Error("EmptyWindow", "no band point lies inside the energy window");

  out.e_min = std::numeric_limits<double>::infinity();
  out.e_max = -out.e_min;
  for (const auto& l : out.lines)
    for (const auto& p : l.points) {
      out.e_min = std::min(out.e_min, p.energy);
      out.e_max = std::max(out.e_max, p.energy);
    }
  return out;
}

}  // namespace mxv

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mxv/band.hpp"
#include "mxv/constants.hpp"
#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "oracles.hpp"

using namespace mxv;

namespace {

template <class F>
std::string error_name(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

BandData straight_path(int n_points, std::vector<double> energies, double mu) {
  BandData b;
  b.n_bands = 1;
  b.chem_potential = mu;
  KPathSegment seg;
  seg.n_points = n_points;
  seg.k_end = Vec3(0.5, 0, 0);
  seg.label_start = "G";
  seg.label_end = "X";
  for (int i = 0; i < n_points; ++i) {
    KPoint k;
    k.k = n_points > 1 ? Vec3(0.5 * i / (n_points - 1), 0, 0) : Vec3::Zero();
    k.energies = {{energies[static_cast<std::size_t>(i)]}};
    seg.kpoints.push_back(k);
  }
  b.segments.push_back(seg);
  return b;
}

}  // namespace

TEST(BandPlot, SinglePoint) {
  const auto p = assemble_band_plot(straight_path(1, {0.3}, 0.1));
  ASSERT_EQ(p.lines.size(), 1u);
  EXPECT_EQ(p.lines[0].points[0].distance, 0.0);
  EXPECT_NEAR(p.lines[0].points[0].energy, units::hartree_to_ev(0.2), 1e-12);
}

TEST(BandPlot, GammaToX) {
  const auto p = assemble_band_plot(straight_path(3, {0, 0, 0}, 0));
  const auto& pts = p.lines[0].points;
  EXPECT_NEAR(pts[0].distance, 0.0, 1e-15);
  EXPECT_NEAR(pts[1].distance, 0.25, 1e-15);
  EXPECT_NEAR(pts[2].distance, 0.5, 1e-15);
  ASSERT_EQ(p.ticks.size(), 2u);
  EXPECT_EQ(p.ticks[1].label, "X");
}

TEST(BandPlot, FermiLevelIsZero) {
  const auto p = assemble_band_plot(straight_path(2, {0.1234567, 1.1234567}, 0.1234567));
  EXPECT_EQ(p.lines[0].points[0].energy, 0.0);
  EXPECT_NEAR(p.lines[0].points[1].energy, 27.211386245988, 1e-12);
}

TEST(BandPlot, FixtureTicksAndSpins) {
  const auto p = assemble_band_plot(parse_band(oracle::slurp(oracle::data_path("si.Band"))));
  EXPECT_EQ(p.lines.size(), 4u);  // 2 spins x 2 bands
  EXPECT_EQ(p.lines[2].spin, 1);
  EXPECT_EQ(p.lines[2].band, 1);
  ASSERT_EQ(p.ticks.size(), 3u);
  EXPECT_EQ(p.ticks[1].label, "X");
  EXPECT_NEAR(p.ticks[1].distance, 0.5785, 1e-12);
  EXPECT_NEAR(p.ticks[2].distance, 1.157, 1e-12);
}

TEST(BandPlot, DifferentLabelsMergeAtJunction) {
  auto b = parse_band(oracle::slurp(oracle::data_path("si.Band")));
  b.segments[1].label_start = "X'";
  const auto p = assemble_band_plot(b);
  EXPECT_EQ(p.ticks[1].label, "X|X'");
}

TEST(BandPlot, DistancesMonotoneAndTicksOnPoints) {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 10; ++n) {
    const auto p = assemble_band_plot(oracle::random_band(rng));
    for (const auto& l : p.lines)
      for (std::size_t i = 1; i < l.points.size(); ++i) EXPECT_GE(l.points[i].distance, l.points[i - 1].distance);
    for (const auto& t : p.ticks) {
      const auto& pts = p.lines[0].points;
      EXPECT_TRUE(std::any_of(pts.begin(), pts.end(), [&](const BandPoint& q) { return q.distance == t.distance; }));
    }
  }
}

TEST(BandPlot, CumulativeSumOracle) {
  std::mt19937_64 rng(6);
  const auto b = oracle::random_band(rng);
  const auto p = assemble_band_plot(b);
  double d = 0;
  std::size_t idx = 0;
  for (const auto& seg : b.segments)
    for (std::size_t i = 0; i < seg.kpoints.size(); ++i, ++idx) {
      if (i > 0) {
        const Vec3 dk = seg.kpoints[i].k - seg.kpoints[i - 1].k;
        Vec3 cart = Vec3::Zero();
        for (int r = 0; r < 3; ++r) cart += dk[r] * b.reciprocal.row(r).transpose();
        d += cart.norm();
      }
      EXPECT_NEAR(p.lines[0].points[idx].distance, d, 1e-12);
    }
}

TEST(BandPlot, FermiShiftInvariance) {
  std::mt19937_64 rng(12);
  const auto b = oracle::random_band(rng);
  auto shifted = b;
  shifted.chem_potential += 0.37;
  for (auto& s : shifted.segments)
    for (auto& k : s.kpoints)
      for (auto& sp : k.energies)
        for (auto& e : sp) e += 0.37;
  const auto p = assemble_band_plot(b), q = assemble_band_plot(shifted);
  for (std::size_t l = 0; l < p.lines.size(); ++l)
    for (std::size_t i = 0; i < p.lines[l].points.size(); ++i)
      EXPECT_NEAR(p.lines[l].points[i].energy, q.lines[l].points[i].energy, 1e-12);
}

TEST(BandPlot, RotationInvariance) {
  std::mt19937_64 rng(13);
  const auto b = oracle::random_band(rng);
  for (int n = 0; n < 5; ++n) {
    auto r = b;
    r.reciprocal = b.reciprocal * oracle::random_rotation(rng).transpose();
    const auto p = assemble_band_plot(b), q = assemble_band_plot(r);
    for (std::size_t i = 0; i < p.lines[0].points.size(); ++i)
      EXPECT_NEAR(p.lines[0].points[i].distance, q.lines[0].points[i].distance, 1e-12);
  }
}

TEST(Window, FullRangeIsIdentity) {
  std::mt19937_64 rng(1);
  const auto p = assemble_band_plot(oracle::random_band(rng));
  const auto w = window(p, p.e_min, p.e_max);
  ASSERT_EQ(w.lines.size(), p.lines.size());
  for (std::size_t l = 0; l < p.lines.size(); ++l) {
    ASSERT_EQ(w.lines[l].points.size(), p.lines[l].points.size());
    for (std::size_t i = 0; i < p.lines[l].points.size(); ++i) {
      EXPECT_EQ(w.lines[l].points[i].distance, p.lines[l].points[i].distance);
      EXPECT_EQ(w.lines[l].points[i].energy, p.lines[l].points[i].energy);
    }
  }
}

TEST(Window, CrossingEmax) {
  const auto p = assemble_band_plot(straight_path(2, {0.0, 2.0 / units::kHartreeToEv}, 0.0));
  const auto w = window(p, -1.0, 1.0);
  ASSERT_EQ(w.lines.size(), 1u);
  ASSERT_EQ(w.lines[0].points.size(), 2u);
  EXPECT_NEAR(w.lines[0].points[1].energy, 1.0, 1e-12);
  EXPECT_NEAR(w.lines[0].points[1].distance, 0.25, 1e-12);
  EXPECT_EQ(w.ticks.size(), p.ticks.size());
}

TEST(Window, MatchesIntersectionOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int n = 0; n < 20; ++n) {
    const auto p = assemble_band_plot(oracle::random_band(rng));
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    const auto want = oracle::clip_band(p, lo, hi);
    if (want.empty()) continue;
    const auto got = oracle::band_pieces(window(p, lo, hi));
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i].a.distance, want[i].a.distance, 1e-12);
      EXPECT_NEAR(got[i].a.energy, want[i].a.energy, 1e-12);
      EXPECT_NEAR(got[i].b.distance, want[i].b.distance, 1e-12);
      EXPECT_NEAR(got[i].b.energy, want[i].b.energy, 1e-12);
    }
  }
}

TEST(Window, Errors) {
  const auto p = assemble_band_plot(straight_path(2, {0.0, 0.01}, 0.0));
  EXPECT_EQ(error_name([&] { window(p, 5, 6); }), "EmptyWindow");
  EXPECT_EQ(error_name([&] { window(p, 1, 1); }), "BadWindow");
}

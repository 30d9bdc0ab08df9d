#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mxv/constants.hpp"
#include "mxv/error.hpp"
#include "mxv/geometry.hpp"
#include "mxv/parsers.hpp"
#include "mxv/symmetry.hpp"
#include "mxv/writers.hpp"
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

// Sorted fractional positions, wrapped into [0,1), for set comparison.
std::vector<Vec3> sorted_frac(const Structure& s) {
  std::vector<Vec3> out;
  for (const auto& a : s.atoms) {
    Vec3 f = s.lattice->vectors().transpose().inverse() * a.position;
    for (int c = 0; c < 3; ++c) {
      f[c] -= std::floor(f[c]);
      if (f[c] > 1 - 1e-9) f[c] = 0;
    }
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const Vec3& a, const Vec3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
  });
  return out;
}

}  // namespace

// ---- detection

TEST(Detect, ExtensionWins) {
  auto d = detect_format("si.cif", "data_Si\n_cell_length_a 5.43\n");
  EXPECT_EQ(d.kind, FormatKind::cif);
  EXPECT_EQ(d.confidence, DetectionSource::by_extension);
}

TEST(Detect, ContentFallback) {
  auto d = detect_format("geom.txt", "3\nwater\nO 0 0 0\nH 0 0.76 -0.47\nH 0 -0.76 -0.47\n");
  EXPECT_EQ(d.kind, FormatKind::xyz);
  EXPECT_EQ(d.confidence, DetectionSource::by_content);
}

TEST(Detect, EveryFixtureMapsToItsRow) {
  const std::pair<const char*, FormatKind> rows[] = {
      {"si8.xyz", FormatKind::xyz},        {"si_fd3m.cif", FormatKind::cif},   {"si.dat", FormatKind::openmx_dat},
      {"water.md", FormatKind::openmx_md}, {"dipole.cube", FormatKind::cube}, {"si.Band", FormatKind::band}};
  for (const auto& [name, kind] : rows) {
    const std::string text = oracle::slurp(oracle::data_path(name));
    const auto d = detect_format(name, text.substr(0, 4096));
    EXPECT_EQ(d.kind, kind) << name;
    EXPECT_EQ(d.confidence, DetectionSource::by_extension) << name;
    EXPECT_NO_THROW(parse_as(d.kind, text)) << name;
    // Content alone still finds structure formats the heuristics cover.
    if (kind == FormatKind::cif || kind == FormatKind::openmx_dat || kind == FormatKind::cube)
      EXPECT_EQ(detect_format("noext", text.substr(0, 4096)).kind, kind) << name;
  }
}

TEST(Detect, StableUnderWhitespace) {
  std::string text = oracle::slurp(oracle::data_path("si8.xyz"));
  std::string crlf;
  for (char c : text) crlf += c == '\n' ? std::string("\r\n") : std::string(1, c == ' ' ? '\t' : c);
  EXPECT_EQ(detect_format("x.txt", text).kind, detect_format("x.txt", crlf).kind);
  const auto a = std::get<Trajectory>(parse_as(FormatKind::xyz, text));
  const auto b = std::get<Trajectory>(parse_as(FormatKind::xyz, crlf));
  ASSERT_EQ(a.frames[0].atoms.size(), b.frames[0].atoms.size());
  for (std::size_t i = 0; i < a.frames[0].atoms.size(); ++i)
    EXPECT_EQ(a.frames[0].atoms[i].position, b.frames[0].atoms[i].position);
}

TEST(Detect, Unknown) {
  EXPECT_EQ(error_name([] { detect_format("blob.bin", "\x01\x02 hello"); }), "UnknownFormat");
}

TEST(Detect, MdExtensionForMultiFrameXyzText) {
  const std::string two = "1\nEnergy= -1.0\nC 0 0 0\n1\nEnergy= -2.0\nC 0 0 1\n";
  EXPECT_EQ(detect_format("run.md", two).kind, FormatKind::openmx_md);
  EXPECT_EQ(detect_format("run.xyz", two).kind, FormatKind::xyz_multi);
}

// ---- xyz

TEST(Xyz, SingleCarbon) {
  auto t = parse_xyz("1\nc\nC 0 0 0");
  ASSERT_EQ(t.frames.size(), 1u);
  ASSERT_EQ(t.frames[0].atoms.size(), 1u);
  EXPECT_EQ(t.frames[0].atoms[0].element.atomic_number, 6);
  EXPECT_EQ(t.frames[0].atoms[0].position, Vec3::Zero());
  EXPECT_FALSE(t.frames[0].lattice);
}

TEST(Xyz, SiliconFixture) {
  auto t = parse_xyz(oracle::slurp(oracle::data_path("si8.xyz")));
  ASSERT_EQ(t.frames[0].atoms.size(), 8u);
  ASSERT_TRUE(t.frames[0].lattice);
  EXPECT_EQ(t.frames[0].lattice->vectors(), Mat3(Vec3(5.43, 5.43, 5.43).asDiagonal()));
  const auto ref = oracle::silicon();
  for (std::size_t i = 0; i < 8; ++i) EXPECT_LT((t.frames[0].atoms[i].position - ref.atoms[i].position).norm(), 1e-9);
}

TEST(Xyz, EnergiesFromComments) {
  auto t = parse_xyz("1\nstep 1 Energy= -1.0\nC 0 0 0\n1\nEnergy=-2.5 time=3\nC 0 0 1\n");
  ASSERT_EQ(t.frames.size(), 2u);
  EXPECT_EQ(t.energies[0], -1.0);
  EXPECT_EQ(t.energies[1], -2.5);
  EXPECT_FALSE(t.times[0]);
  EXPECT_EQ(t.times[1], 3.0);
}

TEST(Xyz, Malformed) {
  EXPECT_EQ(error_name([] { parse_xyz("2\nc\nC 0 0 0\n"); }), "MalformedXYZ");
  EXPECT_EQ(error_name([] { parse_xyz("1\nc\nC 0 zero 0\n"); }), "MalformedXYZ");
  EXPECT_EQ(error_name([] { parse_xyz("1\nc\nC 0 0 0\nC 1 1 1\n"); }), "MalformedXYZ");
  try {
    parse_xyz("1\nc\nC 0 zero 0\n");
  } catch (const Error& e) {
    EXPECT_EQ(e.context(), "line 3");
  }
}

TEST(Xyz, ExtraColumnsAreVelocityThenForce) {
  auto t = parse_xyz("1\nc\nC 0 0 0 1 2 3 4 5 6\n");
  const auto& p = t.frames[0].atoms[0].properties;
  EXPECT_EQ(*p.velocity, Vec3(1, 2, 3));
  EXPECT_EQ(*p.force, Vec3(4, 5, 6));
}

// ---- symmetry operators

TEST(Symmetry, Identity) {
  EXPECT_EQ(parse_symmetry_op("x, y, z"), identity_op());
  EXPECT_EQ(identity_op().determinant(), 1);
}

TEST(Symmetry, RotationAndTranslation) {
  const auto op = parse_symmetry_op("-x, y+1/2, -z+1/2");
  const std::array<std::array<int, 3>, 3> r{{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}};
  EXPECT_EQ(op.rotation, r);
  EXPECT_EQ(op.translation[0], Fraction::make(0, 1));
  EXPECT_EQ(op.translation[1], Fraction::make(1, 2));
  EXPECT_EQ(op.translation[2], Fraction::make(1, 2));
}

TEST(Symmetry, PermutationOnProbe) {
  const auto op = parse_symmetry_op("y, x, -z");
  const Vec3 p = op.apply(Vec3(0.1, 0.2, 0.3));
  // unwrapped image; (0.2, 0.1, 0.7) once reduced mod 1
  EXPECT_NEAR(p.x(), 0.2, 1e-12);
  EXPECT_NEAR(p.y(), 0.1, 1e-12);
  EXPECT_NEAR(p.z() - std::floor(p.z()), 0.7, 1e-12);
  EXPECT_EQ(op.determinant(), 1);
}

TEST(Symmetry, DecimalsAndSpacing) {
  const auto op = parse_symmetry_op("X+0.5,-Y ,  1/4+z");
  EXPECT_EQ(op.translation[0], Fraction::make(1, 2));
  EXPECT_EQ(op.translation[2], Fraction::make(1, 4));
  EXPECT_EQ(op.rotation[1][1], -1);
}

TEST(Symmetry, Errors) {
  EXPECT_EQ(error_name([] { parse_symmetry_op("x, y"); }), "BadSymmetryExpr");
  EXPECT_EQ(error_name([] { parse_symmetry_op("x, y, w"); }), "BadSymmetryExpr");
  EXPECT_EQ(error_name([] { parse_symmetry_op("x, x, z"); }), "BadSymmetryExpr");
}

TEST(Symmetry, InvolutionsReturnProbes) {
  // every Fd-3m op with R^2 = I and Rt + t = 0 mod 1, applied twice
  const std::string cif = oracle::slurp(oracle::data_path("si_fd3m.cif"));
  std::istringstream in(cif);
  std::string line;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.size() < 3 || line.front() != '\'') continue;
    const auto op = parse_symmetry_op(line.substr(1, line.size() - 2));
    bool involution = true;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        int v = 0;
        for (int k = 0; k < 3; ++k) v += op.rotation[r][k] * op.rotation[k][c];
        involution &= v == (r == c);
      }
    for (int r = 0; r < 3; ++r) {
      Fraction rt = op.translation[static_cast<std::size_t>(r)];
      for (int k = 0; k < 3; ++k)
        rt = rt + Fraction::make(op.rotation[r][k] * op.translation[static_cast<std::size_t>(k)].num,
                                 op.translation[static_cast<std::size_t>(k)].den);
      involution &= rt.wrapped() == Fraction::make(0, 1);
    }
    if (!involution) continue;
    ++checked;
    for (int n = 0; n < 5; ++n) {
      const Vec3 p(u(rng), u(rng), u(rng));
      const Vec3 q = op.apply(op.apply(p));
      for (int c = 0; c < 3; ++c) {
        double d = std::abs(q[c] - p[c]);
        EXPECT_LT(std::min(d, 1 - d), 1e-12);
      }
    }
  }
  EXPECT_GT(checked, 0);
}

// ---- lattice parameters

TEST(LatticeParams, Cubic) {
  const auto l = lattice_from_parameters(5.43, 5.43, 5.43, 90, 90, 90);
  EXPECT_LT((l.vectors() - Mat3(Vec3(5.43, 5.43, 5.43).asDiagonal())).norm(), 1e-12);
}

TEST(LatticeParams, Hexagonal) {
  const double a = 3.2, c = 5.1;
  const auto l = lattice_from_parameters(a, a, c, 90, 90, 120);
  EXPECT_NEAR(l.vectors()(1, 0), -a / 2, 1e-12);
  EXPECT_NEAR(l.vectors()(1, 1), a * std::sqrt(3.0) / 2, 1e-12);
  EXPECT_NEAR(l.vectors()(1, 2), 0, 1e-12);
}

TEST(LatticeParams, AnglesRecoveredByDotProducts) {
  const auto l = lattice_from_parameters(3, 4, 5, 80, 90, 100);
  const Vec3 a = l.vector(0), b = l.vector(1), c = l.vector(2);
  auto ang = [](const Vec3& u, const Vec3& v) { return std::acos(u.dot(v) / (u.norm() * v.norm())) * 180 / oracle::kPi; };
  EXPECT_NEAR(ang(b, c), 80, 1e-9);
  EXPECT_NEAR(ang(a, c), 90, 1e-9);
  EXPECT_NEAR(ang(a, b), 100, 1e-9);
  EXPECT_LT((l.vectors() - oracle::cell_rows(3, 4, 5, 80, 90, 100)).norm(), 1e-12);
}

TEST(LatticeParams, Degenerate) {
  EXPECT_EQ(error_name([] { lattice_from_parameters(1, 1, 1, 120, 120, 120); }), "DegenerateCell");
  EXPECT_EQ(error_name([] { lattice_from_parameters(1, 1, 1, 10, 100, 90); }), "DegenerateCell");
  EXPECT_EQ(error_name([] { lattice_from_parameters(-1, 1, 1, 90, 90, 90); }), "DegenerateCell");
}

// ---- cif

const char* kP1 = R"(data_test
_cell_length_a 4.0
_cell_length_b 5.0
_cell_length_c 6.0
_cell_angle_alpha 90
_cell_angle_beta 90
_cell_angle_gamma 90
_symmetry_space_group_name_H-M 'P 1'
loop_
_atom_site_label
_atom_site_type_symbol
_atom_site_fract_x
_atom_site_fract_y
_atom_site_fract_z
Na1 Na 0.0 0.0 0.0
Cl1 Cl 0.5 0.5 0.5
)";

TEST(Cif, P1Unchanged) {
  const auto s = parse_cif(kP1);
  ASSERT_EQ(s.atoms.size(), 2u);
  EXPECT_EQ(s.atoms[0].element.atomic_number, 11);
  EXPECT_EQ(s.atoms[1].element.atomic_number, 17);
  EXPECT_LT((s.atoms[1].position - Vec3(2, 2.5, 3)).norm(), 1e-12);
}

TEST(Cif, UncertaintyStripped) {
  std::string t = kP1;
  t.replace(t.find("4.0"), 3, "5.4310(2)");
  const auto s = parse_cif(t);
  EXPECT_NEAR(s.lattice->parameters()[0], 5.4310, 1e-12);
}

TEST(Cif, DiamondExpandsToEight) {
  const auto s = parse_cif(oracle::slurp(oracle::data_path("si_fd3m.cif")));
  ASSERT_EQ(s.atoms.size(), 8u);
  const auto got = sorted_frac(s);
  const auto want = sorted_frac(oracle::silicon());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_LT((got[i] - want[i]).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Cif, OperatorOrderDoesNotMatter) {
  const std::string text = oracle::slurp(oracle::data_path("si_fd3m.cif"));
  std::vector<std::string> head, ops, tail;
  std::istringstream in(text);
  std::string line;
  int stage = 0;
  while (std::getline(in, line)) {
    const bool op = !line.empty() && line.front() == '\'' && line.find(',') != std::string::npos;
    if (op) stage = 1;
    else if (stage == 1) stage = 2;
    (stage == 0 ? head : stage == 1 ? ops : tail).push_back(line);
  }
  ASSERT_EQ(ops.size(), 192u);
  const auto ref = sorted_frac(parse_cif(text));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(ops.begin(), ops.end(), rng);
    std::string shuffled;
    for (const auto* part : {&head, &ops, &tail})
      for (const auto& l : *part) shuffled += l + "\n";
    const auto got = sorted_frac(parse_cif(shuffled));
    ASSERT_EQ(got.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_LT((got[i] - ref[i]).norm() * 5.43, 1e-6);
  }
}

TEST(Cif, Errors) {
  std::string no_cell = kP1;
  no_cell.erase(no_cell.find("_cell_length_a"), std::string("_cell_length_a 4.0\n").size());
  EXPECT_EQ(error_name([&] { parse_cif(no_cell); }), "MissingCell");
  std::string no_sites = kP1;
  no_sites = no_sites.substr(0, no_sites.find("loop_"));
  EXPECT_EQ(error_name([&] { parse_cif(no_sites); }), "MissingSites");
  std::string group_only = kP1;
  group_only.replace(group_only.find("'P 1'"), 5, "'F d -3 m'");
  EXPECT_EQ(error_name([&] { parse_cif(group_only); }), "UnsupportedSymmetry");
}

TEST(Cif, SpaceGroupSymopTag) {
  std::string t = kP1;
  t += "loop_\n_space_group_symop_operation_xyz\n'x, y, z'\n'-x, -y, -z'\n";
  // inversion maps (0,0,0) and (1/2,1/2,1/2) onto themselves
  EXPECT_EQ(parse_cif(t).atoms.size(), 2u);
}

// ---- OpenMX .dat

std::string dat_block(const std::string& unit, const std::string& rows, int count, bool cell) {
  std::string s = "Atoms.Number " + std::to_string(count) + "\nAtoms.SpeciesAndCoordinates.Unit " + unit +
                  "\n<Atoms.SpeciesAndCoordinates\n" + rows + "Atoms.SpeciesAndCoordinates>\n";
  if (cell)
    s += "Atoms.UnitVectors.Unit Ang\n<Atoms.UnitVectors\n5.43 0 0\n0 5.43 0\n0 0 5.43\nAtoms.UnitVectors>\n";
  return s;
}

TEST(OpenmxDat, AngstromAtom) {
  const auto s = parse_openmx_dat(dat_block("Ang", "1 Si 0 0 0 2.0 2.0\n", 1, false));
  ASSERT_EQ(s.atoms.size(), 1u);
  EXPECT_EQ(s.atoms[0].element.atomic_number, 14);
  EXPECT_EQ(s.atoms[0].position, Vec3::Zero());
  EXPECT_EQ(*s.atoms[0].properties.spin, 0.0);
  EXPECT_FALSE(s.lattice);
}

TEST(OpenmxDat, AtomicUnits) {
  const auto s = parse_openmx_dat(dat_block("AU", "1 H 1.0 0 0 0.6 0.4\n", 1, false));
  EXPECT_EQ(s.atoms[0].position.x(), 0.529177210903);
  EXPECT_NEAR(*s.atoms[0].properties.spin, 0.2, 1e-12);
}

TEST(OpenmxDat, Fractional) {
  const auto s = parse_openmx_dat(dat_block("FRAC", "1 Si 0.25 0.25 0.25 2 2\n", 1, true));
  EXPECT_LT((s.atoms[0].position - Vec3(1.3575, 1.3575, 1.3575)).norm(), 1e-12);
}

TEST(OpenmxDat, KeywordsCaseInsensitive) {
  std::string t = dat_block("ang", "1 Si 0 0 0 2 2\n", 1, true);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  EXPECT_EQ(parse_openmx_dat(t).atoms.size(), 1u);
}

TEST(OpenmxDat, SpeciesTagResolved) {
  const auto s = parse_openmx_dat(oracle::slurp(oracle::data_path("si.dat")));
  ASSERT_EQ(s.atoms.size(), 8u);
  EXPECT_EQ(s.atoms[0].element.atomic_number, 14);
  const auto ref = oracle::silicon();
  for (std::size_t i = 0; i < 8; ++i) EXPECT_LT((s.atoms[i].position - ref.atoms[i].position).norm(), 1e-9);
  EXPECT_EQ(*s.atoms[0].properties.spin_up, 2.0);
}

TEST(OpenmxDat, Errors) {
  EXPECT_EQ(error_name([] { parse_openmx_dat("System.Name x\n"); }), "MissingKeyword");
  EXPECT_EQ(error_name([] { parse_openmx_dat(dat_block("FRAC", "1 Si 0 0 0 2 2\n", 1, false)); }), "FracWithoutCell");
  EXPECT_EQ(error_name([] { parse_openmx_dat(dat_block("Ang", "1 Si 0 0 0 2 2\n", 2, false)); }), "CountMismatch");
}

// ---- OpenMX .md

TEST(OpenmxMd, EnergyAndTime) {
  const auto t = parse_openmx_md("1\ntime= 0.0 (fs) Energy= -8.237 (Hartree)\nSi 0 0 0\n");
  ASSERT_EQ(t.energies.size(), 1u);
  EXPECT_EQ(t.energies[0], -8.237);
  EXPECT_EQ(t.times[0], 0.0);
}

TEST(OpenmxMd, WaterFixture) {
  const auto t = parse_openmx_md(oracle::slurp(oracle::data_path("water.md")));
  ASSERT_EQ(t.frames.size(), 3u);
  EXPECT_EQ(t.energies[2], -17.152);
  EXPECT_EQ(t.times[1], 0.5);
  ASSERT_TRUE(t.frames[0].lattice);
  EXPECT_TRUE(t.frames[0].atoms[1].properties.velocity);
  EXPECT_TRUE(t.frames[0].atoms[1].properties.force);
}

TEST(OpenmxMd, TenColumns) {
  const auto t = parse_openmx_md("2\nE\nH 0 0 0 .1 .2 .3 .4 .5 .6\nH 0 0 .74 -.1 -.2 -.3 -.4 -.5 -.6\n");
  EXPECT_EQ(*t.frames[0].atoms[1].properties.velocity, Vec3(-.1, -.2, -.3));
  EXPECT_EQ(*t.frames[0].atoms[1].properties.force, Vec3(-.4, -.5, -.6));
}

TEST(OpenmxMd, Errors) {
  EXPECT_EQ(error_name([] { parse_openmx_md("1\nE\nH 0 0 0\n2\nE\nH 0 0 0\nH 1 1 1\n"); }), "InconsistentFrames");
  EXPECT_EQ(error_name([] { parse_openmx_md("1\nE\nH 0 0 0\n1\nE\nO 0 0 0\n"); }), "InconsistentFrames");
  try {
    parse_openmx_md("1\nE\nH 0 0 0\n1\nE\nH 0 x 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "MalformedFrame");
    EXPECT_EQ(e.context(), "frame 2, line 6");
  }
}

// ---- cube

std::string cube_text(int natoms, const std::string& extra, int n, const std::string& values) {
  std::string s = "c\nc\n" + std::to_string(natoms) + " 0 0 0\n";
  for (int i = 0; i < 3; ++i) {
    s += std::to_string(n);
    for (int c = 0; c < 3; ++c) s += c == i ? " 1.0" : " 0.0";
    s += "\n";
  }
  s += "1 1.0 0 0 0\n" + extra + values;
  return s;
}

TEST(Cube, TwoByTwo) {
  const auto g = parse_cube(cube_text(1, "", 2, "1 1 1 1 1 1 1 1\n"));
  EXPECT_EQ(g.dims, (std::array<int, 3>{2, 2, 2}));
  EXPECT_EQ(g.values.size(), 8u);
  EXPECT_EQ(g.max_abs(), 1.0);
  EXPECT_EQ(g.atoms.size(), 1u);
  EXPECT_NEAR(g.steps[0].x(), units::kBohrToAng, 1e-15);
}

TEST(Cube, C60SizedGrid) {
  std::string v;
  v.reserve(84 * 84 * 84 * 2);
  for (int i = 0; i < 84 * 84 * 84; ++i) v += "0\n";
  const auto g = parse_cube(cube_text(1, "", 84, v));
  EXPECT_EQ(g.values.size(), 592704u);
}

TEST(Cube, NegativeAtomCountMeansDatasetLine) {
  const auto g = parse_cube(cube_text(-1, "1 1\n", 2, "1 2 3 4 5 6 7 8\n"));
  EXPECT_EQ(g.values[7], 8.0);
  EXPECT_EQ(error_name([] { parse_cube(cube_text(-1, "2 1 2\n", 2, "1 2 3 4 5 6 7 8\n")); }),
            "MultiOrbitalUnsupported");
}

TEST(Cube, NegativeCountsMeanAngstrom) {
  std::string t = cube_text(1, "", 2, "1 2 3 4 5 6 7 8\n");
  for (int i = 0; i < 3; ++i) t.replace(t.find("\n2 ") + 1, 1, "-2");
  const auto g = parse_cube(t);
  EXPECT_EQ(g.dims, (std::array<int, 3>{2, 2, 2}));
  EXPECT_EQ(g.steps[0].x(), 1.0);
}

TEST(Cube, Truncated) {
  EXPECT_EQ(error_name([] { parse_cube(cube_text(1, "", 2, "1 2 3\n")); }), "TruncatedData");
  EXPECT_EQ(error_name([] { parse_cube("c\nc\n1 0 0 0\n"); }), "BadHeader");
}

TEST(Cube, KFastest) {
  const auto g = parse_cube(cube_text(1, "", 2, "0 1 2 3 4 5 6 7\n"));
  EXPECT_EQ(g.at(0, 0, 1), 1.0);
  EXPECT_EQ(g.at(0, 1, 0), 2.0);
  EXPECT_EQ(g.at(1, 0, 0), 4.0);
}

// ---- band

TEST(Band, TwoPoints) {
  const auto b = parse_band("1 0 0.0\n1 0 0 0 1 0 0 0 1\n1\n2 0 0 0 0.5 0 0 G X\n1 0 0 0\n-0.5\n1 0.5 0 0\n-0.4\n");
  ASSERT_EQ(b.segments.size(), 1u);
  ASSERT_EQ(b.segments[0].kpoints.size(), 2u);
  EXPECT_EQ(b.segments[0].kpoints[1].energies[0][0], -0.4);
  EXPECT_EQ(b.segments[0].label_end, "X");
}

TEST(Band, SpinPolarizedFixture) {
  const auto b = parse_band(oracle::slurp(oracle::data_path("si.Band")));
  EXPECT_EQ(b.spin_channels, 2);
  for (const auto& s : b.segments)
    for (const auto& k : s.kpoints) EXPECT_EQ(k.energies.size(), 2u);
  EXPECT_EQ(b.segments[0].kpoints[0].energies[1][1], 0.298);
}

TEST(Band, WrappingIsInvisible) {
  std::vector<double> e;
  for (int i = 0; i < 15; ++i) e.push_back(-0.3 + 0.01 * i);
  auto build = [&](std::size_t per_line) {
    std::string s = "15 0 0.1\n1 0 0 0 1 0 0 0 1\n1\n1 0 0 0 0.5 0 0 G X\n15 0 0 0\n";
    for (std::size_t i = 0; i < e.size(); ++i) s += std::to_string(e[i]) + ((i + 1) % per_line == 0 ? "\n" : " ");
    return s + "\n";
  };
  const auto a = parse_band(build(15)), b = parse_band(build(6));
  EXPECT_EQ(a.segments[0].kpoints[0].energies, b.segments[0].kpoints[0].energies);
}

TEST(Band, QuotedLabels) {
  const auto b = parse_band("1 0 0.0\n1 0 0 0 1 0 0 0 1\n1\n1 0 0 0 0.5 0 0 \"G\" 'X'\n1 0 0 0\n-0.5\n");
  EXPECT_EQ(b.segments[0].label_start, "G");
  EXPECT_EQ(b.segments[0].label_end, "X");
}

TEST(Band, Errors) {
  EXPECT_EQ(error_name([] { parse_band("1 0 0.0\n1 0 0 0 1 0 0 0 1\n1\n2 0 0 0 0.5 0 0 G X\n1 0 0 0\n-0.5\n"); }),
            "TruncatedBand");
  EXPECT_EQ(error_name([] { parse_band("2 0 0.0\n1 0 0 0 1 0 0 0 1\n1\n1 0 0 0 0.5 0 0 G X\n3 0 0 0\n-0.5 1 2\n"); }),
            "BandCountMismatch");
}

// ---- payload helpers

TEST(Payload, StructureAt) {
  const auto p = parse_as(FormatKind::openmx_md, oracle::slurp(oracle::data_path("water.md")));
  EXPECT_EQ(frame_count(p), 3);
  EXPECT_NEAR(structure_at(p, 1).atoms[1].position.y(), 0.764772, 1e-12);
  EXPECT_EQ(error_name([&] { structure_at(p, 3); }), "BadFrame");
  const auto band = parse_as(FormatKind::band, oracle::slurp(oracle::data_path("si.Band")));
  EXPECT_EQ(frame_count(band), 0);
  EXPECT_EQ(error_name([&] { structure_at(band, 0); }), "NoStructure");
  const auto cube = parse_as(FormatKind::cube, oracle::slurp(oracle::data_path("dipole.cube")));
  EXPECT_EQ(structure_at(cube).atoms.size(), 2u);
  EXPECT_TRUE(structure_at(cube).lattice);
}

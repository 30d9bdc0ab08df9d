#include <gtest/gtest.h>

#include <random>

#include "mxv/constants.hpp"
#include "mxv/error.hpp"
#include "mxv/isosurface.hpp"
#include "mxv/parsers.hpp"
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

Structure reparse(const std::string& text, StructureFormat f) {
  switch (f) {
    case StructureFormat::xyz: return parse_xyz(text).frames.at(0);
    case StructureFormat::cif: return parse_cif(text);
    default: return parse_openmx_dat(text);
  }
}

void expect_same_structure(const Structure& a, const Structure& b, double tol) {
  ASSERT_EQ(a.atoms.size(), b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    EXPECT_EQ(a.atoms[i].element, b.atoms[i].element);
    EXPECT_LT((a.atoms[i].position - b.atoms[i].position).norm(), tol) << i;
  }
  ASSERT_EQ(a.lattice.has_value(), b.lattice.has_value());
  if (a.lattice) EXPECT_LT((a.lattice->vectors() - b.lattice->vectors()).cwiseAbs().maxCoeff(), tol);
}

std::string fmt_count(const char* element, std::size_t n) {
  return std::string("element ") + element + " " + std::to_string(n) + "\n";
}

}  // namespace

TEST(StructureWriter, SingleCarbon) {
  Structure s;
  Atom c;
  c.species = "C";
  c.element = element_lookup("C");
  s.atoms = {c};
  EXPECT_EQ(write_structure(s, StructureFormat::xyz), "1\n\nC 0.000000 0.000000 0.000000\n");
}

TEST(StructureWriter, NegativeZeroPrintsAsZero) {
  Structure s;
  Atom c;
  c.element = element_lookup("C");
  c.position = Vec3(-1e-12, 0, 0);
  s.atoms = {c};
  EXPECT_EQ(write_structure(s, StructureFormat::xyz), "1\n\nC 0.000000 0.000000 0.000000\n");
}

TEST(StructureWriter, MoleculeNeedsLattice) {
  Structure s;
  Atom c;
  c.element = element_lookup("C");
  s.atoms = {c};
  EXPECT_EQ(error_name([&] { write_structure(s, StructureFormat::cif); }), "NeedsLattice");
  EXPECT_EQ(error_name([&] { write_structure(s, StructureFormat::omx_frac); }), "NeedsLattice");
  EXPECT_NO_THROW(write_structure(s, StructureFormat::omx_cart));
}

TEST(StructureWriter, FormatNames) {
  EXPECT_EQ(parse_structure_format("omx-frac"), StructureFormat::omx_frac);
  EXPECT_EQ(parse_structure_format("omx_cart"), StructureFormat::omx_cart);
  EXPECT_EQ(error_name([] { parse_structure_format("pdb"); }), "BadFormat");
}

TEST(StructureWriter, SiliconOmxFracRoundTrip) {
  const auto si = oracle::silicon();
  expect_same_structure(si, parse_openmx_dat(write_structure(si, StructureFormat::omx_frac)), 1e-6);
}

TEST(StructureWriter, RoundTripsRandomCrystals) {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 25; ++n) {
    const auto s = oracle::random_crystal(rng, 12);
    for (auto f : {StructureFormat::xyz, StructureFormat::cif, StructureFormat::omx_cart, StructureFormat::omx_frac}) {
      const auto text = write_structure(s, f);
      expect_same_structure(s, reparse(text, f), 1e-6);
      EXPECT_EQ(text, write_structure(s, f));  // deterministic
    }
  }
}

TEST(StructureWriter, SpinColumnsSurvive) {
  auto s = parse_openmx_dat(oracle::slurp(oracle::data_path("si.dat")));
  const auto back = parse_openmx_dat(write_structure(s, StructureFormat::omx_cart));
  EXPECT_EQ(*back.atoms[3].properties.spin_up, 2.0);
  EXPECT_EQ(*back.atoms[3].properties.spin, 0.0);
}

TEST(MeshWriter, SingleTriangleObj) {
  TriangleMesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  m.normals.assign(3, Vec3(0, 0, 1));
  m.triangles = {{0, 1, 2}};
  const auto o = oracle::read_obj(write_mesh(m, MeshFormat::obj));
  EXPECT_EQ(o.v.size(), 3u);
  EXPECT_EQ(o.vn.size(), 3u);
  ASSERT_EQ(o.f.size(), 1u);
  EXPECT_EQ(o.f[0], (std::array<int, 3>{0, 1, 2}));
  EXPECT_NE(write_mesh(m, MeshFormat::obj).find("f 1//1 2//2 3//3"), std::string::npos);
}

TEST(MeshWriter, EmptyMeshIsValid) {
  const TriangleMesh m;
  const auto obj = oracle::read_obj(write_mesh(m, MeshFormat::obj));
  EXPECT_TRUE(obj.f.empty());
  const auto ply = write_mesh(m, MeshFormat::ply);
  EXPECT_NE(ply.find("element vertex 0\n"), std::string::npos);
  EXPECT_NE(ply.find("element face 0\n"), std::string::npos);
  EXPECT_EQ(ply.substr(ply.size() - 11), "end_header\n");
}

TEST(MeshWriter, SphereObjRoundTripAndGroups) {
  const auto g = oracle::sphere_grid(20, Vec3(9.5, 9.3, 9.6), 6);
  const auto pair = iso::extract_pair(g, 0.5, iso::Algorithm::marching_cubes);
  auto neg = g;
  for (auto& v : neg.values) v = -v;
  const auto flipped = iso::extract_pair(neg, 0.5, iso::Algorithm::marching_cubes);
  const std::vector<TriangleMesh> meshes = {pair.positive, flipped.negative};
  const auto o = oracle::read_obj(write_mesh(meshes, MeshFormat::obj));
  EXPECT_EQ(o.v.size(), 2 * pair.positive.vertices.size());
  EXPECT_EQ(o.f.size(), 2 * pair.positive.triangles.size());
  EXPECT_EQ(o.groups, (std::vector<std::string>{"positive", "negative"}));
  for (const auto& f : o.f)
    for (int i : f) EXPECT_LT(static_cast<std::size_t>(i), o.v.size());
  for (std::size_t i = 0; i < pair.positive.vertices.size(); ++i)
    EXPECT_LT((o.v[i] - pair.positive.vertices[i]).norm(), 1e-6);
}

TEST(MeshWriter, PlyCounts) {
  const auto g = oracle::sphere_grid(12, Vec3(5.5, 5.5, 5.5), 3);
  const auto m = iso::extract_pair(g, 0.5, iso::Algorithm::surface_nets).positive;
  const auto ply = write_mesh(m, mesh_format_for("out.PLY"));
  EXPECT_EQ(ply.rfind("ply\n", 0), 0u);
  EXPECT_NE(ply.find(fmt_count("vertex", m.vertices.size())), std::string::npos);
  EXPECT_NE(ply.find(fmt_count("face", m.triangles.size())), std::string::npos);
  EXPECT_EQ(mesh_format_for("a.obj"), MeshFormat::obj);
}

TEST(BandTable, Constants) {
  BandData b;
  b.n_bands = 2;
  b.chem_potential = 0.25;
  KPathSegment seg;
  seg.n_points = 1;
  seg.label_start = "G";
  seg.label_end = "G";
  KPoint k;
  k.energies = {{0.25, 1.25}};
  seg.kpoints = {k};
  b.segments = {seg};
  const auto csv = write_band_table(b);
  EXPECT_NE(csv.find("\n0,0,1,0\n"), std::string::npos);
  EXPECT_NE(csv.find("\n0,0,2,27.211386245988\n"), std::string::npos);
}

TEST(BandTable, HeaderAndWindow) {
  const auto b = parse_band(oracle::slurp(oracle::data_path("si.Band")));
  const auto csv = write_band_table(b);
  EXPECT_EQ(csv.rfind("# ticks 0:G 0.5785:X 1.157:M\n", 0), 0u);
  EXPECT_NE(csv.find("distance,spin,band,energy_ev\n"), std::string::npos);
  // previous distance never exceeds the next within one band
  std::istringstream in(csv);
  std::string line;
  double prev = -1;
  int prev_band = -1, prev_spin = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
    double d;
    int spin, band;
    char c;
    std::istringstream ls(line);
    ls >> d >> c >> spin >> c >> band;
    if (band == prev_band && spin == prev_spin) EXPECT_GE(d, prev);
    prev = d;
    prev_band = band;
    prev_spin = spin;
  }
  const auto windowed = write_band_table(b, -2.0, 2.0);
  EXPECT_LT(windowed.size(), csv.size());
}

TEST(CubeWriter, RoundTrip) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  std::lognormal_distribution<double> mag(0, 4);
  Mat3 V;
  V << 0.2, -0.1, 0.0, 0.0, 0.17, 0.0, 0.01, 0.0, 0.22;
  auto g = oracle::grid_from({5, 4, 7}, [&](int, int, int) { return u(rng) * mag(rng); }, V, Vec3(0.3, -0.2, 1.1));
  Atom h;
  h.element = element_lookup("H");
  h.position = Vec3(0.5, 0.5, 0.5);
  g.atoms = {h};
  const auto back = parse_cube(write_cube(g));
  EXPECT_EQ(back.dims, g.dims);
  // header holds Bohr with 8 decimals
  EXPECT_LT((back.origin - g.origin).norm(), 1e-6);
  for (int i = 0; i < 3; ++i) EXPECT_LT((back.steps[i] - g.steps[i]).norm(), 1e-6);
  ASSERT_EQ(back.values.size(), g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i)
    EXPECT_LE(std::abs(back.values[i] - g.values[i]), 1e-10 * std::abs(g.values[i]));
  ASSERT_EQ(back.atoms.size(), 1u);
  EXPECT_LT((back.atoms[0].position - h.position).norm(), 1e-6);
}

TEST(CubeWriter, FixtureRoundTrip) {
  const auto g = parse_cube(oracle::slurp(oracle::data_path("dipole.cube")));
  const auto back = parse_cube(write_cube(g));
  for (std::size_t i = 0; i < g.values.size(); ++i)
    EXPECT_LE(std::abs(back.values[i] - g.values[i]), 1e-10 * std::abs(g.values[i]));
}

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mxv/model.hpp"

namespace mxv {

enum class StructureFormat { xyz, cif, omx_cart, omx_frac };

/// "xyz", "cif", "omx-cart"/"omx_cart", "omx-frac"/"omx_frac"; throws BadFormat.
StructureFormat parse_structure_format(std::string_view name);
std::string_view to_string(StructureFormat f);

/// Cartesian Å columns use 6 decimals. Fractional coordinates, cell vectors
/// and cell parameters use 10 so a write/parse cycle stays within 1e-6 Å.
/// Throws NeedsLattice for cif and omx_frac on a molecule.
std::string write_structure(const Structure& s, StructureFormat format);

enum class MeshFormat { obj, ply };

/// Picks ply for a ".ply" path and obj otherwise.
MeshFormat mesh_format_for(std::string_view path);

/// Each mesh becomes a group named after its sign. Empty meshes produce a
/// valid file with no faces.
std::string write_mesh(std::span<const TriangleMesh> meshes, MeshFormat format);
std::string write_mesh(const TriangleMesh& mesh, MeshFormat format);

/// CSV of (distance, spin, band, energy_ev) with comment header rows listing
/// the label positions. Optional window in eV applies the band-plot clipping.
std::string write_band_table(const BandData& b, std::optional<double> emin = std::nullopt,
                             std::optional<double> emax = std::nullopt);

/// Gaussian cube in Bohr with values in %.12E, six per line.
std::string write_cube(const VolumetricGrid& g, std::string_view comment = "written by mxv");

}  // namespace mxv

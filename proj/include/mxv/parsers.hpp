#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "mxv/model.hpp"
#include "mxv/symmetry.hpp"

namespace mxv {

enum class FormatKind { xyz, xyz_multi, cif, openmx_dat, openmx_md, cube, band };
enum class DetectionSource { by_extension, by_content };

struct DetectedFormat {
  FormatKind kind;
  DetectionSource confidence;
};

std::string_view to_string(FormatKind kind);
std::string_view to_string(DetectionSource source);

/// Identifies a file from its name and its first few kilobytes. A recognised
/// extension wins when the content agrees with it; otherwise content
/// heuristics decide. Throws UnknownFormat when neither matches.
DetectedFormat detect_format(std::string_view filename, std::string_view head);

Trajectory parse_xyz(std::string_view text);
Structure parse_cif(std::string_view text);
Structure parse_openmx_dat(std::string_view text);
Trajectory parse_openmx_md(std::string_view text);
VolumetricGrid parse_cube(std::string_view text);
BandData parse_band(std::string_view text);

/// Standard crystallographic orientation: a along x, b in the xy plane.
/// Throws DegenerateCell for impossible parameter sets.
Lattice lattice_from_parameters(double a, double b, double c, double alpha_deg, double beta_deg,
                                double gamma_deg);

using Payload = std::variant<Structure, Trajectory, VolumetricGrid, BandData>;

/// Dispatches to the parser that matches `format`. Structure formats that can
/// hold several frames (xyz, md) always come back as a Trajectory.
Payload parse_as(FormatKind format, std::string_view text);

/// Frames a payload can show as a structure: trajectory length, 1 for a
/// structure or a cube (its atoms in the grid cell), 0 for band data.
int frame_count(const Payload& p);
/// The structure shown for `frame` (0-based). Throws NoStructure for band
/// data and BadFrame for an out-of-range frame.
Structure structure_at(const Payload& p, int frame = 0);

}  // namespace mxv

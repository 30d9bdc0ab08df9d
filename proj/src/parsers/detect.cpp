#include <algorithm>
#include <filesystem>

#include "mxv/error.hpp"
#include "mxv/parsers.hpp"
#include "text.hpp"

namespace mxv {
namespace {

std::vector<std::string_view> nonblank_lines(std::string_view head) {
  std::vector<std::string_view> out;
  for (auto l : text::split_lines(head)) {
    if (!text::trim(l).empty()) out.push_back(l);
  }
  return out;
}

bool all_numbers(const std::vector<std::string_view>& toks, std::size_t from, std::size_t count) {
  if (toks.size() < from + count) return false;
  for (std::size_t i = from; i < from + count; ++i) {
    if (!text::to_double(toks[i])) return false;
  }
  return true;
}

bool looks_cif(std::string_view head) {
  for (auto l : text::split_lines(head)) {
    auto t = text::trim(l);
    if (t.size() >= 5 && text::iequals(t.substr(0, 5), "data_")) return true;
  }
  return false;
}

bool looks_openmx_dat(std::string_view head) {
  for (auto l : text::split_lines(head)) {
    auto toks = text::tokens(l);
    if (!toks.empty() && text::iequals(toks[0], "Atoms.Number")) return true;
  }
  return false;
}

// Returns the number of frames visible in `head`, or 0 if it is not XYZ-shaped.
int xyz_frames(std::string_view head) {
  const auto lines = text::split_lines(head);
  std::size_t i = 0;
  int frames = 0;
  while (true) {
    while (i < lines.size() && text::trim(lines[i]).empty()) ++i;
    if (i >= lines.size()) break;
    const auto toks = text::tokens(lines[i]);
    const auto n = text::to_long(toks[0]);
    if (toks.size() != 1 || !n || *n < 0) return frames;
    if (i + 2 < lines.size() && *n > 0) {
      const auto row = text::tokens(lines[i + 2]);
      if (row.size() < 4 || text::to_double(row[0]) || !all_numbers(row, 1, 3)) return frames;
    }
    ++frames;
    i += 2 + static_cast<std::size_t>(*n);
  }
  return frames;
}

bool looks_cube(std::string_view head) {
  const auto lines = text::split_lines(head);
  if (lines.size() < 6) return false;
  for (std::size_t i = 2; i < 6; ++i) {
    const auto toks = text::tokens(lines[i]);
    if (toks.size() < 4 || !text::to_long(toks[0]) || !all_numbers(toks, 1, 3)) return false;
  }
  return true;
}

bool looks_band(std::string_view head) {
  const auto lines = nonblank_lines(head);
  if (lines.size() < 3) return false;
  const auto first = text::tokens(lines[0]);
  const auto second = text::tokens(lines[1]);
  const auto third = text::tokens(lines[2]);
  return first.size() == 3 && text::to_long(first[0]) && text::to_long(first[1]) && text::to_double(first[2]) &&
         second.size() == 9 && all_numbers(second, 0, 9) && third.size() == 1 && text::to_long(third[0]);
}

std::optional<FormatKind> by_extension(std::string_view filename, std::string_view head) {
  const std::string ext = text::lower(std::filesystem::path(std::string(filename)).extension().string());
  if (ext == ".xyz") {
    const int frames = xyz_frames(head);
    if (frames == 0) return std::nullopt;
    return frames > 1 ? FormatKind::xyz_multi : FormatKind::xyz;
  }
  if (ext == ".cif") return looks_cif(head) ? std::optional(FormatKind::cif) : std::nullopt;
  if (ext == ".dat") return looks_openmx_dat(head) ? std::optional(FormatKind::openmx_dat) : std::nullopt;
  if (ext == ".md") return xyz_frames(head) > 0 ? std::optional(FormatKind::openmx_md) : std::nullopt;
  if (ext == ".cube") return looks_cube(head) ? std::optional(FormatKind::cube) : std::nullopt;
  if (ext == ".band") return looks_band(head) ? std::optional(FormatKind::band) : std::nullopt;
  return std::nullopt;
}

std::optional<FormatKind> extension_only(std::string_view filename) {
  const std::string ext = text::lower(std::filesystem::path(std::string(filename)).extension().string());
  if (ext == ".xyz") return FormatKind::xyz;
  if (ext == ".cif") return FormatKind::cif;
  if (ext == ".dat") return FormatKind::openmx_dat;
  if (ext == ".md") return FormatKind::openmx_md;
  if (ext == ".cube") return FormatKind::cube;
  if (ext == ".band") return FormatKind::band;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(FormatKind kind) {
  switch (kind) {
    case FormatKind::xyz: return "xyz";
    case FormatKind::xyz_multi: return "xyz_multi";
    case FormatKind::cif: return "cif";
    case FormatKind::openmx_dat: return "openmx_dat";
    case FormatKind::openmx_md: return "openmx_md";
    case FormatKind::cube: return "cube";
    case FormatKind::band: return "band";
  }
  return "unknown";
}

std::string_view to_string(DetectionSource source) {
  return source == DetectionSource::by_extension ? "by_extension" : "by_content";
}

DetectedFormat detect_format(std::string_view filename, std::string_view head) {
  if (head.size() > 4096) head = head.substr(0, 4096);
  if (auto k = by_extension(filename, head)) return {*k, DetectionSource::by_extension};

  if (looks_cif(head)) return {FormatKind::cif, DetectionSource::by_content};
  if (looks_openmx_dat(head)) return {FormatKind::openmx_dat, DetectionSource::by_content};
  if (looks_band(head)) return {FormatKind::band, DetectionSource::by_content};
  if (looks_cube(head)) return {FormatKind::cube, DetectionSource::by_content};
  if (const int frames = xyz_frames(head); frames > 0) {
    return {frames > 1 ? FormatKind::xyz_multi : FormatKind::xyz, DetectionSource::by_content};
  }
  // A known extension with unrecognisable content is still handed to its
  // parser so the user gets a located parse error instead of a generic one.
  if (auto k = extension_only(filename)) return {*k, DetectionSource::by_extension};
  throw Error("UnknownFormat", "cannot determine the format of '" + std::string(filename) + "'");
}

Payload parse_as(FormatKind format, std::string_view text) {
  switch (format) {
    case FormatKind::xyz:
    case FormatKind::xyz_multi: return parse_xyz(text);
    case FormatKind::openmx_md: return parse_openmx_md(text);
    case FormatKind::cif: return parse_cif(text);
    case FormatKind::openmx_dat: return parse_openmx_dat(text);
    case FormatKind::cube: return parse_cube(text);
    case FormatKind::band: return parse_band(text);
  }
  throw Error("UnknownFormat", "unsupported format");
}

}  // namespace mxv

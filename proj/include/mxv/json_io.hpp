#pragma once

// JSON bodies shared by the CLI (--json) and the HTTP service, so both
// interfaces print byte-identical documents.

#include <string>
#include <vector>

#include <json.hpp>

#include "mxv/band.hpp"
#include "mxv/error.hpp"
#include "mxv/geometry.hpp"
#include "mxv/isosurface.hpp"
#include "mxv/parsers.hpp"

namespace mxv::json_io {

using nlohmann::json;

inline constexpr int kApiVersion = 1;

json vec(const Vec3& v);
json lattice(const std::optional<Lattice>& l);
json atom(const Atom& a);
json structure(const Structure& s);
json bonds(const std::vector<Bond>& b);
json measurement(const MeasurementReport& r);
json summary(const DetectedFormat& kind, const Payload& p);
json volume_meta(const VolumetricGrid& g);
json mesh(const TriangleMesh& m);  // flat numeric arrays
json mesh_pair(const iso::MeshPair& m, iso::Algorithm a);
json band_plot(const BandPlot& p);
json error(const Error& e);

/// Serialized form used on every wire: compact dump plus a trailing newline.
std::string body(const json& j);

}  // namespace mxv::json_io

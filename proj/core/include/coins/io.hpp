#pragma once

#include <iosfwd>
#include <string>

#include "coins/geometry.hpp"
#include "coins/gridmap.hpp"

namespace coins {

// Depth container: text header (magic "CND1", width, height, units rel|m,
// then "data"), width*height little-endian float32 row-major, then a trailing
// validity bitmask of ceil(n/8) bytes, LSB-first within each byte.
DepthImage read_depth(std::istream& in, const std::string& origin);
DepthImage load_depth(const std::string& path);
void write_depth(std::ostream& out, const DepthImage& d);
void save_depth(const DepthImage& d, const std::string& path);

// Point cloud: plain text, one point per line "x y z [u v]", '#' comments.
PointCloud read_cloud(std::istream& in, const std::string& origin);
PointCloud load_cloud(const std::string& path);
void write_cloud(std::ostream& out, const PointCloud& cloud);
void save_cloud(const PointCloud& cloud, const std::string& path);

// Intrinsics: JSON object {fx, fy, cx, cy, width, height}.
Intrinsics load_intrinsics(const std::string& path);
Intrinsics intrinsics_from_json(const std::string& text, const std::string& origin);

// Traversability map: "coins-travmap v1" header, grid fields, RLE rows with
// 'o' = blocked and '.' = traversable.
TraversabilityMap read_travmap(std::istream& in, const std::string& origin);
TraversabilityMap load_travmap(const std::string& path);
void write_travmap(std::ostream& out, const TraversabilityMap& map);
void save_travmap(const TraversabilityMap& map, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace coins

#include "coins/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coins {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ParseError(origin + ": " + msg);
}

std::string next_header_line(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) fail(origin, "unexpected end of header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string fmt_double(double v) {
  char buf[64];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

}  // namespace

DepthImage read_depth(std::istream& in, const std::string& origin) {
  if (next_header_line(in, origin) != "CND1") fail(origin, "bad magic, expected CND1");

  int width = -1, height = -1;
  DepthUnits units = DepthUnits::relative;
  bool have_units = false;
  while (true) {
    const std::string line = next_header_line(in, origin);
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "data") break;
    if (key == "width") {
      if (!(ls >> width) || width < 1) fail(origin, "width: bad value");
    } else if (key == "height") {
      if (!(ls >> height) || height < 1) fail(origin, "height: bad value");
    } else if (key == "units") {
      std::string u;
      ls >> u;
      if (u == "rel") units = DepthUnits::relative;
      else if (u == "m") units = DepthUnits::meters;
      else fail(origin, "units: expected rel|m, got '" + u + "'");
      have_units = true;
    } else {
      fail(origin, "unknown header key '" + key + "'");
    }
  }
  if (width < 0 || height < 0) fail(origin, "width/height missing");
  if (!have_units) fail(origin, "units missing");

  DepthImage d = DepthImage::create(width, height, units);
  const std::size_t n = d.values.size();
  static_assert(sizeof(float) == 4);
  in.read(reinterpret_cast<char*>(d.values.data()), static_cast<std::streamsize>(n * 4));
  if (static_cast<std::size_t>(in.gcount()) != n * 4) fail(origin, "truncated pixel block");

  std::vector<std::uint8_t> mask((n + 7) / 8, 0);
  in.read(reinterpret_cast<char*>(mask.data()), static_cast<std::streamsize>(mask.size()));
  if (static_cast<std::size_t>(in.gcount()) != mask.size()) fail(origin, "truncated mask block");
  for (std::size_t i = 0; i < n; ++i) d.valid[i] = (mask[i >> 3] >> (i & 7)) & 1;

  d.check();
  return d;
}

DepthImage load_depth(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open depth file: " + path);
  return read_depth(in, path);
}

void write_depth(std::ostream& out, const DepthImage& d) {
  d.check();
  out << "CND1\n";
  out << "width " << d.width << "\n";
  out << "height " << d.height << "\n";
  out << "units " << (d.units == DepthUnits::relative ? "rel" : "m") << "\n";
  out << "data\n";
  out.write(reinterpret_cast<const char*>(d.values.data()),
            static_cast<std::streamsize>(d.values.size() * 4));
  std::vector<std::uint8_t> mask((d.values.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.valid[i]) mask[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
  }
  out.write(reinterpret_cast<const char*>(mask.data()),
            static_cast<std::streamsize>(mask.size()));
}

void save_depth(const DepthImage& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write depth file: " + path);
  write_depth(out, d);
}

PointCloud read_cloud(std::istream& in, const std::string& origin) {
  PointCloud cloud;
  std::string line;
  int line_no = 0;
  bool any_pixels = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x, y, z;
    if (!(ls >> x >> y >> z))
      fail(origin + ":" + std::to_string(line_no), "expected 'x y z [u v]'");
    cloud.points.emplace_back(x, y, z);
    int u, v;
    if (ls >> u >> v) {
      cloud.pixels.push_back({u, v});
      any_pixels = true;
    } else {
      cloud.pixels.push_back({-1, -1});
    }
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      fail(origin + ":" + std::to_string(line_no), "non-finite coordinate");
  }
  if (!any_pixels) cloud.pixels.clear();
  return cloud;
}

PointCloud load_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open cloud file: " + path);
  return read_cloud(in, path);
}

void write_cloud(std::ostream& out, const PointCloud& cloud) {
  out << "# coins-cloud v1: x y z [u v]\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& p = cloud.points[i];
    out << fmt_double(p.x()) << " " << fmt_double(p.y()) << " " << fmt_double(p.z());
    if (cloud.has_provenance() && cloud.pixels[i].u >= 0)
      out << " " << cloud.pixels[i].u << " " << cloud.pixels[i].v;
    out << "\n";
  }
}

void save_cloud(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write cloud file: " + path);
  write_cloud(out, cloud);
}

Intrinsics intrinsics_from_json(const std::string& text, const std::string& origin) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(origin, "not valid JSON");
  Intrinsics k;
  try {
    k.fx = j.at("fx").get<double>();
    k.fy = j.at("fy").get<double>();
    k.cx = j.at("cx").get<double>();
    k.cy = j.at("cy").get<double>();
    k.width = j.at("width").get<int>();
    k.height = j.at("height").get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(origin, e.what());
  }
  k.validate();
  return k;
}

Intrinsics load_intrinsics(const std::string& path) {
  return intrinsics_from_json(read_text_file(path), path);
}

TraversabilityMap read_travmap(std::istream& in, const std::string& origin) {
  std::string line = next_header_line(in, origin);
  {
    std::istringstream ls(line);
    std::string magic, version;
    ls >> magic >> version;
    if (magic != "coins-travmap") fail(origin, "bad magic, expected coins-travmap");
    if (version != "v1") throw SchemaVersionError(origin + ": unsupported version " + version);
  }

  TraversabilityMap map;
  bool have_size = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "resolution") {
      ls >> map.spec.resolution;
    } else if (key == "origin") {
      ls >> map.spec.origin_x >> map.spec.origin_y;
    } else if (key == "size") {
      ls >> map.spec.width >> map.spec.height;
      have_size = true;
    } else if (key == "rows") {
      if (!have_size) fail(origin, "rows: 'size' must come first");
      map.spec.validate();
      map.trav.clear();
      map.trav.reserve(map.spec.cell_count());
      for (int row = 0; row < map.spec.height; ++row) {
        if (!std::getline(in, line)) fail(origin, "rows: unexpected end of file");
        std::istringstream rs(line);
        std::string row_label;
        rs >> row_label;
        if (row_label != std::to_string(row) + ":")
          fail(origin, "rows: expected row '" + std::to_string(row) + ":'");
        int count = 0;
        std::string run;
        while (rs >> run) {
          const char sym = run.back();
          if (sym != '.' && sym != 'o') fail(origin, "rows: bad run '" + run + "'");
          const long c = std::strtol(run.substr(0, run.size() - 1).c_str(), nullptr, 10);
          if (c < 1) fail(origin, "rows: bad run count in '" + run + "'");
          for (long k = 0; k < c; ++k) map.trav.push_back(sym == '.' ? 1 : 0);
          count += static_cast<int>(c);
        }
        if (count != map.spec.width) fail(origin, "rows: row " + std::to_string(row) +
                                                       " covers " + std::to_string(count) +
                                                       " cells");
      }
    } else if (key == "end") {
      break;
    } else {
      fail(origin, "unknown key '" + key + "'");
    }
  }
  if (map.trav.size() != map.spec.cell_count()) fail(origin, "rows block missing or incomplete");
  return map;
}

TraversabilityMap load_travmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open travmap file: " + path);
  return read_travmap(in, path);
}

void write_travmap(std::ostream& out, const TraversabilityMap& map) {
  out << "coins-travmap v1\n";
  out << "resolution " << fmt_double(map.spec.resolution) << "\n";
  out << "origin " << fmt_double(map.spec.origin_x) << " " << fmt_double(map.spec.origin_y)
      << "\n";
  out << "size " << map.spec.width << " " << map.spec.height << "\n";
  out << "rows\n";
  for (int row = 0; row < map.spec.height; ++row) {
    out << row << ":";
    int run = 0;
    std::uint8_t cur = 0;
    auto flush = [&]() {
      if (run > 0) out << " " << run << (cur ? '.' : 'o');
      run = 0;
    };
    for (int x = 0; x < map.spec.width; ++x) {
      const std::uint8_t v = map.trav[static_cast<std::size_t>(row) * map.spec.width + x];
      if (run > 0 && v == cur) {
        ++run;
      } else {
        flush();
        cur = v;
        run = 1;
      }
    }
    flush();
    out << "\n";
  }
  out << "end\n";
}

void save_travmap(const TraversabilityMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write travmap file: " + path);
  write_travmap(out, map);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write file: " + path);
  out << content;
}

}  // namespace coins

#include "coins/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace coins {

std::string to_string(SceneCategory c) {
  switch (c) {
    case SceneCategory::small_room: return "small_room";
    case SceneCategory::big_room: return "big_room";
    case SceneCategory::room_to_room: return "room_to_room";
  }
  return "small_room";
}

SceneCategory scene_category_from_string(const std::string& s) {
  if (s == "small_room") return SceneCategory::small_room;
  if (s == "big_room") return SceneCategory::big_room;
  if (s == "room_to_room") return SceneCategory::room_to_room;
  throw ParseError("category: unknown value '" + s + "'");
}

std::vector<StartGoal> Scenario::all_pairs() const {
  std::vector<StartGoal> pairs;
  pairs.push_back({start, start_heading, goal});
  pairs.insert(pairs.end(), extra_pairs.begin(), extra_pairs.end());
  return pairs;
}

Scenario Scenario::with_pair(std::size_t i) const {
  const auto pairs = all_pairs();
  if (i >= pairs.size()) throw OutOfBounds("pair index " + std::to_string(i));
  Scenario s = *this;
  s.start = pairs[i].start;
  s.start_heading = pairs[i].heading;
  s.goal = pairs[i].goal;
  return s;
}

OccupancyMap Scenario::initial_occupancy(double h_max) const {
  std::vector<double> h(grid.cell_count(), 0.0);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (fixed[i]) h[i] = kWallHeight;
  for (const auto& obj : movables) {
    for (const Cell& c : obj.footprint) {
      if (!grid.in_bounds(c)) continue;
      double& cell = h[grid.index(c)];
      if (obj.height > cell) cell = obj.height;
    }
  }
  OccupancyMap occ = OccupancyMap::empty(grid);
  for (std::size_t i = 0; i < h.size(); ++i) occ.occ[i] = h[i] > h_max ? 1 : 0;
  return occ;
}

void Scenario::validate() const {
  grid.validate();
  if (fixed.size() != grid.cell_count())
    throw ParseError("fixed: cell count does not match the grid size");
  for (const auto& p : all_pairs()) {
    if (!grid.contains_point(p.start.x(), p.start.y()))
      throw ParseError("start: out of bounds");
    if (!grid.contains_point(p.goal.x(), p.goal.y())) throw ParseError("goal: out of bounds");
    if (fixed_at(grid.cell_at(p.start.x(), p.start.y())))
      throw ParseError("start: inside a fixed obstacle");
  }
  std::set<std::string> ids;
  for (const auto& obj : movables) {
    obj.validate();
    if (!ids.insert(obj.id).second) throw ParseError("object id: duplicate '" + obj.id + "'");
    for (const Cell& c : obj.footprint) {
      if (!grid.in_bounds(c))
        throw ParseError("footprint: cell " + to_string(c) + " of '" + obj.id +
                         "' out of bounds");
      if (fixed_at(c))
        throw ParseError("footprint: cell " + to_string(c) + " of '" + obj.id +
                         "' overlaps a fixed obstacle");
    }
  }
}

namespace {

// Shortest decimal that reparses to the same double.
std::string fmt_double(double v) {
  char buf[64];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

struct LineReader {
  std::istream& in;
  std::string origin;
  int line_no = 0;

  bool next(std::string* line) {
    while (std::getline(in, *line)) {
      ++line_no;
      if (!line->empty() && line->back() == '\r') line->pop_back();
      std::size_t i = line->find_first_not_of(" \t");
      if (i == std::string::npos) continue;  // blank
      if ((*line)[i] == '#') continue;       // comment
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": " + msg);
  }
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

double parse_double(LineReader& r, const std::string& field, const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
    r.fail(field + ": not a number: '" + tok + "'");
  return v;
}

long parse_int(LineReader& r, const std::string& field, const std::string& tok) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0') r.fail(field + ": not an integer: '" + tok + "'");
  return v;
}

// One RLE row: tokens "<count><sym>", sym '.'=0 'o'=1; counts sum to width.
void parse_rle_row(LineReader& r, const std::vector<std::string>& toks, std::size_t first_tok,
                   int width, std::vector<std::uint8_t>* out) {
  int total = 0;
  for (std::size_t i = first_tok; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    const char sym = t.back();
    if (sym != '.' && sym != 'o') r.fail("fixed row: bad run symbol in '" + t + "'");
    const long count = parse_int(r, "fixed row run", t.substr(0, t.size() - 1));
    if (count < 1) r.fail("fixed row: run count must be >= 1");
    for (long k = 0; k < count; ++k) out->push_back(sym == 'o' ? 1 : 0);
    total += static_cast<int>(count);
  }
  if (total != width)
    r.fail("fixed row: runs cover " + std::to_string(total) + " cells, expected " +
           std::to_string(width));
}

std::string rle_row(const std::vector<std::uint8_t>& cells, std::size_t offset, int width) {
  std::string out;
  int run = 0;
  std::uint8_t cur = 0;
  auto flush = [&]() {
    if (run == 0) return;
    if (!out.empty()) out += ' ';
    out += std::to_string(run);
    out += cur ? 'o' : '.';
  };
  for (int x = 0; x < width; ++x) {
    const std::uint8_t v = cells[offset + x] ? 1 : 0;
    if (run > 0 && v == cur) {
      ++run;
    } else {
      flush();
      cur = v;
      run = 1;
    }
  }
  flush();
  return out;
}

Cell parse_cell_token(LineReader& r, const std::string& tok) {
  const std::size_t comma = tok.find(',');
  if (comma == std::string::npos) r.fail("footprint: expected 'x,y', got '" + tok + "'");
  return Cell{static_cast<int>(parse_int(r, "footprint x", tok.substr(0, comma))),
              static_cast<int>(parse_int(r, "footprint y", tok.substr(comma + 1)))};
}

}  // namespace

PointCloud synthesize_surface_points(const std::vector<Cell>& footprint, double height,
                                     const GridSpec& grid) {
  // Perimeter cells at half height: side faces are where pushes make contact.
  std::set<Cell> cells(footprint.begin(), footprint.end());
  PointCloud cloud;
  const double z = std::max(0.5 * height, 0.01);
  for (const Cell& c : cells) {
    const bool interior = cells.count({c.x + 1, c.y}) && cells.count({c.x - 1, c.y}) &&
                          cells.count({c.x, c.y + 1}) && cells.count({c.x, c.y - 1});
    if (interior) continue;
    cloud.points.emplace_back(grid.center_x(c), grid.center_y(c), z);
  }
  return cloud;
}

Scenario parse_scenario(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  std::string line;

  if (!r.next(&line)) throw ParseError(origin + ": empty file");
  {
    auto toks = tokens_of(line);
    if (toks.size() != 2 || toks[0] != "coins-scenario")
      r.fail("expected header 'coins-scenario v1'");
    if (toks[1] != "v1") throw SchemaVersionError(origin + ": unsupported version " + toks[1]);
  }

  Scenario s;
  bool have_name = false, have_size = false, have_res = false, have_start = false,
       have_goal = false, have_fixed = false;

  while (r.next(&line)) {
    auto toks = tokens_of(line);
    const std::string& key = toks[0];

    if (key == "name") {
      if (toks.size() != 2) r.fail("name: expected one token");
      s.name = toks[1];
      have_name = true;
    } else if (key == "category") {
      if (toks.size() != 2) r.fail("category: expected one token");
      try {
        s.category = scene_category_from_string(toks[1]);
      } catch (const ParseError& e) {
        r.fail(e.what());
      }
    } else if (key == "resolution") {
      if (toks.size() != 2) r.fail("resolution: expected one value");
      s.grid.resolution = parse_double(r, "resolution", toks[1]);
      have_res = true;
    } else if (key == "origin") {
      if (toks.size() != 3) r.fail("origin: expected two values");
      s.grid.origin_x = parse_double(r, "origin x", toks[1]);
      s.grid.origin_y = parse_double(r, "origin y", toks[2]);
    } else if (key == "size") {
      if (toks.size() != 3) r.fail("size: expected two values");
      s.grid.width = static_cast<int>(parse_int(r, "size width", toks[1]));
      s.grid.height = static_cast<int>(parse_int(r, "size height", toks[2]));
      have_size = true;
    } else if (key == "start") {
      if (toks.size() != 4) r.fail("start: expected x y heading");
      s.start.x() = parse_double(r, "start x", toks[1]);
      s.start.y() = parse_double(r, "start y", toks[2]);
      s.start_heading = parse_double(r, "start heading", toks[3]);
      have_start = true;
    } else if (key == "goal") {
      if (toks.size() != 3) r.fail("goal: expected x y");
      s.goal.x() = parse_double(r, "goal x", toks[1]);
      s.goal.y() = parse_double(r, "goal y", toks[2]);
      have_goal = true;
    } else if (key == "pair") {
      if (toks.size() != 6) r.fail("pair: expected sx sy heading gx gy");
      StartGoal p;
      p.start.x() = parse_double(r, "pair sx", toks[1]);
      p.start.y() = parse_double(r, "pair sy", toks[2]);
      p.heading = parse_double(r, "pair heading", toks[3]);
      p.goal.x() = parse_double(r, "pair gx", toks[4]);
      p.goal.y() = parse_double(r, "pair gy", toks[5]);
      s.extra_pairs.push_back(p);
    } else if (key == "fixed") {
      if (!have_size) r.fail("fixed: 'size' must come first");
      s.fixed.clear();
      s.fixed.reserve(s.grid.cell_count());
      for (int row = 0; row < s.grid.height; ++row) {
        if (!r.next(&line)) r.fail("fixed: unexpected end of file in row block");
        auto row_toks = tokens_of(line);
        if (row_toks.size() < 2 || row_toks[0] != std::to_string(row) + ":")
          r.fail("fixed: expected row '" + std::to_string(row) + ":'");
        parse_rle_row(r, row_toks, 1, s.grid.width, &s.fixed);
      }
      if (!r.next(&line) || line != "end") r.fail("fixed: expected 'end'");
      have_fixed = true;
    } else if (key == "object") {
      ObjectInstance obj;
      DoorSpec door;
      bool have_door_field = false;
      while (true) {
        if (!r.next(&line)) r.fail("object: unexpected end of file");
        auto ot = tokens_of(line);
        const std::string& ok = ot[0];
        if (ok == "end") break;
        if (ok == "id" && ot.size() == 2) {
          obj.id = ot[1];
        } else if (ok == "category" && ot.size() == 2) {
          obj.category = ot[1];
        } else if (ok == "position" && ot.size() == 4) {
          obj.position.x() = parse_double(r, "position x", ot[1]);
          obj.position.y() = parse_double(r, "position y", ot[2]);
          obj.position.z() = parse_double(r, "position z", ot[3]);
        } else if (ok == "height" && ot.size() == 2) {
          obj.height = parse_double(r, "height", ot[1]);
        } else if (ok == "resistance" && ot.size() == 2) {
          obj.resistance = static_cast<int>(parse_int(r, "resistance", ot[1]));
        } else if (ok == "hinge" && ot.size() == 3) {
          door.hinge.x() = parse_double(r, "hinge x", ot[1]);
          door.hinge.y() = parse_double(r, "hinge y", ot[2]);
          have_door_field = true;
        } else if (ok == "handle" && ot.size() == 3) {
          door.handle.x() = parse_double(r, "handle x", ot[1]);
          door.handle.y() = parse_double(r, "handle y", ot[2]);
          have_door_field = true;
        } else if (ok == "hinge_side" && ot.size() == 2) {
          if (ot[1] != "left" && ot[1] != "right") r.fail("hinge_side: expected left|right");
          door.hinge_side = ot[1];
          have_door_field = true;
        } else if (ok == "footprint") {
          for (std::size_t i = 1; i < ot.size(); ++i)
            obj.footprint.push_back(parse_cell_token(r, ot[i]));
        } else {
          r.fail("object: unknown field '" + ok + "'");
        }
      }
      if (obj.id.empty()) r.fail("object: missing id");
      if (obj.category.empty()) r.fail("object '" + obj.id + "': missing category");
      if (have_door_field) obj.door = door;
      s.movables.push_back(std::move(obj));
    } else {
      r.fail("unknown key '" + key + "'");
    }
  }

  if (!have_name) throw ParseError(origin + ": name: missing");
  if (!have_res || !have_size) throw ParseError(origin + ": grid fields missing");
  if (!have_start || !have_goal) throw ParseError(origin + ": start/goal missing");
  if (!have_fixed) throw ParseError(origin + ": fixed block missing");

  try {
    s.validate();
  } catch (const Error& e) {
    throw ParseError(origin + ": " + e.what());
  }

  // Surface clouds are derived data; build them for every object that needs one.
  for (auto& obj : s.movables) {
    if (obj.surface_points.size() == 0 && !obj.footprint.empty())
      obj.surface_points = synthesize_surface_points(obj.footprint, obj.height, s.grid);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open scenario file: " + path);
  return parse_scenario(in, path);
}

std::string write_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "coins-scenario v1\n";
  out << "name " << s.name << "\n";
  out << "category " << to_string(s.category) << "\n";
  out << "resolution " << fmt_double(s.grid.resolution) << "\n";
  out << "origin " << fmt_double(s.grid.origin_x) << " " << fmt_double(s.grid.origin_y) << "\n";
  out << "size " << s.grid.width << " " << s.grid.height << "\n";
  out << "start " << fmt_double(s.start.x()) << " " << fmt_double(s.start.y()) << " "
      << fmt_double(s.start_heading) << "\n";
  out << "goal " << fmt_double(s.goal.x()) << " " << fmt_double(s.goal.y()) << "\n";
  for (const auto& p : s.extra_pairs) {
    out << "pair " << fmt_double(p.start.x()) << " " << fmt_double(p.start.y()) << " "
        << fmt_double(p.heading) << " " << fmt_double(p.goal.x()) << " "
        << fmt_double(p.goal.y()) << "\n";
  }
  out << "fixed\n";
  for (int row = 0; row < s.grid.height; ++row) {
    out << row << ": "
        << rle_row(s.fixed, static_cast<std::size_t>(row) * s.grid.width, s.grid.width) << "\n";
  }
  out << "end\n";
  for (const auto& obj : s.movables) {
    out << "object\n";
    out << "id " << obj.id << "\n";
    out << "category " << obj.category << "\n";
    out << "position " << fmt_double(obj.position.x()) << " " << fmt_double(obj.position.y())
        << " " << fmt_double(obj.position.z()) << "\n";
    out << "height " << fmt_double(obj.height) << "\n";
    out << "resistance " << obj.resistance << "\n";
    if (obj.door) {
      out << "hinge " << fmt_double(obj.door->hinge.x()) << " " << fmt_double(obj.door->hinge.y())
          << "\n";
      out << "handle " << fmt_double(obj.door->handle.x()) << " "
          << fmt_double(obj.door->handle.y()) << "\n";
      out << "hinge_side " << obj.door->hinge_side << "\n";
    }
    if (!obj.footprint.empty()) {
      out << "footprint";
      for (const Cell& c : obj.footprint) out << " " << c.x << "," << c.y;
      out << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write scenario file: " + path);
  out << write_scenario(s);
}

}  // namespace coins

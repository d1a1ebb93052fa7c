#include "coins/episodes.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coins {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void push_record(EpisodeLog& log, ordered_json j) { log.records.push_back(j.dump()); }

}  // namespace

int EpisodeConfig::resolved_max_steps(const GridSpec& grid) const {
  if (max_steps > 0) return max_steps;
  return static_cast<int>(std::ceil(4.0 * grid.diagonal_m() / grid.resolution));
}

void EpisodeConfig::validate() const {
  if (!(sensor_range > 0.0)) throw Error("EpisodeConfig: sensor_range must be > 0");
  if (!(success_threshold > 0.0)) throw Error("EpisodeConfig: success_threshold must be > 0");
  if (max_retries < 1) throw Error("EpisodeConfig: max_retries must be >= 1");
  if (slip_prob < 0.0 || slip_prob >= 1.0) throw Error("EpisodeConfig: slip_prob in [0,1)");
  if (push_base_cap < 1) throw Error("EpisodeConfig: push_base_cap must be >= 1");
  profile.validate();
}

std::uint64_t KnownMap::content_hash() const {
  std::string bytes(cells.size(), '\0');
  for (std::size_t i = 0; i < cells.size(); ++i)
    bytes[i] = static_cast<char>(static_cast<std::uint8_t>(cells[i]));
  return fnv1a64(bytes);
}

WorldState WorldState::init(const Scenario& s, const EpisodeConfig& cfg) {
  s.validate();
  cfg.validate();
  WorldState w;
  w.scenario = s;
  w.objects = s.movables;
  for (const auto& obj : w.objects) {
    if (obj.category == "door") w.door_angles_deg[obj.id] = 0.0;
  }
  w.robot = s.grid.cell_at(s.start.x(), s.start.y());
  w.heading = s.start_heading;
  w.goal = s.goal;
  w.known.spec = s.grid;
  w.known.cells.assign(s.grid.cell_count(), Knowledge::unknown);
  if (cfg.omniscient) {
    const OccupancyMap truth = w.true_occupancy(cfg.profile.traversal_height);
    for (std::size_t i = 0; i < truth.occ.size(); ++i)
      w.known.cells[i] = truth.occ[i] ? Knowledge::occupied : Knowledge::free;
    for (const auto& obj : w.objects) w.registry[obj.id] = obj;
  }
  return w;
}

Eigen::Vector2d WorldState::robot_xy() const {
  return {scenario.grid.center_x(robot), scenario.grid.center_y(robot)};
}

double WorldState::dist_to_goal() const { return (robot_xy() - goal).norm(); }

OccupancyMap WorldState::true_occupancy(double h_max) const {
  const GridSpec& grid = scenario.grid;
  std::vector<double> h(grid.cell_count(), 0.0);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (scenario.fixed[i]) h[i] = kWallHeight;
  for (const auto& obj : objects) {
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

OccupancyMap WorldState::known_occupancy() const {
  OccupancyMap occ = OccupancyMap::empty(known.spec);
  for (std::size_t i = 0; i < known.cells.size(); ++i)
    occ.occ[i] = known.cells[i] == Knowledge::occupied ? 1 : 0;
  return occ;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::success: return "success";
    case Outcome::timeout: return "timeout";
    case Outcome::infeasible: return "infeasible";
  }
  return "timeout";
}

bool EpisodeLog::has_event(const std::string& ev) const {
  const std::string needle = "\"ev\":\"" + ev + "\"";
  for (const auto& rec : records) {
    if (rec.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string EpisodeLog::to_jsonl() const {
  std::string out;
  for (const auto& rec : records) {
    out += rec;
    out += '\n';
  }
  ordered_json trailer;
  trailer["ev"] = "end";
  trailer["scenario"] = scenario_name;
  trailer["outcome"] = to_string(outcome);
  trailer["steps"] = steps;
  trailer["pl"] = pl;
  trailer["dtg"] = dtg;
  trailer["log_hash"] = hex64(log_hash);
  out += trailer.dump();
  out += '\n';
  return out;
}

EpisodeSummary parse_episode_trailer(std::istream& in) {
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  if (last.empty()) throw ParseError("episode log: empty input");
  ordered_json j = ordered_json::parse(last, nullptr, false);
  if (j.is_discarded() || j.value("ev", "") != "end")
    throw ParseError("episode log: malformed trailer line");
  EpisodeSummary s;
  s.scenario_name = j.value("scenario", "");
  const std::string oc = j.value("outcome", "");
  if (oc == "success") s.outcome = Outcome::success;
  else if (oc == "infeasible") s.outcome = Outcome::infeasible;
  else s.outcome = Outcome::timeout;
  s.steps = j.value("steps", 0);
  s.pl = j.value("pl", 0.0);
  s.dtg = j.value("dtg", 0.0);
  s.log_hash = std::strtoull(j.value("log_hash", "0").c_str(), nullptr, 16);
  return s;
}

namespace {

// Line of sight on the ground-truth occupancy: blocked iff any strictly
// intermediate supercover cell is occupied.
bool visible(const OccupancyMap& truth, Cell from, Cell to) {
  if (from == to) return true;
  const auto cells = supercover_line(from, to);
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
    if (truth.at(cells[i])) return false;
  }
  return true;
}

}  // namespace

void sense(WorldState& world, const EpisodeConfig& cfg) {
  const GridSpec& grid = world.scenario.grid;
  const OccupancyMap truth = world.true_occupancy(cfg.profile.traversal_height);

  if (cfg.omniscient) {
    for (std::size_t i = 0; i < truth.occ.size(); ++i)
      world.known.cells[i] = truth.occ[i] ? Knowledge::occupied : Knowledge::free;
    for (const auto& obj : world.objects) world.registry[obj.id] = obj;
    return;
  }

  const double range_sq = cfg.sensor_range * cfg.sensor_range;
  const int reach = static_cast<int>(std::ceil(cfg.sensor_range / grid.resolution));
  const Eigen::Vector2d rxy = world.robot_xy();

  for (int y = std::max(0, world.robot.y - reach);
       y <= std::min(grid.height - 1, world.robot.y + reach); ++y) {
    for (int x = std::max(0, world.robot.x - reach);
         x <= std::min(grid.width - 1, world.robot.x + reach); ++x) {
      const Cell c{x, y};
      const double dx = grid.center_x(c) - rxy.x();
      const double dy = grid.center_y(c) - rxy.y();
      if (dx * dx + dy * dy > range_sq) continue;
      // Already-known cells only need a fresh raycast if the truth changed.
      const Knowledge cur = world.known.at(c);
      const Knowledge now = truth.at(c) ? Knowledge::occupied : Knowledge::free;
      if (cur == now) continue;
      if (!visible(truth, world.robot, c)) continue;
      world.known.set(c, now);
    }
  }

  // Objects with any visible footprint cell in range register with truth.
  for (const auto& obj : world.objects) {
    bool seen = false;
    for (const Cell& c : obj.footprint) {
      if (!grid.in_bounds(c)) continue;
      const double dx = grid.center_x(c) - rxy.x();
      const double dy = grid.center_y(c) - rxy.y();
      if (dx * dx + dy * dy > range_sq) continue;
      if (visible(truth, world.robot, c)) {
        seen = true;
        break;
      }
    }
    if (seen) world.registry[obj.id] = obj;
  }
}

namespace {

double step_dist(const GridSpec& grid, Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  if (dx + dy == 0) return 0.0;
  return (dx == 1 && dy == 1) ? std::sqrt(2.0) * grid.resolution : grid.resolution;
}

void log_move(EpisodeLog& log, const WorldState& world) {
  ordered_json j;
  j["ev"] = "move";
  j["t"] = world.steps;
  j["robot"] = {world.robot.x, world.robot.y};
  push_record(log, j);
}

}  // namespace

void step_navigate(WorldState& world, const std::vector<Cell>& path, int budget,
                   const EpisodeConfig& cfg, EpisodeLog& log) {
  const GridSpec& grid = world.scenario.grid;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (budget <= 0) return;
    if (world.dist_to_goal() < cfg.success_threshold) return;
    sense(world, cfg);
    const Cell next = path[i];
    const Cell cur = path[i - 1];
    bool blocked = world.known.at(next) == Knowledge::occupied;
    if (!blocked && next.x != cur.x && next.y != cur.y) {
      // Newly discovered side obstacles forbid the diagonal squeeze.
      blocked = world.known.at({next.x, cur.y}) == Knowledge::occupied ||
                world.known.at({cur.x, next.y}) == Knowledge::occupied;
    }
    if (blocked) {
      ordered_json j;
      j["ev"] = "halt";
      j["t"] = world.steps;
      j["cell"] = {next.x, next.y};
      push_record(log, j);
      return;
    }
    world.path_len += step_dist(grid, cur, next);
    world.robot = next;
    world.steps += 1;
    --budget;
    log.trace.push_back(world.robot_xy());
    log_move(log, world);
  }
  sense(world, cfg);
}

namespace {

// Walk toward `target`, replanning on the known map after every halt.
// Returns true when the robot stands on `target`.
bool walk_to(WorldState& world, Cell target, const EpisodeConfig& cfg, EpisodeLog& log,
             int max_steps) {
  const double r_clear = cfg.profile.inflation_radius();
  while (world.robot != target) {
    if (world.steps >= max_steps) return false;
    const TraversabilityMap trav = inflate(world.known_occupancy(), r_clear);
    if (!trav.spec.in_bounds(target) || !trav.at(target)) return false;
    auto path = astar(trav, world.robot, target);
    if (!path) return false;
    const int before = world.steps;
    step_navigate(world, path->cells, max_steps - world.steps, cfg, log);
    if (world.steps == before && world.robot != target) {
      // No progress and no new cells to learn from means the approach failed.
      if (path->cells.size() <= 1) return false;
      const Cell next = path->cells[1];
      if (world.known.at(next) != Knowledge::occupied) return false;
    }
  }
  return true;
}

Eigen::Vector2d snap_to_axis(const Eigen::Vector2d& v) {
  if (std::abs(v.x()) >= std::abs(v.y()))
    return {v.x() >= 0.0 ? 1.0 : -1.0, 0.0};
  return {0.0, v.y() >= 0.0 ? 1.0 : -1.0};
}

bool can_shift(const WorldState& world, const ObjectInstance& obj, Cell offset) {
  const GridSpec& grid = world.scenario.grid;
  std::set<Cell> own(obj.footprint.begin(), obj.footprint.end());
  for (const Cell& c : obj.footprint) {
    const Cell n{c.x + offset.x, c.y + offset.y};
    if (!grid.in_bounds(n)) return false;
    if (world.scenario.fixed_at(n)) return false;
    if (own.count(n)) continue;
    for (const auto& other : world.objects) {
      if (other.id == obj.id) continue;
      for (const Cell& oc : other.footprint) {
        if (oc == n) return false;
      }
    }
  }
  return true;
}

void shift_object(WorldState& world, const std::string& id, Cell offset) {
  const double res = world.scenario.grid.resolution;
  for (auto& obj : world.objects) {
    if (obj.id != id) continue;
    for (auto& c : obj.footprint) {
      c.x += offset.x;
      c.y += offset.y;
    }
    obj.position.x() += offset.x * res;
    obj.position.y() += offset.y * res;
    for (auto& p : obj.surface_points.points) {
      p.x() += offset.x * res;
      p.y() += offset.y * res;
    }
    return;
  }
}

int lateral_clearance(const WorldState& world, const ObjectInstance& obj, Cell offset,
                      int cap) {
  ObjectInstance probe = obj;
  int k = 0;
  while (k < cap) {
    if (!can_shift(world, probe, offset)) break;
    for (auto& c : probe.footprint) {
      c.x += offset.x;
      c.y += offset.y;
    }
    ++k;
  }
  return k;
}

const ObjectInstance* find_object(const WorldState& world, const std::string& id) {
  for (const auto& obj : world.objects) {
    if (obj.id == id) return &obj;
  }
  return nullptr;
}

// Nearest reachable traversable cell within workspace reach of the object.
std::optional<Cell> staging_cell(const WorldState& world, const ObjectInstance& obj,
                                 const EpisodeConfig& cfg) {
  const GridSpec& grid = world.scenario.grid;
  const TraversabilityMap trav = inflate(world.known_occupancy(), cfg.profile.inflation_radius());
  const double r = cfg.profile.workspace_radius;
  const double ox = obj.position.x();
  const double oy = obj.position.y();

  std::optional<Cell> best;
  ExtendedLength best_len = ExtendedLength::infinite();
  const Cell lo = grid.cell_at(ox - r, oy - r);
  const Cell hi = grid.cell_at(ox + r, oy + r);
  for (int y = std::max(0, lo.y); y <= std::min(grid.height - 1, hi.y); ++y) {
    for (int x = std::max(0, lo.x); x <= std::min(grid.width - 1, hi.x); ++x) {
      const Cell c{x, y};
      if (!trav.at(c)) continue;
      const double dx = grid.center_x(c) - ox;
      const double dy = grid.center_y(c) - oy;
      if (dx * dx + dy * dy > r * r) continue;
      const ExtendedLength len = path_length(trav, world.robot, c);
      if (len < best_len) {
        best_len = len;
        best = c;
      }
    }
  }
  if (best_len.is_infinite()) return std::nullopt;
  return best;
}

InteractionStatus run_door_opening(WorldState& world, const ObjectInstance& obj,
                                   const EpisodeConfig& cfg, EpisodeLog& log) {
  const GridSpec& grid = world.scenario.grid;
  const DoorSpec& door = *find_object(world, obj.id)->door;

  const double angle = cfg.door_open_angle_deg;
  world.door_angles_deg[obj.id] = angle;

  const Eigen::Vector2d leaf = door.handle - door.hinge;
  // left-hinged doors swing clockwise (negative rotation), right-hinged
  // counterclockwise; both conventions land the leaf on the hinge side wall.
  const double theta =
      (door.hinge_side == "left" ? -1.0 : 1.0) * angle * std::numbers::pi / 180.0;
  const Eigen::Rotation2D<double> rot(theta);
  const Eigen::Vector2d open_end = door.hinge + rot * leaf;

  const Cell from = grid.cell_at(door.hinge.x(), door.hinge.y());
  const Cell to = grid.cell_at(open_end.x(), open_end.y());
  std::vector<Cell> open_cells;
  for (const Cell& c : supercover_line(from, to)) {
    if (grid.in_bounds(c) && !world.scenario.fixed_at(c)) open_cells.push_back(c);
  }

  for (auto& o : world.objects) {
    if (o.id != obj.id) continue;
    o.footprint = open_cells;
    o.position.x() = 0.5 * (door.hinge.x() + open_end.x());
    o.position.y() = 0.5 * (door.hinge.y() + open_end.y());
    o.surface_points = synthesize_surface_points(open_cells, o.height, grid);
  }
  world.steps += 1;  // the opening motion itself

  ordered_json j;
  j["ev"] = "door_opened";
  j["t"] = world.steps;
  j["target"] = obj.id;
  j["angle_deg"] = angle;
  push_record(log, j);
  sense(world, cfg);

  return angle >= cfg.door_success_angle_deg ? InteractionStatus::success
                                             : InteractionStatus::max_retries_exceeded;
}

}  // namespace

InteractionStatus apply_interaction(WorldState& world, const Interact& act,
                                    const EpisodeConfig& cfg, EpisodeLog& log, Rng& rng) {
  const GridSpec& grid = world.scenario.grid;
  const int max_steps = cfg.resolved_max_steps(grid);
  const ObjectInstance* obj = find_object(world, act.target_id);
  const bool needs_pt = act.skill != kSkillDoorOpening;
  if (!obj || !world.registry.count(act.target_id) ||
      (needs_pt && !act.params.target_cell.has_value()))
    return InteractionStatus::unreachable_target;

  {
    ordered_json j;
    j["ev"] = "interact_start";
    j["t"] = world.steps;
    j["skill"] = act.skill;
    j["target"] = act.target_id;
    if (act.params.target_cell)
      j["pt"] = {act.params.target_cell->x, act.params.target_cell->y};
    push_record(log, j);
  }

  // Approach: stand within workspace reach of the target.
  const auto staging = staging_cell(world, *obj, cfg);
  if (!staging || !walk_to(world, *staging, cfg, log, max_steps)) {
    ordered_json j;
    j["ev"] = "interact_end";
    j["t"] = world.steps;
    j["skill"] = act.skill;
    j["target"] = act.target_id;
    j["status"] = "unreachable_target";
    push_record(log, j);
    return InteractionStatus::unreachable_target;
  }
  sense(world, cfg);

  InteractionStatus status = InteractionStatus::max_retries_exceeded;
  if (act.skill == kSkillDoorOpening) {
    status = run_door_opening(world, *obj, cfg, log);
  } else {
    const Cell pt = *act.params.target_cell;
    const double r_clear = cfg.profile.inflation_radius();

    // Lateral push direction: perpendicular to the robot->object ray, the
    // side with more free clearance; ties go left (counterclockwise).
    const Eigen::Vector2d dir =
        (Eigen::Vector2d(obj->position.x(), obj->position.y()) - world.robot_xy()).normalized();
    const Eigen::Vector2d left_v = snap_to_axis(Eigen::Vector2d(-dir.y(), dir.x()));
    const Cell left{static_cast<int>(left_v.x()), static_cast<int>(left_v.y())};
    const Cell right{-left.x, -left.y};
    const int cap = cfg.push_base_cap * obj->resistance;
    const int c_left = lateral_clearance(world, *obj, left, cap);
    const int c_right = lateral_clearance(world, *obj, right, cap);
    const Cell side = c_right > c_left ? right : left;

    auto ray_clear = [&]() {
      const TraversabilityMap trav =
          inflate(world.true_occupancy(cfg.profile.traversal_height), r_clear);
      if (!trav.at(world.robot) || !trav.at(pt)) return false;
      return raycast(trav, world.robot, pt);
    };

    for (int attempt = 0; attempt < cfg.max_retries && status != InteractionStatus::success;
         ++attempt) {
      if (attempt > 0) {
        ordered_json j;
        j["ev"] = "retry";
        j["t"] = world.steps;
        j["target"] = act.target_id;
        j["attempt"] = attempt;
        push_record(log, j);
      }
      int budget = cap;
      while (budget > 0 && world.steps < max_steps) {
        if (ray_clear()) break;
        --budget;
        world.steps += 1;
        if (cfg.slip_prob > 0.0 && rng.bernoulli(cfg.slip_prob)) {
          ordered_json j;
          j["ev"] = "push";
          j["t"] = world.steps;
          j["target"] = act.target_id;
          j["slip"] = true;
          push_record(log, j);
          continue;
        }
        if (!can_shift(world, *find_object(world, act.target_id), side)) break;  // wedged
        shift_object(world, act.target_id, side);
        ordered_json j;
        j["ev"] = "push";
        j["t"] = world.steps;
        j["target"] = act.target_id;
        j["slip"] = false;
        push_record(log, j);
        sense(world, cfg);
      }
      if (ray_clear() && walk_to(world, pt, cfg, log, max_steps))
        status = InteractionStatus::success;
      if (world.steps >= max_steps) break;
    }
  }

  ordered_json j;
  j["ev"] = "interact_end";
  j["t"] = world.steps;
  j["skill"] = act.skill;
  j["target"] = act.target_id;
  j["status"] = status == InteractionStatus::success ? "success" : "max_retries_exceeded";
  push_record(log, j);
  return status;
}

EpisodeLog run_episode(const Scenario& scenario, const EpisodeConfig& cfg) {
  WorldState world = WorldState::init(scenario, cfg);
  const GridSpec& grid = scenario.grid;
  const int max_steps = cfg.resolved_max_steps(grid);
  Rng rng(cfg.seed);

  EpisodeLog log;
  log.scenario_name = scenario.name;
  {
    ordered_json j;
    j["ev"] = "begin";
    j["scenario"] = scenario.name;
    j["start"] = {scenario.start.x(), scenario.start.y()};
    j["goal"] = {scenario.goal.x(), scenario.goal.y()};
    j["seed"] = cfg.seed;
    push_record(log, j);
  }
  log.trace.push_back(world.robot_xy());
  sense(world, cfg);

  Outcome outcome = Outcome::timeout;
  const Cell goal_cell = grid.cell_at(world.goal.x(), world.goal.y());

  std::uint64_t last_sig = 0;
  auto state_sig = [&]() {
    std::ostringstream os;
    os << world.steps << '|' << world.robot.x << ',' << world.robot.y << '|'
       << world.known.content_hash() << '|' << world.failed_targets.size();
    for (const auto& obj : world.objects) os << '|' << obj.position.x() << ',' << obj.position.y();
    return fnv1a64(os.str());
  };

  while (true) {
    if (world.dist_to_goal() < cfg.success_threshold) {
      outcome = Outcome::success;
      break;
    }
    if (world.steps >= max_steps) {
      outcome = Outcome::timeout;
      break;
    }
    // A loop iteration that changes nothing cannot make progress later either.
    const std::uint64_t sig = state_sig();
    if (sig == last_sig) {
      outcome = Outcome::timeout;
      break;
    }
    last_sig = sig;

    std::vector<ObjectInstance> candidates;
    for (const auto& [id, obj] : world.registry) {
      if (!world.failed_targets.count(id)) candidates.push_back(obj);
    }
    ReasonOptions opts;
    opts.contact_samples = cfg.contact_samples;
    opts.seed = cfg.seed;
    const Reasoning reasoning = select_target(world.known_occupancy(), candidates, world.robot,
                                              goal_cell, cfg.profile, cfg.epsilon, opts);

    {
      ordered_json j;
      j["ev"] = "decision";
      j["t"] = world.steps;
      j["robot"] = {world.robot.x, world.robot.y};
      j["kind"] = decision_kind(reasoning.decision);
      if (const auto* act = std::get_if<Interact>(&reasoning.decision)) {
        j["skill"] = act->skill;
        j["target"] = act->target_id;
        j["gain"] = act->gain;
      }
      j["map_hash"] = hex64(world.known.content_hash());
      push_record(log, j);
    }

    if (const auto* nav = std::get_if<Navigate>(&reasoning.decision)) {
      step_navigate(world, nav->path.cells, max_steps - world.steps, cfg, log);
    } else if (const auto* act = std::get_if<Interact>(&reasoning.decision)) {
      const InteractionStatus st = apply_interaction(world, *act, cfg, log, rng);
      if (st != InteractionStatus::success) world.failed_targets.insert(act->target_id);
    } else {
      outcome = Outcome::infeasible;
      break;
    }
  }

  log.outcome = outcome;
  log.steps = world.steps;
  log.pl = world.path_len;
  log.dtg = world.dist_to_goal();

  std::string hashed;
  for (const auto& rec : log.records) {
    hashed += rec;
    hashed += '\n';
  }
  hashed += to_string(outcome) + "|" + std::to_string(log.steps);
  log.log_hash = fnv1a64(hashed);
  return log;
}

Metrics compute_metrics(const std::vector<EpisodeLog>& logs) {
  if (logs.empty()) throw EmptyInput("compute_metrics: no episode logs");
  Metrics m;
  m.total = static_cast<int>(logs.size());
  for (const auto& log : logs) {
    if (log.outcome == Outcome::success) ++m.successes;
    m.mean_pl += log.pl;
    m.mean_dtg += log.dtg;
  }
  m.sr = static_cast<double>(m.successes) / m.total;
  m.mean_pl /= m.total;
  m.mean_dtg /= m.total;
  return m;
}

Metrics compute_metrics_from_summaries(const std::vector<EpisodeSummary>& summaries) {
  if (summaries.empty()) throw EmptyInput("compute_metrics: no summaries");
  Metrics m;
  m.total = static_cast<int>(summaries.size());
  for (const auto& s : summaries) {
    if (s.outcome == Outcome::success) ++m.successes;
    m.mean_pl += s.pl;
    m.mean_dtg += s.dtg;
  }
  m.sr = static_cast<double>(m.successes) / m.total;
  m.mean_pl /= m.total;
  m.mean_dtg /= m.total;
  return m;
}

}  // namespace coins

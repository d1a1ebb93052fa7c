#include "coins/reasoner.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "coins/rng.hpp"

namespace coins {

using ordered_json = nlohmann::ordered_json;

const GainEntry* GainTable::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

ordered_json length_json(const ExtendedLength& l) {
  if (l.is_infinite()) return nullptr;
  return l.meters();
}

}  // namespace

std::string GainTable::to_jsonl() const {
  std::string out;
  for (const auto& e : entries) {
    ordered_json j;
    j["id"] = e.id;
    j["category"] = e.category;
    j["gain"] = e.gain;
    j["manipulable"] = e.manipulable;
    j["base_length"] = length_json(e.base_length);
    j["cf_length"] = length_json(e.cf_length);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string decision_kind(const Decision& d) {
  if (std::holds_alternative<Navigate>(d)) return "navigate";
  if (std::holds_alternative<Interact>(d)) return "interact";
  return "infeasible";
}

Eigen::Vector3d locate_object(const PointCloud& cloud, PixelRef center,
                              double fallback_radius_px) {
  if (!cloud.has_provenance())
    throw NoCorrespondence("cloud carries no pixel provenance");

  long best = -1;
  double best_sq = fallback_radius_px * fallback_radius_px;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double du = cloud.pixels[i].u - center.u;
    const double dv = cloud.pixels[i].v - center.v;
    const double sq = du * du + dv * dv;
    if (sq == 0.0) return cloud.points[i];
    if (sq <= best_sq && (best < 0 || sq < best_sq)) {
      best = static_cast<long>(i);
      best_sq = sq;
    }
  }
  if (best < 0)
    throw NoCorrespondence("no provenance within " + std::to_string(fallback_radius_px) +
                           " px of the query pixel");
  return cloud.points[best];
}

bool check_manipulable(const ObjectInstance& obj, const TraversabilityMap& map,
                       const SkillProfile& profile) {
  if (!profile.manipulable_categories.count(obj.category)) return false;

  const GridSpec& spec = map.spec;
  const double r = profile.workspace_radius;
  const double ox = obj.position.x();
  const double oy = obj.position.y();
  const Cell lo = spec.cell_at(ox - r, oy - r);
  const Cell hi = spec.cell_at(ox + r, oy + r);
  for (int y = std::max(0, lo.y); y <= std::min(spec.height - 1, hi.y); ++y) {
    for (int x = std::max(0, lo.x); x <= std::min(spec.width - 1, hi.x); ++x) {
      const Cell c{x, y};
      if (!map.at(c)) continue;
      const double dx = spec.center_x(c) - ox;
      const double dy = spec.center_y(c) - oy;
      if (dx * dx + dy * dy <= r * r) return true;
    }
  }
  return false;
}

namespace {

double gain_from_lengths(const ExtendedLength& base, const ExtendedLength& cf) {
  if (base.is_infinite()) return cf.is_infinite() ? 0.0 : 1.0;
  if (cf.is_infinite()) return 0.0;  // cannot happen: carving only opens the map
  if (base.meters() == 0.0) return 0.0;
  return 1.0 - cf.meters() / base.meters();
}

}  // namespace

double counterfactual_gain(const OccupancyMap& occ, const std::vector<Cell>& footprint,
                           Cell start, Cell goal, const SkillProfile& profile) {
  if (!occ.spec.in_bounds(start)) throw OutOfBounds("start " + to_string(start));
  if (!occ.spec.in_bounds(goal)) throw OutOfBounds("goal " + to_string(goal));
  const double r_clear = profile.inflation_radius();
  const ExtendedLength base = path_length(inflate(occ, r_clear), start, goal);
  const ExtendedLength cf = path_length(carve_object(occ, footprint, r_clear), start, goal);
  return gain_from_lengths(base, cf);
}

Cell interaction_target_point(Cell robot, const Eigen::Vector2d& object_xy,
                              const std::vector<Cell>& footprint,
                              const TraversabilityMap& cf_map, double r_clear) {
  const GridSpec& spec = cf_map.spec;
  if (!spec.in_bounds(robot)) throw OutOfBounds("robot " + to_string(robot));

  Eigen::Vector2d origin(spec.center_x(robot), spec.center_y(robot));
  Eigen::Vector2d dir = object_xy - origin;
  if (dir.norm() < 1e-12) throw NoClearPoint("robot coincides with the object");
  dir.normalize();

  auto clear_of_footprint = [&](const Cell& c) {
    for (const Cell& f : footprint) {
      const double dx = spec.center_x(c) - spec.center_x(f);
      const double dy = spec.center_y(c) - spec.center_y(f);
      if (std::sqrt(dx * dx + dy * dy) < r_clear) return false;
    }
    return true;
  };

  // Walk outward from the object in steps of one cell length.
  for (int k = 1;; ++k) {
    const Eigen::Vector2d p = object_xy + dir * (k * spec.resolution);
    const Cell c = spec.cell_at(p.x(), p.y());
    if (!spec.in_bounds(c)) throw NoClearPoint("ray exits the grid before a clear cell");
    if (cf_map.at(c) && clear_of_footprint(c)) return c;
  }
}

std::vector<Eigen::Vector3d> sample_contact_points(const ObjectInstance& obj, int n,
                                                   std::uint64_t seed) {
  if (obj.surface_points.size() == 0)
    throw EmptySurface("object '" + obj.id + "' has no surface points");
  if (n < 1) throw Error("sample_contact_points: n must be >= 1");

  const std::size_t total = obj.surface_points.size();
  if (static_cast<std::size_t>(n) >= total) return obj.surface_points.points;

  Rng rng(seed);
  std::vector<Eigen::Vector3d> out;
  out.reserve(n);
  for (std::size_t i : rng.sample_indices(total, static_cast<std::size_t>(n)))
    out.push_back(obj.surface_points.points[i]);
  return out;
}

Reasoning select_target(const OccupancyMap& occ, const std::vector<ObjectInstance>& objects,
                        Cell start, Cell goal, const SkillProfile& profile, double epsilon,
                        const ReasonOptions& options) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw Error("select_target: epsilon must be in [0,1)");
  if (!occ.spec.in_bounds(start)) throw OutOfBounds("start " + to_string(start));
  if (!occ.spec.in_bounds(goal)) throw OutOfBounds("goal " + to_string(goal));

  const double r_clear = profile.inflation_radius();
  const TraversabilityMap base_map = inflate(occ, r_clear);
  const ExtendedLength base_len = path_length(base_map, start, goal);

  Reasoning out;
  out.base_length = base_len;

  for (const auto& obj : objects) {
    GainEntry e;
    e.id = obj.id;
    e.category = obj.category;
    e.base_length = base_len;
    e.cf_length = path_length(carve_object(occ, obj.footprint, r_clear), start, goal);
    e.gain = gain_from_lengths(base_len, e.cf_length);
    e.manipulable = check_manipulable(obj, base_map, profile);
    out.gains.entries.push_back(std::move(e));
  }
  std::sort(out.gains.entries.begin(), out.gains.entries.end(),
            [](const GainEntry& a, const GainEntry& b) { return a.id < b.id; });

  // Candidates in selection order: higher gain, then smaller counterfactual
  // length, then lexicographic id.
  std::vector<const GainEntry*> candidates;
  for (const auto& e : out.gains.entries) {
    if (e.manipulable && e.gain > epsilon) candidates.push_back(&e);
  }
  std::sort(candidates.begin(), candidates.end(), [](const GainEntry* a, const GainEntry* b) {
    if (a->gain != b->gain) return a->gain > b->gain;
    if (!(a->cf_length.is_infinite() && b->cf_length.is_infinite())) {
      if (a->cf_length < b->cf_length) return true;
      if (b->cf_length < a->cf_length) return false;
    }
    return a->id < b->id;
  });

  const bool reachable = !base_len.is_infinite();
  if (reachable && candidates.empty()) {
    Navigate nav;
    nav.path = *astar(base_map, start, goal);
    out.decision = std::move(nav);
    return out;
  }

  if (!candidates.empty()) {
    const GainEntry* e = candidates.front();
    const ObjectInstance* obj = nullptr;
    for (const auto& o : objects) {
      if (o.id == e->id) {
        obj = &o;
        break;
      }
    }
    const TraversabilityMap cf_map = carve_object(occ, obj->footprint, r_clear);
    Interact act;
    act.skill = select_skill(obj->category, profile);
    act.target_id = obj->id;
    act.gain = e->gain;
    try {
      const Cell pt = interaction_target_point(
          start, Eigen::Vector2d(obj->position.x(), obj->position.y()), obj->footprint, cf_map,
          r_clear);
      act.params.target_cell = pt;
      act.params.target_world =
          Eigen::Vector2d(occ.spec.center_x(pt), occ.spec.center_y(pt));
    } catch (const NoClearPoint&) {
      // selection stands; the executor will fail this interaction
    }
    if (obj->surface_points.size() > 0) {
      act.params.contact_points = sample_contact_points(
          *obj, options.contact_samples, mix64(options.seed ^ fnv1a64(obj->id)));
    }
    act.params.door_keypoints = obj->door;
    out.decision = std::move(act);
    return out;
  }

  out.decision = Infeasible{"goal unreachable and no manipulable object exceeds the gain threshold"};
  return out;
}

}  // namespace coins

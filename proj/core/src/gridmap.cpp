#include "coins/gridmap.hpp"

#include <algorithm>
#include <cmath>

namespace coins {

std::size_t OccupancyMap::occupied_count() const {
  return static_cast<std::size_t>(std::count(occ.begin(), occ.end(), 1));
}

OccupancyMap OccupancyMap::empty(const GridSpec& spec) {
  OccupancyMap m;
  m.spec = spec;
  m.occ.assign(spec.cell_count(), 0);
  return m;
}

std::size_t TraversabilityMap::traversable_count() const {
  return static_cast<std::size_t>(std::count(trav.begin(), trav.end(), 1));
}

HeightProjection project_heights(const PointCloud& cloud, const GridSpec& spec) {
  spec.validate();
  HeightProjection out;
  out.heights.spec = spec;
  out.heights.h.assign(spec.cell_count(), kEmptyHeight);

  std::size_t landed = 0;
  for (const auto& p : cloud.points) {
    const Cell c = spec.cell_at(p.x(), p.y());
    if (!spec.in_bounds(c)) {
      ++out.dropped_points;
      continue;
    }
    ++landed;
    double& cell = out.heights.h[spec.index(c)];
    if (p.z() > cell) cell = p.z();
  }
  if (landed == 0) throw EmptyGrid("no point lands in any grid cell");
  return out;
}

OccupancyMap threshold_occupancy(const HeightMap& h, double h_max) {
  if (h_max < 0.0) throw Error("threshold_occupancy: h_max must be >= 0");
  OccupancyMap out;
  out.spec = h.spec;
  out.occ.resize(h.h.size());
  for (std::size_t i = 0; i < h.h.size(); ++i) {
    out.occ[i] = (h.h[i] != kEmptyHeight && h.h[i] > h_max) ? 1 : 0;
  }
  return out;
}

std::vector<Cell> disk_offsets(double r_clear, double resolution) {
  const double r_cells = r_clear / resolution;
  const double r_sq = r_cells * r_cells;
  const int reach = static_cast<int>(std::floor(r_cells));
  std::vector<Cell> offsets;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      if (static_cast<double>(dx * dx + dy * dy) <= r_sq) offsets.push_back({dx, dy});
    }
  }
  return offsets;
}

TraversabilityMap inflate(const OccupancyMap& occ, double r_clear) {
  if (r_clear < 0.0) throw Error("inflate: r_clear must be >= 0");
  TraversabilityMap out;
  out.spec = occ.spec;
  out.trav.assign(occ.occ.size(), 1);

  // Stamp the blocked disk around each occupied cell; cheaper than scanning
  // the kernel per free cell when occupancy is sparse.
  const auto offsets = disk_offsets(r_clear, occ.spec.resolution);
  for (int y = 0; y < occ.spec.height; ++y) {
    for (int x = 0; x < occ.spec.width; ++x) {
      if (!occ.at({x, y})) continue;
      for (const Cell& off : offsets) {
        const Cell c{x + off.x, y + off.y};
        if (occ.spec.in_bounds(c)) out.trav[occ.spec.index(c)] = 0;
      }
    }
  }
  return out;
}

namespace {

constexpr double kEdtInf = 1e30;

// 1D squared-distance transform (Felzenszwalb & Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& out,
            std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -kEdtInf;
  z[1] = kEdtInf;
  for (int q = 1; q < n; ++q) {
    double s;
    while (true) {
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kEdtInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    out[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

TraversabilityMap inflate_edt(const OccupancyMap& occ, double r_clear) {
  if (r_clear < 0.0) throw Error("inflate: r_clear must be >= 0");
  const int w = occ.spec.width;
  const int h = occ.spec.height;

  std::vector<double> dist(occ.occ.size());
  for (std::size_t i = 0; i < occ.occ.size(); ++i) dist[i] = occ.occ[i] ? 0.0 : kEdtInf;

  const int n = std::max(w, h);
  std::vector<double> f(n), out1d(n), z(n + 1);
  std::vector<int> v(n);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = dist[static_cast<std::size_t>(y) * w + x];
    f.resize(w);
    out1d.resize(w);
    edt_1d(f, out1d, v, z);
    for (int x = 0; x < w; ++x) dist[static_cast<std::size_t>(y) * w + x] = out1d[x];
    f.resize(n);
    out1d.resize(n);
  }
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = dist[static_cast<std::size_t>(y) * w + x];
    f.resize(h);
    out1d.resize(h);
    edt_1d(f, out1d, v, z);
    for (int y = 0; y < h; ++y) dist[static_cast<std::size_t>(y) * w + x] = out1d[y];
    f.resize(n);
    out1d.resize(n);
  }

  // Same inclusive membership predicate as disk_offsets: squared distances
  // are exact integers here, so the comparison matches the kernel bit for bit.
  const double r_cells = r_clear / occ.spec.resolution;
  const double r_sq = r_cells * r_cells;
  TraversabilityMap outm;
  outm.spec = occ.spec;
  outm.trav.resize(occ.occ.size());
  for (std::size_t i = 0; i < dist.size(); ++i) outm.trav[i] = dist[i] <= r_sq ? 0 : 1;
  return outm;
}

TraversabilityMap carve_object(const OccupancyMap& occ, const std::vector<Cell>& footprint,
                               double r_clear) {
  OccupancyMap carved = occ;
  for (const Cell& c : footprint) {
    if (!occ.spec.in_bounds(c)) throw OutOfBounds("footprint cell " + to_string(c));
    carved.set(c, false);
  }
  return inflate(carved, r_clear);
}

std::vector<Cell> footprint_of(const PointCloud& cloud, const std::vector<std::uint8_t>& mask,
                               const GridSpec& spec) {
  if (mask.size() != cloud.size())
    throw LengthMismatch("mask length " + std::to_string(mask.size()) + " vs cloud size " +
                         std::to_string(cloud.size()));
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!mask[i]) continue;
    const Cell c = spec.cell_at(cloud.points[i].x(), cloud.points[i].y());
    if (spec.in_bounds(c)) cells.push_back(c);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace coins

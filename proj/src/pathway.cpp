#include "roomalign/pathway.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "roomalign/errors.hpp"

namespace roomalign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool center_in(const Rect& r, Vec2 p) {
  return p.x >= r.min.x && p.x < r.max.x && p.y >= r.min.y && p.y < r.max.y;
}

// Felzenszwalb-Huttenlocher lower envelope of parabolas; `f` holds squared
// distances on entry and exit.
void distance_transform_1d(std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> d(n);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  // Skip leading infinite samples; an all-infinite line stays infinite.
  int first = 0;
  while (first < n && f[first] == kInf) ++first;
  if (first == n) return;
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = first + 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s = 0.0;
    while (true) {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
  f = std::move(d);
}

}  // namespace

double PathwayGrid::step_cost(int idx) const {
  return cell_size / std::max(clearance[idx], kPathwayClearanceFloor);
}

PathwayGrid rasterize_free_space(const Layout& layout, double cell_size) {
  const Rect box = layout.room.bounds();
  PathwayGrid grid;
  grid.cell_size = cell_size;
  const int inner_cols = std::max(1, static_cast<int>(std::ceil(box.width() / cell_size - 1e-9)));
  const int inner_rows = std::max(1, static_cast<int>(std::ceil(box.height() / cell_size - 1e-9)));
  grid.cols = inner_cols + 2;
  grid.rows = inner_rows + 2;
  grid.origin = {box.min.x - cell_size, box.min.y - cell_size};
  const std::size_t n = static_cast<std::size_t>(grid.cols) * grid.rows;
  grid.free.assign(n, 0);

  std::vector<Rect> footprints;
  footprints.reserve(layout.objects.size());
  for (const ObjectInstance& o : layout.objects) footprints.push_back(footprint(o));

  for (int r = 1; r <= inner_rows; ++r) {
    for (int c = 1; c <= inner_cols; ++c) {
      const Vec2 p = grid.center(c, r);
      if (!contains_point(layout.room.boundary(), p, 0.0)) continue;
      const bool blocked = std::any_of(footprints.begin(), footprints.end(),
                                       [p](const Rect& f) { return center_in(f, p); });
      if (!blocked) grid.free[grid.index(c, r)] = 1;
    }
  }

  // Exact Euclidean distance transform to the nearest obstacle cell.
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = grid.free[i] ? kInf : 0.0;
  std::vector<double> line;
  for (int r = 0; r < grid.rows; ++r) {
    line.assign(sq.begin() + grid.index(0, r), sq.begin() + grid.index(0, r) + grid.cols);
    distance_transform_1d(line);
    std::copy(line.begin(), line.end(), sq.begin() + grid.index(0, r));
  }
  line.resize(grid.rows);
  for (int c = 0; c < grid.cols; ++c) {
    for (int r = 0; r < grid.rows; ++r) line[r] = sq[grid.index(c, r)];
    distance_transform_1d(line);
    for (int r = 0; r < grid.rows; ++r) sq[grid.index(c, r)] = line[r];
  }
  grid.clearance.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.clearance[i] = std::sqrt(sq[i]) * cell_size;
  return grid;
}

std::vector<int> access_cells(const PathwayGrid& grid, const ObjectInstance& obj) {
  const Rect f = footprint(obj);
  std::vector<std::uint8_t> inside(grid.free.size(), 0);
  const int c0 = std::max(0, static_cast<int>(std::floor((f.min.x - grid.origin.x) / grid.cell_size)) - 1);
  const int c1 = std::min(grid.cols - 1, static_cast<int>(std::floor((f.max.x - grid.origin.x) / grid.cell_size)) + 1);
  const int r0 = std::max(0, static_cast<int>(std::floor((f.min.y - grid.origin.y) / grid.cell_size)) - 1);
  const int r1 = std::min(grid.rows - 1, static_cast<int>(std::floor((f.max.y - grid.origin.y) / grid.cell_size)) + 1);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (center_in(f, grid.center(c, r))) inside[grid.index(c, r)] = 1;
    }
  }
  std::vector<int> cells;
  for (int r = r0 - 1; r <= r1 + 1; ++r) {
    for (int c = c0 - 1; c <= c1 + 1; ++c) {
      if (!grid.in_bounds(c, r) || !grid.free[grid.index(c, r)]) continue;
      bool touches = false;
      for (int dr = -1; dr <= 1 && !touches; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (grid.in_bounds(c + dc, r + dr) && inside[grid.index(c + dc, r + dr)]) {
            touches = true;
            break;
          }
        }
      }
      if (touches) cells.push_back(grid.index(c, r));
    }
  }
  return cells;
}

int door_cell(const PathwayGrid& grid, const OpeningSegment& door) {
  const Vec2 mid = door.midpoint();
  int best = -1;
  double best_d = 2.0 * grid.cell_size + 1e-9;
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      const int idx = grid.index(c, r);
      if (!grid.free[idx]) continue;
      const double d = norm(grid.center(c, r) - mid);
      if (d < best_d) {
        best_d = d;
        best = idx;
      }
    }
  }
  return best;
}

std::vector<double> shortest_costs(const PathwayGrid& grid, int source) {
  std::vector<double> dist(grid.free.size(), kInf);
  if (source < 0) return dist;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  const double diag = std::sqrt(2.0);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const int uc = u % grid.cols;
    const int ur = u / grid.cols;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const int c = uc + dc;
        const int r = ur + dr;
        if (!grid.in_bounds(c, r)) continue;
        const int v = grid.index(c, r);
        if (!grid.free[v]) continue;
        const bool diagonal = dr != 0 && dc != 0;
        if (diagonal && (!grid.free[grid.index(uc + dc, ur)] || !grid.free[grid.index(uc, ur + dr)])) {
          continue;
        }
        const double nd = d + (diagonal ? diag : 1.0) * grid.step_cost(v);
        if (nd < dist[v]) {
          dist[v] = nd;
          heap.emplace(nd, v);
        }
      }
    }
  }
  return dist;
}

PathwayResult pathway_cost(const Layout& layout, const Catalog& catalog, double cell_size) {
  if (layout.room.doors().empty()) {
    throw ValidationError("pathway cost needs a room with at least one door");
  }
  PathwayResult result;
  for (std::size_t i = 0; i < layout.objects.size(); ++i) {
    if (catalog.category(layout.objects[i].category_id).needs_access) {
      result.objects.push_back(static_cast<int>(i));
    }
  }
  if (result.objects.empty()) {
    result.no_access_objects = true;
    return result;
  }
  const PathwayGrid grid = rasterize_free_space(layout, cell_size);
  const std::vector<double> dist =
      shortest_costs(grid, door_cell(grid, layout.room.doors().front()));
  double total = 0.0;
  for (int i : result.objects) {
    double best = kInf;
    for (int cell : access_cells(grid, layout.objects[i])) best = std::min(best, dist[cell]);
    if (best == kInf) {
      best = kUnreachableCost;
      result.unreachable.push_back(i);
    }
    result.object_costs.push_back(best);
    total += best;
  }
  result.cost = total / static_cast<double>(result.objects.size());
  return result;
}

}  // namespace roomalign

#pragma once

#include <cstdint>
#include <vector>

#include "roomalign/scene.hpp"

namespace roomalign {

inline constexpr double kPathwayCellSize = 0.05;
inline constexpr double kPathwayClearanceFloor = 0.05;
inline constexpr double kUnreachableCost = 10.0;

/// Free-space raster over the room bounding box, padded by one obstacle
/// cell on every side. Clearance is the Euclidean distance from a cell
/// center to the nearest obstacle cell center, in meters.
struct PathwayGrid {
  Vec2 origin;  // lower-left corner of cell (0, 0)
  double cell_size = kPathwayCellSize;
  int cols = 0;
  int rows = 0;
  std::vector<std::uint8_t> free;
  std::vector<double> clearance;

  int index(int col, int row) const { return row * cols + col; }
  Vec2 center(int col, int row) const {
    return {origin.x + (col + 0.5) * cell_size, origin.y + (row + 0.5) * cell_size};
  }
  bool in_bounds(int col, int row) const {
    return col >= 0 && row >= 0 && col < cols && row < rows;
  }
  /// Cost of stepping into a cell, before the diagonal length factor.
  double step_cost(int idx) const;
};

PathwayGrid rasterize_free_space(const Layout& layout,
                                 double cell_size = kPathwayCellSize);

struct PathwayResult {
  /// Mean path cost over objects that need access.
  double cost = 0.0;
  std::vector<int> objects;           // layout indices that need access
  std::vector<double> object_costs;   // parallel to `objects`
  std::vector<int> unreachable;       // layout indices given the sentinel
  bool no_access_objects = false;     // nothing to reach; cost is 0
};

/// Clearance-weighted shortest path from the first door's midpoint to the
/// free cells bordering each access-requiring object. Throws
/// ValidationError when the room has no door.
PathwayResult pathway_cost(const Layout& layout,
                           const Catalog& catalog = Catalog::builtin(),
                           double cell_size = kPathwayCellSize);

/// Free cells 8-adjacent to the footprint of `obj`.
std::vector<int> access_cells(const PathwayGrid& grid, const ObjectInstance& obj);

/// Free cell serving as the path origin for `door`, or -1 when the door is
/// blocked (no free cell within two cells of its midpoint).
int door_cell(const PathwayGrid& grid, const OpeningSegment& door);

/// Single-source shortest path costs over free cells (8-connected, no corner
/// cutting); unreachable cells hold +inf.
std::vector<double> shortest_costs(const PathwayGrid& grid, int source);

}  // namespace roomalign

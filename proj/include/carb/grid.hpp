#pragma once

#include <optional>
#include <vector>

#include "carb/gas.hpp"

namespace carb {

enum class Mode { standard, similarity };

// Uniform Cartesian cell layout. In similarity mode the bounds are in
// xi = x/t and a cell occupies the physical square xi*t at time t.
struct GridGeometry {
  int nx = 0, ny = 0;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  double dx = 0.0, dy = 0.0;
  static constexpr int ghost = 1;

  static GridGeometry make(int nx, int ny, double x_min, double x_max,
                           double y_min, double y_max);
  double xc(int i) const { return x_min + (i + 0.5) * dx; }
  double yc(int j) const { return y_min + (j + 0.5) * dy; }
  double xface(int i) const { return x_min + i * dx; }
  double yface(int j) const { return y_min + j * dy; }
};

// Cell-centered conservative states with a one-cell ghost frame.
// Index range i in [-1, nx], j in [-1, ny].
struct FieldGrid {
  GridGeometry geom;
  Mode mode = Mode::standard;
  double t0 = 1.0;        // similarity start time
  double time = 0.0;
  std::vector<Conservative> cells;

  static FieldGrid make(const GridGeometry& g, Mode mode, double t0 = 1.0);
  Conservative& at(int i, int j) {
    return cells[(j + 1) * (geom.nx + 2) + (i + 1)];
  }
  const Conservative& at(int i, int j) const {
    return cells[(j + 1) * (geom.nx + 2) + (i + 1)];
  }
};

enum class WallKind { wall, symmetry, wall_with_filament };

// Left/right pseudo-cell states are per interior row; uniform columns are
// the common case, the wedge preset needs row-dependent far fields.
struct BoundarySpec {
  std::vector<Primitive> left;   // size ny
  std::vector<Primitive> right;  // size ny
  WallKind bottom = WallKind::wall;
  WallKind top = WallKind::wall;

  static BoundarySpec uniform(const Primitive& left_state, const Primitive& right_state,
                              int ny, WallKind bottom = WallKind::wall,
                              WallKind top = WallKind::wall);
};

// One-cell-high filament: in row `row`, for cell centers left of extent_x,
// the horizontal velocity is zeroed (and permanently in the left pseudo-cell).
struct TriggerSpec {
  int row = 0;
  double extent_x = 0.0;
};

void fill_ghosts(FieldGrid& field, const BoundarySpec& bc,
                 const TriggerSpec* trigger = nullptr);

void apply_filament(FieldGrid& field, const TriggerSpec& trigger);

// Physical cell volume at time t (dx*dy in standard mode, dx*dy*t^2 in
// similarity mode).
double cell_volume(const FieldGrid& field, double t);

struct EdgeGeom {
  double length = 0.0;
  double nx = 0.0, ny = 0.0;
  double speed = 0.0;
};

// Geometry of the vertical edge at face index i (normal +x) or the
// horizontal edge at face index j (normal +y), evaluated at time t.
EdgeGeom x_edge_geometry(const FieldGrid& field, int i, double t);
EdgeGeom y_edge_geometry(const FieldGrid& field, int j, double t);

}  // namespace carb

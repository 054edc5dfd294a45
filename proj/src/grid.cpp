#include "carb/grid.hpp"

namespace carb {

GridGeometry GridGeometry::make(int nx, int ny, double x_min, double x_max,
                                double y_min, double y_max) {
  if (nx <= 0 || ny <= 0 || x_max <= x_min || y_max <= y_min) {
    throw UsageError("GridGeometry::make: degenerate grid");
  }
  GridGeometry g;
  g.nx = nx;
  g.ny = ny;
  g.x_min = x_min;
  g.x_max = x_max;
  g.y_min = y_min;
  g.y_max = y_max;
  g.dx = (x_max - x_min) / nx;
  g.dy = (y_max - y_min) / ny;
  return g;
}

FieldGrid FieldGrid::make(const GridGeometry& g, Mode mode, double t0) {
  FieldGrid f;
  f.geom = g;
  f.mode = mode;
  f.t0 = t0;
  f.time = (mode == Mode::similarity) ? t0 : 0.0;
  f.cells.assign(static_cast<size_t>(g.nx + 2) * (g.ny + 2), Conservative{});
  return f;
}

BoundarySpec BoundarySpec::uniform(const Primitive& left_state,
                                   const Primitive& right_state, int ny,
                                   WallKind bottom, WallKind top) {
  BoundarySpec bc;
  bc.left.assign(ny, left_state);
  bc.right.assign(ny, right_state);
  bc.bottom = bottom;
  bc.top = top;
  return bc;
}

void fill_ghosts(FieldGrid& field, const BoundarySpec& bc, const TriggerSpec* trigger) {
  const int nx = field.geom.nx;
  const int ny = field.geom.ny;
  if (static_cast<int>(bc.left.size()) != ny || static_cast<int>(bc.right.size()) != ny) {
    throw UsageError("fill_ghosts: boundary column size mismatch");
  }
  for (int j = 0; j < ny; ++j) {
    Primitive l = bc.left[j];
    if (trigger && j == trigger->row) l.ux = 0.0;
    field.at(-1, j) = prim_to_cons(l);
    field.at(nx, j) = prim_to_cons(bc.right[j]);
  }
  // Slip walls and the symmetry plane both mirror the adjacent interior cell
  // with the wall-normal velocity negated.
  for (int i = 0; i < nx; ++i) {
    Conservative b = field.at(i, 0);
    b.my = -b.my;
    field.at(i, -1) = b;
    Conservative t = field.at(i, ny - 1);
    t.my = -t.my;
    field.at(i, ny) = t;
  }
  // Corners are outside every stencil; copy the adjacent side ghost.
  field.at(-1, -1) = field.at(-1, 0);
  field.at(-1, ny) = field.at(-1, ny - 1);
  field.at(nx, -1) = field.at(nx, 0);
  field.at(nx, ny) = field.at(nx, ny - 1);
}

void apply_filament(FieldGrid& field, const TriggerSpec& trigger) {
  const int ny = field.geom.ny;
  if (trigger.row < 0 || trigger.row >= ny) {
    throw UsageError("apply_filament: trigger row outside grid");
  }
  for (int i = 0; i < field.geom.nx; ++i) {
    if (field.geom.xc(i) < trigger.extent_x) {
      field.at(i, trigger.row).mx = 0.0;
    }
  }
}

double cell_volume(const FieldGrid& field, double t) {
  double v = field.geom.dx * field.geom.dy;
  if (field.mode == Mode::similarity) v *= t * t;
  return v;
}

EdgeGeom x_edge_geometry(const FieldGrid& field, int i, double t) {
  EdgeGeom e;
  e.nx = 1.0;
  e.ny = 0.0;
  if (field.mode == Mode::similarity) {
    e.length = field.geom.dy * t;
    e.speed = field.geom.xface(i);
  } else {
    e.length = field.geom.dy;
    e.speed = 0.0;
  }
  return e;
}

EdgeGeom y_edge_geometry(const FieldGrid& field, int j, double t) {
  EdgeGeom e;
  e.nx = 0.0;
  e.ny = 1.0;
  if (field.mode == Mode::similarity) {
    e.length = field.geom.dx * t;
    e.speed = field.geom.yface(j);
  } else {
    e.length = field.geom.dx;
    e.speed = 0.0;
  }
  return e;
}

}  // namespace carb

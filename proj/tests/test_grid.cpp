#include <doctest.h>

#include <cmath>

#include "carb/grid.hpp"

using namespace carb;

namespace {

FieldGrid small_field(Mode mode = Mode::standard) {
  GridGeometry g = GridGeometry::make(4, 3, 0.0, 2.0, 0.0, 1.5);
  FieldGrid f = FieldGrid::make(g, mode, 1.0);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 4; ++i) {
      f.at(i, j) = {1.0 + i + 10 * j, 0.25, 0.5};
    }
  }
  return f;
}

}  // namespace

TEST_CASE("geometry centers and faces") {
  GridGeometry g = GridGeometry::make(4, 3, 0.0, 2.0, 0.0, 1.5);
  CHECK(g.dx == 0.5);
  CHECK(g.dy == 0.5);
  CHECK(g.xc(0) == 0.25);
  CHECK(g.xface(4) == 2.0);
  CHECK(g.yc(2) == 1.25);
  CHECK_THROWS_AS(GridGeometry::make(0, 3, 0.0, 1.0, 0.0, 1.0), UsageError);
  CHECK_THROWS_AS(GridGeometry::make(4, 3, 1.0, 0.0, 0.0, 1.0), UsageError);
}

TEST_CASE("wall ghosts mirror with negated normal velocity") {
  FieldGrid f = small_field();
  BoundarySpec bc = BoundarySpec::uniform({1.0, 0.25, 0.5}, {4.0, 0.25, 0.5}, 3);
  fill_ghosts(f, bc);
  // Bottom wall: ghost row j=-1 mirrors row 0 with my negated.
  const Conservative& in = f.at(2, 0);
  const Conservative& gh = f.at(2, -1);
  CHECK(gh.rho == in.rho);
  CHECK(gh.mx == in.mx);
  CHECK(gh.my == -in.my);
  // Top wall mirrors the last row.
  CHECK(f.at(1, 3).rho == f.at(1, 2).rho);
  CHECK(f.at(1, 3).my == -f.at(1, 2).my);
}

TEST_CASE("left and right ghosts take the per-row pseudo-cell states") {
  FieldGrid f = small_field();
  BoundarySpec bc;
  bc.left = {{1.0, 0.1, 0.0}, {2.0, 0.2, 0.0}, {3.0, 0.3, 0.0}};
  bc.right = {{4.0, -0.1, 0.0}, {5.0, -0.2, 0.0}, {6.0, -0.3, 0.0}};
  fill_ghosts(f, bc);
  CHECK(f.at(-1, 1).rho == 2.0);
  CHECK(f.at(-1, 1).mx == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(f.at(4, 2).rho == 6.0);
  CHECK(f.at(4, 2).mx == doctest::Approx(-1.8).epsilon(1e-15));
}

TEST_CASE("filament trigger zeroes the horizontal momentum in its row") {
  FieldGrid f = small_field();
  BoundarySpec bc = BoundarySpec::uniform({2.0, 0.25, 0.0}, {3.0, 0.25, 0.0}, 3);
  TriggerSpec trig{1, 1.0};
  apply_filament(f, trig);
  // Cells with centers left of extent_x = 1.0 in row 1: i = 0, 1.
  CHECK(f.at(0, 1).mx == 0.0);
  CHECK(f.at(1, 1).mx == 0.0);
  CHECK(f.at(2, 1).mx != 0.0);
  CHECK(f.at(0, 0).mx != 0.0);  // other rows untouched
  fill_ghosts(f, bc, &trig);
  // The left ghost of the trigger row is held at zero horizontal velocity.
  CHECK(f.at(-1, 1).mx == 0.0);
  CHECK(f.at(-1, 1).rho == 2.0);
  CHECK(f.at(-1, 0).mx == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("boundary row counts are validated") {
  FieldGrid f = small_field();
  BoundarySpec bc;
  bc.left.assign(2, Primitive{});  // wrong ny
  bc.right.assign(3, Primitive{});
  CHECK_THROWS_AS(fill_ghosts(f, bc), UsageError);
}

TEST_CASE("cell volume is static in standard mode and t^2-scaled in similarity") {
  FieldGrid fs = small_field(Mode::standard);
  CHECK(cell_volume(fs, 7.0) == doctest::Approx(0.25).epsilon(1e-15));
  FieldGrid fx = small_field(Mode::similarity);
  CHECK(cell_volume(fx, 2.0) == doctest::Approx(0.25 * 4.0).epsilon(1e-15));
}

TEST_CASE("edge geometry: lengths, normals, and similarity edge speeds") {
  FieldGrid fs = small_field(Mode::standard);
  EdgeGeom ex = x_edge_geometry(fs, 2, 3.0);
  CHECK(ex.length == 0.5);
  CHECK(ex.nx == 1.0);
  CHECK(ex.ny == 0.0);
  CHECK(ex.speed == 0.0);

  FieldGrid fx = small_field(Mode::similarity);
  EdgeGeom sx = x_edge_geometry(fx, 2, 3.0);
  CHECK(sx.length == doctest::Approx(0.5 * 3.0).epsilon(1e-15));
  // Edge at xi = xface(2) = 1.0 moves at speed xi in the normal direction.
  CHECK(sx.speed == doctest::Approx(1.0).epsilon(1e-15));
  EdgeGeom sy = y_edge_geometry(fx, 1, 3.0);
  CHECK(sy.ny == 1.0);
  CHECK(sy.speed == doctest::Approx(0.5).epsilon(1e-15));  // yface(1) = 0.5
}

TEST_CASE("symmetry bottom behaves like a wall for the mirror operation") {
  FieldGrid f = small_field();
  BoundarySpec bc = BoundarySpec::uniform({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 3,
                                          WallKind::symmetry, WallKind::wall);
  fill_ghosts(f, bc);
  CHECK(f.at(0, -1).rho == f.at(0, 0).rho);
  CHECK(f.at(0, -1).my == -f.at(0, 0).my);
}

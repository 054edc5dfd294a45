#include <doctest.h>

#include <cmath>

#include "carb/cli.hpp"

using namespace carb;

TEST_CASE("snapped shock position lands on a cell face") {
  RunConfig c;
  c.shock_x = 1.503;  // between faces; dx = 0.0125
  double snapped = c.snapped_shock_x();
  CHECK(snapped == doctest::Approx(1.5).epsilon(1e-15));
  double k = (snapped - c.x_min) / c.geometry().dx;
  CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-12));
  c.shock_x = -1.0;
  CHECK_THROWS_AS(c.snapped_shock_x(), UsageError);
  c.shock_x = 0.0;  // boundary face is not allowed
  CHECK_THROWS_AS(c.snapped_shock_x(), UsageError);
}

TEST_CASE("plane shock builder places the analytic states around the face") {
  RunConfig c;
  c.nx = 24;
  c.ny = 8;
  FieldGrid f = build_plane_shock(c);
  Primitive in = c.inflow();
  Primitive down = normal_shock_downstream(in, c.gas);
  CHECK(f.at(0, 0).rho == in.rho);
  CHECK(f.at(0, 0).mx == doctest::Approx(in.rho * in.ux).epsilon(1e-15));
  CHECK(f.at(c.nx - 1, 0).rho == doctest::Approx(down.rho).epsilon(1e-15));
  // The jump is exactly at the snapped face.
  int face = static_cast<int>(std::lround((c.snapped_shock_x() - c.x_min) / f.geom.dx));
  CHECK(f.at(face - 1, 3).rho == in.rho);
  CHECK(f.at(face, 3).rho == doctest::Approx(down.rho).epsilon(1e-15));
  c.mach_in = 0.8;
  CHECK_THROWS_AS(build_plane_shock(c), NoShockError);
}

TEST_CASE("filament builder zeroes the pre-shock velocity in one row") {
  RunConfig c;
  c.setup = Setup::filament_standard;
  c.nx = 24;
  c.ny = 8;
  ExperimentSetup s = build_filament_standard(c);
  REQUIRE(s.trigger.has_value());
  CHECK(s.trigger->row == 4);  // defaults to ny/2
  int face = static_cast<int>(std::lround((c.snapped_shock_x() - c.x_min) / c.geometry().dx));
  for (int i = 0; i < face; ++i) {
    CHECK(s.field.at(i, 4).mx == 0.0);
    CHECK(s.field.at(i, 3).mx != 0.0);
  }
  // Post-shock cells in the trigger row are untouched.
  CHECK(s.field.at(face, 4).mx != 0.0);
  // The reference field is the unperturbed plane shock.
  CHECK(s.reference.at(0, 4).mx != 0.0);
}

TEST_CASE("wedge builder partitions cells by the shock and wedge rays") {
  RunConfig c = preset_config("wedge-nuq");
  FieldGrid f = build_wedge_nuq(c.wedge, c);
  Primitive in = c.inflow();
  ObliqueShockSolution polar = wedge_shock_angles(c.wedge.alpha(), in, c.gas);
  // Far upstream of the tip: inflow.
  CHECK(f.at(0, 0).rho == in.rho);
  // Just above the axis far downstream: still gas at the downstream density.
  int i_right = f.geom.nx - 1;
  CHECK(f.at(i_right, 0).rho == doctest::Approx(polar.downstream_weak.rho).epsilon(1e-14));
  CHECK(f.at(i_right, 0).mx == 0.0);
  // Between the shock ray and the wedge ray: oblique downstream state.
  double sigma = polar.sigma_weak;
  double phi_mid = 0.5 * (sigma + c.wedge.alpha());
  double r = 0.3;
  int im = static_cast<int>((r * std::cos(phi_mid) - f.geom.x_min) / f.geom.dx);
  int jm = static_cast<int>((r * std::sin(phi_mid) - f.geom.y_min) / f.geom.dy);
  CHECK(f.at(im, jm).rho == doctest::Approx(polar.downstream_weak.rho).epsilon(1e-14));
  CHECK(f.at(im, jm).my > 0.0);
  // Above the shock ray: undisturbed inflow.
  int j_top = f.geom.ny - 1;
  CHECK(f.at(f.geom.nx / 2, j_top).rho == in.rho);
}

TEST_CASE("all presets produce valid, round-trippable configs") {
  for (const char* name : {"plane-shock", "filament-standard", "filament-similarity",
                           "wedge-nuq", "mach-sweep", "refine-study"}) {
    RunConfig c = preset_config(name);
    std::string text = config_to_text(c);
    RunConfig back = parse_config(text);  // also runs full validation
    CHECK(config_to_text(back) == text);
  }
  CHECK_THROWS_AS(preset_config("no-such-preset"), UsageError);
}

TEST_CASE("zero-length run emits exactly the initial record") {
  RunConfig c;
  c.t_end = 0.0;
  RunResult res = run_experiment(c);
  CHECK(res.steps == 0);
  REQUIRE(res.records.size() == 1);
  REQUIRE(res.snapshots.size() == 1);
  CHECK(res.records[0].time == 0.0);
  CHECK(res.records[0].l1_perturbation == 0.0);
  // The steady shock front sits at the snapped face in every row.
  for (double x : res.records[0].front) {
    CHECK(x == doctest::Approx(c.snapped_shock_x()).epsilon(1e-13));
  }
}

TEST_CASE("forced snapshot times are landed on exactly") {
  RunConfig c;
  c.t_end = 0.02;
  c.snapshot_every = 1000000;  // cadence never fires
  RunOptions opt;
  opt.snapshot_times = {0.007, 0.013};
  RunResult res = run_experiment(c, opt);
  REQUIRE(res.records.size() == 4);  // initial, two forced, final
  CHECK(res.records[1].time == 0.007);
  CHECK(res.records[2].time == 0.013);
  CHECK(res.records[3].time == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("runs are deterministic: identical records and snapshots") {
  RunConfig c = preset_config("filament-standard");
  c.nx = 48;
  c.ny = 24;
  c.trigger_row = 12;
  c.max_steps = 25;
  c.t_end = 10.0;
  c.snapshot_every = 5;
  RunResult a = run_experiment(c);
  RunResult b = run_experiment(c);
  REQUIRE(a.records.size() == b.records.size());
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (size_t k = 0; k < a.snapshots.size(); ++k) {
    REQUIRE(a.snapshots[k].time == b.snapshots[k].time);
    for (size_t q = 0; q < a.snapshots[k].cells.size(); ++q) {
      REQUIRE(a.snapshots[k].cells[q].rho == b.snapshots[k].cells[q].rho);
      REQUIRE(a.snapshots[k].cells[q].mx == b.snapshots[k].cells[q].mx);
      REQUIRE(a.snapshots[k].cells[q].my == b.snapshots[k].cells[q].my);
    }
  }
}

TEST_CASE("max_steps caps the run and still emits a final record") {
  RunConfig c;
  c.max_steps = 7;
  c.t_end = 100.0;
  c.snapshot_every = 1000;
  RunResult res = run_experiment(c);
  CHECK(res.steps == 7);
  REQUIRE(res.records.size() == 2);  // initial + capped-end record
  CHECK(res.records[1].time > 0.0);
}

TEST_CASE("entropy switch: records carry production only when enabled") {
  RunConfig c;
  c.max_steps = 3;
  c.t_end = 100.0;
  RunResult on = run_experiment(c);
  CHECK_FALSE(std::isnan(on.records.back().max_entropy_production));
  CHECK(on.records.back().entropy_margin <= 1.0);
  c.entropy = EntropySwitch::off;
  RunResult off = run_experiment(c);
  CHECK(std::isnan(off.records.back().max_entropy_production));
  // Rusanov with entropy=auto disables the recording.
  c.entropy = EntropySwitch::automatic;
  c.flux = FluxKind::rusanov;
  RunResult rus = run_experiment(c);
  CHECK(std::isnan(rus.records.back().max_entropy_production));
}

TEST_CASE("similarity filament setup demands similarity mode and symmetry") {
  RunConfig c = preset_config("filament-similarity");
  c.mode = Mode::standard;
  CHECK_THROWS_AS(build_filament_similarity(c), UsageError);
  c = preset_config("filament-similarity");
  c.bottom = WallKind::wall;
  CHECK_THROWS_AS(build_filament_similarity(c), UsageError);
}

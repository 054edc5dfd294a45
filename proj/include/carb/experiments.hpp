#pragma once

#include <functional>
#include <optional>
#include <string>

#include "carb/diagnostics.hpp"

namespace carb {

enum class Setup { plane_shock, filament_standard, filament_similarity, wedge_nuq };
enum class BlendKind { none, band };
enum class WedgeBranch { weak, strong };
enum class EntropySwitch { automatic, on, off };

struct WedgeConfig {
  double alpha_deg = 10.0;  // degrees, the config-file unit
  WedgeBranch branch = WedgeBranch::weak;
  double tip_x = 0.0;  // snapped to the nearest grid node on the symmetry axis

  double alpha() const { return alpha_deg * 3.14159265358979323846 / 180.0; }
};

// Everything a run needs; field names mirror the config-file keys.
struct RunConfig {
  GasModel gas;
  int nx = 240, ny = 120;
  double x_min = 0.0, x_max = 3.0, y_min = 0.0, y_max = 1.5;
  Mode mode = Mode::standard;
  double t0 = 1.0;
  FluxKind flux = FluxKind::godunov;
  double cfl = 0.45;
  BlendKind blend_kind = BlendKind::none;
  double blend_y_cut = 0.0;
  double blend_theta_max = 0.0;
  WallKind bottom = WallKind::wall;
  WallKind top = WallKind::wall;
  std::optional<int> trigger_row;
  Setup setup = Setup::plane_shock;
  double mach_in = 3.0;
  double rho_in = 1.0;
  double shock_x = 1.5;
  double t_end = 0.5;
  int snapshot_every = 200;
  long max_steps = 0;  // 0 = no cap
  EntropySwitch entropy = EntropySwitch::automatic;
  WedgeConfig wedge;
  double eps_c_rel = 0.01;  // carbuncle detection threshold, fraction of |u_in|
  int tip_k = 8;
  std::string out_dir = "out";

  GridGeometry geometry() const {
    return GridGeometry::make(nx, ny, x_min, x_max, y_min, y_max);
  }
  Primitive inflow() const {
    return {rho_in, mach_in * sound_speed(rho_in, gas), 0.0};
  }
  double snapped_shock_x() const;
  double eps_c() const { return eps_c_rel * mach_in * sound_speed(rho_in, gas); }
  bool entropy_enabled() const {
    if (entropy == EntropySwitch::automatic) {
      return flux == FluxKind::godunov && blend_kind == BlendKind::none;
    }
    return entropy == EntropySwitch::on;
  }
  SchemeSpec scheme() const;
};

struct ExperimentSetup {
  FieldGrid field;
  BoundarySpec bc;
  std::optional<TriggerSpec> trigger;
  FieldGrid reference;  // unperturbed analytic field on the same grid
};

FieldGrid build_plane_shock(const RunConfig& cfg);
ExperimentSetup build_filament_standard(const RunConfig& cfg);
ExperimentSetup build_filament_similarity(const RunConfig& cfg);
FieldGrid build_wedge_nuq(const WedgeConfig& wedge, const RunConfig& cfg);

// Dispatch on cfg.setup; also assembles boundary data and the reference.
ExperimentSetup build_experiment(const RunConfig& cfg);

struct RunResult {
  std::vector<FieldGrid> snapshots;
  std::vector<DiagnosticsRecord> records;
  long steps = 0;
};

struct RunOptions {
  // Extra times the stepper must land on exactly (each emits a record).
  std::vector<double> snapshot_times;
  bool keep_snapshots = true;
  // Called after each record is appended (snapshot streaming).
  std::function<void(const FieldGrid&, const DiagnosticsRecord&)> on_record;
};

RunResult run_experiment(const RunConfig& cfg, const RunOptions& opt = {});

}  // namespace carb

#include "carb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carb {

double RunConfig::snapped_shock_x() const {
  GridGeometry g = geometry();
  long face = std::lround((shock_x - g.x_min) / g.dx);
  if (face <= 0 || face >= g.nx) {
    throw UsageError("shock_x must lie strictly inside the domain");
  }
  return g.xface(static_cast<int>(face));
}

SchemeSpec RunConfig::scheme() const {
  SchemeSpec s;
  s.flux = flux;
  s.cfl = cfl;
  s.blend = (blend_kind == BlendKind::band)
                ? make_blend_mask_band(geometry(), blend_y_cut, blend_theta_max)
                : make_blend_mask_none();
  return s;
}

namespace {

FieldGrid two_state_field(const RunConfig& cfg, const Primitive& left_state,
                          const Primitive& right_state, double split_x) {
  FieldGrid f = FieldGrid::make(cfg.geometry(), cfg.mode, cfg.t0);
  Conservative l = prim_to_cons(left_state);
  Conservative r = prim_to_cons(right_state);
  for (int j = 0; j < cfg.ny; ++j) {
    for (int i = 0; i < cfg.nx; ++i) {
      f.at(i, j) = (f.geom.xc(i) < split_x) ? l : r;
    }
  }
  return f;
}

BoundarySpec plane_shock_bc(const RunConfig& cfg, const Primitive& in,
                            const Primitive& down) {
  return BoundarySpec::uniform(in, down, cfg.ny, cfg.bottom, cfg.top);
}

}  // namespace

FieldGrid build_plane_shock(const RunConfig& cfg) {
  if (cfg.mach_in <= 1.0) throw NoShockError("build_plane_shock: mach_in <= 1");
  Primitive in = cfg.inflow();
  Primitive down = normal_shock_downstream(in, cfg.gas);
  return two_state_field(cfg, in, down, cfg.snapped_shock_x());
}

ExperimentSetup build_filament_standard(const RunConfig& cfg) {
  Primitive in = cfg.inflow();
  Primitive down = normal_shock_downstream(in, cfg.gas);
  ExperimentSetup s{two_state_field(cfg, in, down, cfg.snapped_shock_x()),
                    plane_shock_bc(cfg, in, down), std::nullopt,
                    two_state_field(cfg, in, down, cfg.snapped_shock_x())};
  int row = cfg.trigger_row.value_or(cfg.ny / 2);
  s.trigger = TriggerSpec{row, cfg.snapped_shock_x()};
  apply_filament(s.field, *s.trigger);
  return s;
}

ExperimentSetup build_filament_similarity(const RunConfig& cfg) {
  if (cfg.mode != Mode::similarity) {
    throw UsageError("build_filament_similarity: mode must be similarity");
  }
  if (cfg.bottom != WallKind::symmetry) {
    throw UsageError("build_filament_similarity: bottom boundary must be symmetry");
  }
  RunConfig c = cfg;
  if (!c.trigger_row) c.trigger_row = 0;
  ExperimentSetup s = build_filament_standard(c);
  return s;
}

FieldGrid build_wedge_nuq(const WedgeConfig& wedge, const RunConfig& cfg) {
  Primitive in = cfg.inflow();
  ObliqueShockSolution polar = wedge_shock_angles(wedge.alpha(), in, cfg.gas);
  double sigma = (wedge.branch == WedgeBranch::weak) ? polar.sigma_weak
                                                     : polar.sigma_strong;
  Primitive down = (wedge.branch == WedgeBranch::weak) ? polar.downstream_weak
                                                       : polar.downstream_strong;
  Primitive still{down.rho, 0.0, 0.0};

  GridGeometry g = cfg.geometry();
  double tip_x = g.xface(static_cast<int>(std::lround((wedge.tip_x - g.x_min) / g.dx)));

  FieldGrid f = FieldGrid::make(g, cfg.mode, cfg.t0);
  Conservative cin = prim_to_cons(in);
  Conservative cdown = prim_to_cons(down);
  Conservative cstill = prim_to_cons(still);
  auto assign = [&](double x, double y) -> const Conservative& {
    double rx = x - tip_x;
    if (rx <= 0.0) return cin;
    double phi = std::atan2(y, rx);
    if (phi >= sigma) return cin;
    if (phi > wedge.alpha()) return cdown;
    return cstill;
  };
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      f.at(i, j) = assign(g.xc(i), g.yc(j));
    }
  }
  return f;
}

ExperimentSetup build_experiment(const RunConfig& cfg) {
  switch (cfg.setup) {
    case Setup::plane_shock: {
      Primitive in = cfg.inflow();
      Primitive down = normal_shock_downstream(in, cfg.gas);
      FieldGrid f = build_plane_shock(cfg);
      return {f, plane_shock_bc(cfg, in, down), std::nullopt, f};
    }
    case Setup::filament_standard:
      return build_filament_standard(cfg);
    case Setup::filament_similarity:
      return build_filament_similarity(cfg);
    case Setup::wedge_nuq: {
      if (cfg.bottom != WallKind::symmetry) {
        throw UsageError("wedge-nuq: bottom boundary must be symmetry");
      }
      FieldGrid f = build_wedge_nuq(cfg.wedge, cfg);
      // Far-field pseudo-cells carry the analytic initial states per row.
      BoundarySpec bc;
      bc.bottom = cfg.bottom;
      bc.top = cfg.top;
      GridGeometry g = f.geom;
      Primitive in = cfg.inflow();
      ObliqueShockSolution polar = wedge_shock_angles(cfg.wedge.alpha(), in, cfg.gas);
      double sigma = (cfg.wedge.branch == WedgeBranch::weak) ? polar.sigma_weak
                                                             : polar.sigma_strong;
      Primitive down = (cfg.wedge.branch == WedgeBranch::weak) ? polar.downstream_weak
                                                               : polar.downstream_strong;
      double tip_x = g.xface(static_cast<int>(std::lround((cfg.wedge.tip_x - g.x_min) / g.dx)));
      // Right ghost centers sit half a cell outside; assign by the same rays.
      double x = g.x_max + 0.5 * g.dx;
      bc.left.assign(g.ny, in);
      bc.right.reserve(g.ny);
      for (int j = 0; j < g.ny; ++j) {
        double phi = std::atan2(g.yc(j), x - tip_x);
        if (x <= tip_x || phi >= sigma) {
          bc.right.push_back(in);
        } else if (phi > cfg.wedge.alpha()) {
          bc.right.push_back(down);
        } else {
          bc.right.push_back({down.rho, 0.0, 0.0});
        }
      }
      return {f, bc, std::nullopt, f};
    }
  }
  throw UsageError("build_experiment: unknown setup");
}

RunResult run_experiment(const RunConfig& cfg, const RunOptions& opt) {
  ExperimentSetup s = build_experiment(cfg);
  SchemeSpec scheme = cfg.scheme();
  const TriggerSpec* trig = s.trigger ? &*s.trigger : nullptr;
  bool entropy_on = cfg.entropy_enabled();
  double eps = cfg.eps_c();

  std::vector<double> forced = opt.snapshot_times;
  std::sort(forced.begin(), forced.end());

  RunResult res;
  double running_max_prod = std::numeric_limits<double>::quiet_NaN();
  double running_max_margin = std::numeric_limits<double>::quiet_NaN();

  auto emit = [&](const FieldGrid& f) {
    DiagnosticsRecord rec;
    rec.time = f.time;
    PerturbationMetrics m = perturbation_metrics(f, s.reference, eps);
    rec.l1_perturbation = m.l1;
    rec.extent = m.extent;
    rec.extent_height = m.extent.height();
    rec.max_entropy_production = running_max_prod;
    rec.entropy_margin = running_max_margin;
    rec.front = shock_front(f);
    rec.tip_angle_beta = tip_angle(rec.front, f.geom, cfg.tip_k);
    running_max_prod = std::numeric_limits<double>::quiet_NaN();
    running_max_margin = std::numeric_limits<double>::quiet_NaN();
    if (opt.keep_snapshots) res.snapshots.push_back(f);
    res.records.push_back(std::move(rec));
    if (opt.on_record) opt.on_record(f, res.records.back());
  };

  FieldGrid& f = s.field;
  emit(f);

  const double t_end = cfg.t_end;
  const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
  EdgeStates edges;
  FieldGrid before = f;  // reused scratch copy for entropy diagnostics
  size_t forced_idx = 0;
  while (forced_idx < forced.size() && forced[forced_idx] <= f.time + tiny) ++forced_idx;

  long since_snapshot = 0;
  while (f.time < t_end - tiny && (cfg.max_steps == 0 || res.steps < cfg.max_steps)) {
    double dt = cfl_dt(f, scheme, cfg.gas);
    dt = std::min(dt, t_end - f.time);
    bool hit_forced = false;
    if (forced_idx < forced.size() && f.time + dt >= forced[forced_idx] - tiny) {
      dt = forced[forced_idx] - f.time;
      hit_forced = true;
    }
    if (entropy_on) before = f;
    step(f, s.bc, trig, scheme, dt, cfg.gas, entropy_on ? &edges : nullptr);
    if (entropy_on) {
      EntropyField ef = entropy_production(before, f, edges, cfg.gas);
      if (std::isnan(running_max_prod) || ef.max_production > running_max_prod) {
        running_max_prod = ef.max_production;
      }
      if (std::isnan(running_max_margin) || ef.max_margin > running_max_margin) {
        running_max_margin = ef.max_margin;
      }
    }
    ++res.steps;
    ++since_snapshot;
    bool at_end = f.time >= t_end - tiny ||
                  (cfg.max_steps != 0 && res.steps >= cfg.max_steps);
    if (hit_forced) ++forced_idx;
    if (hit_forced || at_end || since_snapshot >= cfg.snapshot_every) {
      emit(f);
      since_snapshot = 0;
    }
  }
  return res;
}

}  // namespace carb

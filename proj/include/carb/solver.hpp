#pragma once

#include "carb/grid.hpp"
#include "carb/riemann.hpp"

namespace carb {

enum class FluxKind { godunov, rusanov };

// Per-cell viscosity blend weight; evaluated per edge as the max of the two
// adjacent cells' values (ghost-adjacent edges use the interior cell's value).
struct BlendMask {
  int nx = 0, ny = 0;
  std::vector<double> theta;  // empty means theta == 0 everywhere

  double at(int i, int j) const {
    if (theta.empty()) return 0.0;
    if (i < 0) i = 0;
    if (i >= nx) i = nx - 1;
    if (j < 0) j = 0;
    if (j >= ny) j = ny - 1;
    return theta[static_cast<size_t>(j) * nx + i];
  }
};

BlendMask make_blend_mask_none();
// theta_max above y_cut, 0 below (cell centers).
BlendMask make_blend_mask_band(const GridGeometry& geom, double y_cut, double theta_max);

struct SchemeSpec {
  FluxKind flux = FluxKind::godunov;
  BlendMask blend;
  double cfl = 0.45;
};

// Godunov edge-ray samples of one step, for the entropy diagnostics.
struct EdgeStates {
  int nx = 0, ny = 0;
  double t_before = 0.0;
  double dt = 0.0;
  std::vector<Primitive> xstar;  // (nx+1) * ny, row-major j then i
  std::vector<Primitive> ystar;  // nx * (ny+1)
};

struct StepReport {
  double dt = 0.0;
  double max_wave_speed = 0.0;
  // Sum over boundary edges of length * outward flux; the volume-weighted
  // field total changes by -dt times this.
  EdgeFlux boundary_total;
};

double cfl_dt(const FieldGrid& field, const SchemeSpec& scheme, const GasModel& gas);

StepReport step_standard(FieldGrid& field, const BoundarySpec& bc,
                         const TriggerSpec* trigger, const SchemeSpec& scheme,
                         double dt, const GasModel& gas, EdgeStates* record = nullptr);

StepReport step_similarity(FieldGrid& field, const BoundarySpec& bc,
                           const TriggerSpec* trigger, const SchemeSpec& scheme,
                           double dt, const GasModel& gas, EdgeStates* record = nullptr);

// Dispatch on field.mode.
StepReport step(FieldGrid& field, const BoundarySpec& bc, const TriggerSpec* trigger,
                const SchemeSpec& scheme, double dt, const GasModel& gas,
                EdgeStates* record = nullptr);

}  // namespace carb

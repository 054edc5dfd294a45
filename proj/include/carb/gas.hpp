#pragma once

#include "carb/common.hpp"

namespace carb {

// Polytropic gas p = kappa * rho^gamma.
struct GasModel {
  double gamma = 1.4;
  double kappa = 1.0;
};

struct Primitive {
  double rho = 1.0;
  double ux = 0.0;
  double uy = 0.0;
};

struct Conservative {
  double rho = 1.0;
  double mx = 0.0;
  double my = 0.0;
};

double pressure(double rho, const GasModel& gas);
double sound_speed(double rho, const GasModel& gas);

Conservative prim_to_cons(const Primitive& p);
Primitive cons_to_prim(const Conservative& c);

// Downstream state of a standing normal shock. The x-velocity of `upstream`
// is the shock-normal component (must be supersonic, un > c), uy is
// tangential and carried through unchanged.
Primitive normal_shock_downstream(const Primitive& upstream, const GasModel& gas);

// Both attached oblique-shock solutions for horizontal supersonic inflow
// deflected upward by angle alpha. Shock angles measured from the flow
// direction; downstream velocities in the fixed frame.
struct ObliqueShockSolution {
  double sigma_weak = 0.0;
  double sigma_strong = 0.0;
  Primitive downstream_weak;
  Primitive downstream_strong;
};

ObliqueShockSolution wedge_shock_angles(double alpha, const Primitive& upstream,
                                        const GasModel& gas);

// Flow turn angle produced by an oblique shock at angle sigma for horizontal
// inflow `upstream`. Exposed for the polar diagnostics and tests.
double oblique_deflection(double sigma, const Primitive& upstream, const GasModel& gas);

// Downstream state of the oblique shock at angle sigma (fixed frame).
Primitive oblique_downstream(double sigma, const Primitive& upstream, const GasModel& gas);

// Maximum deflection (detachment) angle and the shock angle attaining it.
struct DetachmentPoint {
  double sigma = 0.0;
  double alpha_max = 0.0;
};
DetachmentPoint detachment_angle(const Primitive& upstream, const GasModel& gas);

}  // namespace carb

#pragma once

#include "carb/gas.hpp"

namespace carb {

enum class WaveKind { none, shock, rarefaction };

struct Wave {
  WaveKind kind = WaveKind::none;
  double head = 0.0;  // for a shock head == tail == shock speed
  double tail = 0.0;
};

// Complete wave structure of the normal Riemann problem in the rotated
// (normal, tangential) frame. In the isentropic system the star region has a
// single density; only the tangential velocity jumps across the contact.
struct RiemannFan {
  GasModel gas;
  double rho_l = 0.0, un_l = 0.0, ut_l = 0.0;
  double rho_r = 0.0, un_r = 0.0, ut_r = 0.0;
  double c_l = 0.0, c_r = 0.0;
  double rho_star = 0.0;
  double u_star = 0.0;  // normal velocity of the star region == contact speed
  double c_star = 0.0;
  Wave left, right;
};

// Numerical flux per unit edge length in the fixed frame.
struct EdgeFlux {
  double frho = 0.0;
  double fmx = 0.0;
  double fmy = 0.0;
};

EdgeFlux& operator+=(EdgeFlux& a, const EdgeFlux& b);
EdgeFlux operator*(double s, const EdgeFlux& f);

// Exact physical flux f(U)·n minus edge motion: (f(U) - s U)·n.
EdgeFlux physical_flux(const Primitive& u, double nx, double ny, double edge_speed,
                       const GasModel& gas);

RiemannFan solve_star(const Primitive& left, const Primitive& right, double nx,
                      double ny, const GasModel& gas);

// Self-similar solution along the ray x/t = s. Ties on a discontinuity
// resolve to the right limit.
Primitive sample_fan_rotated(const RiemannFan& fan, double s);

// sample_fan_rotated rotated back into the fixed frame.
Primitive sample_fan(const RiemannFan& fan, double s, double nx, double ny);

EdgeFlux godunov_flux(const Primitive& left, const Primitive& right, double nx,
                      double ny, double edge_speed, const GasModel& gas);

// Local Lax-Friedrichs.
EdgeFlux rusanov_flux(const Primitive& left, const Primitive& right, double nx,
                      double ny, double edge_speed, const GasModel& gas);

// (1-theta) * godunov + theta * rusanov.
EdgeFlux blended_flux(const Primitive& left, const Primitive& right, double nx,
                      double ny, double edge_speed, double theta, const GasModel& gas);

// Godunov flux that also reports the sampled edge-ray state (rotated back to
// the fixed frame); used by the entropy diagnostics.
EdgeFlux godunov_flux_sampled(const Primitive& left, const Primitive& right,
                              double nx, double ny, double edge_speed,
                              const GasModel& gas, Primitive* star_out);

}  // namespace carb

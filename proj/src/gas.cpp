#include "carb/gas.hpp"

#include <cmath>
#include <string>

namespace carb {

double pressure(double rho, const GasModel& gas) {
  if (rho < 0.0) throw StateError("pressure: negative density");
  return gas.kappa * std::pow(rho, gas.gamma);
}

double sound_speed(double rho, const GasModel& gas) {
  if (rho <= 0.0) throw StateError("sound_speed: nonpositive density");
  return std::sqrt(gas.gamma * gas.kappa * std::pow(rho, gas.gamma - 1.0));
}

Conservative prim_to_cons(const Primitive& p) {
  if (p.rho <= 0.0) throw StateError("prim_to_cons: nonpositive density");
  return {p.rho, p.rho * p.ux, p.rho * p.uy};
}

Primitive cons_to_prim(const Conservative& c) {
  if (c.rho <= 0.0) throw StateError("cons_to_prim: nonpositive density");
  return {c.rho, c.mx / c.rho, c.my / c.rho};
}

namespace {

// Momentum-balance residual of a standing shock with upstream (rho_l, un)
// as a function of the downstream density:
//   g(rho) = rho_l^2 un^2 (1/rho_l - 1/rho) + p_l - p(rho)
// g(rho_l) = 0 is the trivial no-jump root; the shock is the second root.
double shock_residual(double rho, double rho_l, double un, double p_l,
                      const GasModel& gas) {
  double flux2 = rho_l * rho_l * un * un;
  return flux2 * (1.0 / rho_l - 1.0 / rho) + p_l - pressure(rho, gas);
}

double shock_residual_deriv(double rho, double rho_l, double un, const GasModel& gas) {
  double flux2 = rho_l * rho_l * un * un;
  double dp = gas.gamma * gas.kappa * std::pow(rho, gas.gamma - 1.0);
  return flux2 / (rho * rho) - dp;
}

}  // namespace

Primitive normal_shock_downstream(const Primitive& upstream, const GasModel& gas) {
  double rho_l = upstream.rho;
  double un = upstream.ux;
  if (rho_l <= 0.0) throw StateError("normal_shock_downstream: nonpositive density");
  double c_l = sound_speed(rho_l, gas);
  if (un <= c_l) throw NoShockError("normal_shock_downstream: upstream Mach <= 1");

  double p_l = pressure(rho_l, gas);

  // Bracket the compressive root: g rises from the trivial zero at rho_l,
  // then falls through zero once p(rho) dominates.
  double hi = 2.0 * rho_l;
  int guard = 0;
  while (shock_residual(hi, rho_l, un, p_l, gas) > 0.0) {
    hi *= 2.0;
    if (++guard > 400) throw SolverAbort("normal_shock_downstream: bracket failed");
  }
  double lo = rho_l * (1.0 + 1e-14);

  // Bracketed Newton with bisection fallback.
  double rho = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    double g = shock_residual(rho, rho_l, un, p_l, gas);
    if (g > 0.0) lo = rho; else hi = rho;
    double dg = shock_residual_deriv(rho, rho_l, un, gas);
    double next = rho - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    double drho = std::abs(next - rho);
    rho = next;
    if (drho <= 1e-15 * rho) break;
  }

  Primitive down;
  down.rho = rho;
  down.ux = rho_l * un / rho;
  down.uy = upstream.uy;
  return down;
}

Primitive oblique_downstream(double sigma, const Primitive& upstream, const GasModel& gas) {
  double q = std::hypot(upstream.ux, upstream.uy);
  double un = q * std::sin(sigma);
  double ut = q * std::cos(sigma);
  Primitive normal_up{upstream.rho, un, 0.0};
  Primitive nd = normal_shock_downstream(normal_up, gas);
  // Rotate (un_r, ut) back: shock ray direction (cos s, sin s), inward normal
  // (sin s, -cos s).
  Primitive down;
  down.rho = nd.rho;
  down.ux = ut * std::cos(sigma) + nd.ux * std::sin(sigma);
  down.uy = ut * std::sin(sigma) - nd.ux * std::cos(sigma);
  return down;
}

double oblique_deflection(double sigma, const Primitive& upstream, const GasModel& gas) {
  double q = std::hypot(upstream.ux, upstream.uy);
  double c = sound_speed(upstream.rho, gas);
  double un = q * std::sin(sigma);
  if (un <= c) return 0.0;  // Mach wave or weaker: no turning
  Primitive d = oblique_downstream(sigma, upstream, gas);
  return std::atan2(d.uy, d.ux);
}

DetachmentPoint detachment_angle(const Primitive& upstream, const GasModel& gas) {
  double q = std::hypot(upstream.ux, upstream.uy);
  double c = sound_speed(upstream.rho, gas);
  double mach = q / c;
  if (mach <= 1.0) throw NoShockError("detachment_angle: Mach <= 1");
  double a = std::asin(1.0 / mach);
  double b = std::asin(1.0);  // pi/2
  // Golden-section maximization of the deflection.
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = oblique_deflection(x1, upstream, gas);
  double f2 = oblique_deflection(x2, upstream, gas);
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = oblique_deflection(x2, upstream, gas);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = oblique_deflection(x1, upstream, gas);
    }
  }
  double sigma = 0.5 * (a + b);
  return {sigma, oblique_deflection(sigma, upstream, gas)};
}

namespace {

// Bracketed root of deflection(sigma) - alpha on [a, b], secant-accelerated
// bisection (the deflection has no cheap analytic derivative).
double solve_deflection(double alpha, double a, double b, const Primitive& up,
                        const GasModel& gas) {
  double fa = oblique_deflection(a, up, gas) - alpha;
  double fb = oblique_deflection(b, up, gas) - alpha;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw SolverAbort("wedge_shock_angles: lost bracket");
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    double fx = oblique_deflection(x, up, gas) - alpha;
    if (fx == 0.0) return x;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
    if (b - a <= 1e-15 * std::max(1.0, std::abs(x))) break;
    // Secant step from the bracket endpoints, clipped into the interval.
    double s = a - fa * (b - a) / (fb - fa);
    double mid = 0.5 * (a + b);
    x = (s > a && s < b) ? 0.5 * (s + mid) : mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

ObliqueShockSolution wedge_shock_angles(double alpha, const Primitive& upstream,
                                        const GasModel& gas) {
  double q = std::hypot(upstream.ux, upstream.uy);
  double c = sound_speed(upstream.rho, gas);
  double mach = q / c;
  if (mach <= 1.0) throw NoShockError("wedge_shock_angles: Mach <= 1");
  if (alpha < 0.0) throw UsageError("wedge_shock_angles: negative deflection");

  double sigma_mach = std::asin(1.0 / mach);
  double sigma_normal = std::asin(1.0);

  ObliqueShockSolution sol;
  if (alpha == 0.0) {
    sol.sigma_weak = sigma_mach;
    sol.sigma_strong = sigma_normal;
    sol.downstream_weak = upstream;  // zero-strength Mach wave
    Primitive nup{upstream.rho, q, 0.0};
    sol.downstream_strong = normal_shock_downstream(nup, gas);
    return sol;
  }

  DetachmentPoint det = detachment_angle(upstream, gas);
  if (alpha >= det.alpha_max) {
    throw DetachmentError("wedge_shock_angles: deflection exceeds detachment angle");
  }

  sol.sigma_weak = solve_deflection(alpha, sigma_mach, det.sigma, upstream, gas);
  sol.sigma_strong = solve_deflection(alpha, det.sigma, sigma_normal, upstream, gas);
  sol.downstream_weak = oblique_downstream(sol.sigma_weak, upstream, gas);
  sol.downstream_strong = oblique_downstream(sol.sigma_strong, upstream, gas);
  return sol;
}

}  // namespace carb

#include "carb/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace carb {

EdgeFlux& operator+=(EdgeFlux& a, const EdgeFlux& b) {
  a.frho += b.frho;
  a.fmx += b.fmx;
  a.fmy += b.fmy;
  return a;
}

EdgeFlux operator*(double s, const EdgeFlux& f) {
  return {s * f.frho, s * f.fmx, s * f.fmy};
}

namespace {

struct Rotated {
  double un, ut;
};

inline Rotated rotate(const Primitive& p, double nx, double ny) {
  return {p.ux * nx + p.uy * ny, -p.ux * ny + p.uy * nx};
}

inline EdgeFlux unrotate(double frho, double fn, double ft, double nx, double ny) {
  return {frho, fn * nx - ft * ny, fn * ny + ft * nx};
}

// Wave function of one side: velocity change across the wave connecting
// density rho_k to rho. Shock branch for rho > rho_k, rarefaction otherwise.
struct SideData {
  double rho, c, p;
};

inline double wave_fn(double rho, const SideData& k, const GasModel& gas,
                      double* deriv) {
  double p = gas.kappa * std::pow(rho, gas.gamma);
  double c = std::sqrt(gas.gamma * p / rho);
  if (rho > k.rho) {
    double a = (p - k.p) * (1.0 / k.rho - 1.0 / rho);
    if (a <= 0.0) {
      if (deriv) *deriv = c / rho;
      return 0.0;
    }
    double f = std::sqrt(a);
    if (deriv) {
      double dp = gas.gamma * p / rho;
      *deriv = (dp * (1.0 / k.rho - 1.0 / rho) + (p - k.p) / (rho * rho)) / (2.0 * f);
    }
    return f;
  }
  if (deriv) *deriv = c / rho;
  return 2.0 / (gas.gamma - 1.0) * (c - k.c);
}

}  // namespace

EdgeFlux physical_flux(const Primitive& u, double nx, double ny, double edge_speed,
                       const GasModel& gas) {
  Rotated r = rotate(u, nx, ny);
  double p = pressure(u.rho, gas);
  double rel = r.un - edge_speed;
  double frho = u.rho * rel;
  double fn = u.rho * r.un * r.un + p - edge_speed * u.rho * r.un;
  double ft = u.rho * rel * r.ut;
  return unrotate(frho, fn, ft, nx, ny);
}

RiemannFan solve_star(const Primitive& left, const Primitive& right, double nx,
                      double ny, const GasModel& gas) {
  if (left.rho <= 0.0 || right.rho <= 0.0) {
    throw StateError("solve_star: nonpositive density");
  }
  Rotated l = rotate(left, nx, ny);
  Rotated r = rotate(right, nx, ny);

  RiemannFan fan;
  fan.gas = gas;
  fan.rho_l = left.rho;
  fan.un_l = l.un;
  fan.ut_l = l.ut;
  fan.rho_r = right.rho;
  fan.un_r = r.un;
  fan.ut_r = r.ut;
  fan.c_l = sound_speed(left.rho, gas);
  fan.c_r = sound_speed(right.rho, gas);

  if (left.rho == right.rho && l.un == r.un) {
    fan.rho_star = left.rho;
    fan.u_star = l.un;
    fan.c_star = fan.c_l;
    fan.left = {WaveKind::none, l.un - fan.c_l, l.un - fan.c_l};
    fan.right = {WaveKind::none, r.un + fan.c_r, r.un + fan.c_r};
    return fan;
  }

  double du = r.un - l.un;
  if (2.0 / (gas.gamma - 1.0) * (fan.c_l + fan.c_r) <= du) {
    throw VacuumError("solve_star: vacuum forms between the states");
  }

  SideData sl{left.rho, fan.c_l, pressure(left.rho, gas)};
  SideData sr{right.rho, fan.c_r, pressure(right.rho, gas)};

  auto phi = [&](double rho, double* dphi) {
    double dl, dr;
    double v = wave_fn(rho, sl, gas, &dl) + wave_fn(rho, sr, gas, &dr) + du;
    if (dphi) *dphi = dl + dr;
    return v;
  };

  double lo = std::min(left.rho, right.rho);
  double hi = std::max(left.rho, right.rho);
  int guard = 0;
  while (phi(hi, nullptr) < 0.0) {
    hi *= 2.0;
    if (++guard > 2000) throw SolverAbort("solve_star: upper bracket failed");
  }
  while (phi(lo, nullptr) > 0.0) {
    lo *= 0.5;
    if (++guard > 2000) throw SolverAbort("solve_star: lower bracket failed");
  }

  double rho = std::clamp(0.5 * (left.rho + right.rho), lo, hi);
  for (int it = 0; it < 200; ++it) {
    double dphi;
    double v = phi(rho, &dphi);
    if (v == 0.0) break;
    if (v > 0.0) hi = rho; else lo = rho;
    double next = rho - v / dphi;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    double step = std::abs(next - rho);
    rho = next;
    if (step <= 1e-15 * rho) break;
  }

  double scale = std::max(std::max(std::abs(l.un), std::abs(r.un)),
                          std::max(fan.c_l, fan.c_r));
  double fl_d, fr_d;
  double fl = wave_fn(rho, sl, gas, &fl_d);
  double fr = wave_fn(rho, sr, gas, &fr_d);
  if (std::abs(fl + fr + du) > 1e-13 * scale) {
    throw SolverAbort("solve_star: star iteration did not reach machine accuracy");
  }

  fan.rho_star = rho;
  fan.u_star = 0.5 * (l.un + r.un) + 0.5 * (fr - fl);
  fan.c_star = sound_speed(rho, gas);
  double p_star = pressure(rho, gas);

  if (rho > left.rho) {
    double mass_flux = (p_star - sl.p) / fl;
    double s = l.un - mass_flux / left.rho;
    fan.left = {WaveKind::shock, s, s};
  } else if (rho < left.rho) {
    fan.left = {WaveKind::rarefaction, l.un - fan.c_l, fan.u_star - fan.c_star};
  } else {
    fan.left = {WaveKind::none, l.un - fan.c_l, l.un - fan.c_l};
  }

  if (rho > right.rho) {
    double mass_flux = (p_star - sr.p) / fr;
    double s = r.un + mass_flux / right.rho;
    fan.right = {WaveKind::shock, s, s};
  } else if (rho < right.rho) {
    fan.right = {WaveKind::rarefaction, r.un + fan.c_r, fan.u_star + fan.c_star};
  } else {
    fan.right = {WaveKind::none, r.un + fan.c_r, r.un + fan.c_r};
  }
  return fan;
}

Primitive sample_fan_rotated(const RiemannFan& fan, double s) {
  const GasModel& gas = fan.gas;
  double gm1 = gas.gamma - 1.0;
  double gp1 = gas.gamma + 1.0;
  if (s < fan.u_star) {
    if (fan.left.kind == WaveKind::rarefaction) {
      if (s < fan.left.head) return {fan.rho_l, fan.un_l, fan.ut_l};
      if (s < fan.left.tail) {
        double c = gm1 / gp1 * (fan.un_l - s) + 2.0 * fan.c_l / gp1;
        double rho = std::pow(c * c / (gas.gamma * gas.kappa), 1.0 / gm1);
        return {rho, s + c, fan.ut_l};
      }
      return {fan.rho_star, fan.u_star, fan.ut_l};
    }
    if (s < fan.left.head) return {fan.rho_l, fan.un_l, fan.ut_l};
    return {fan.rho_star, fan.u_star, fan.ut_l};
  }
  if (fan.right.kind == WaveKind::rarefaction) {
    if (s >= fan.right.head) return {fan.rho_r, fan.un_r, fan.ut_r};
    if (s >= fan.right.tail) {
      double c = gm1 / gp1 * (s - fan.un_r) + 2.0 * fan.c_r / gp1;
      double rho = std::pow(c * c / (gas.gamma * gas.kappa), 1.0 / gm1);
      return {rho, s - c, fan.ut_r};
    }
    return {fan.rho_star, fan.u_star, fan.ut_r};
  }
  if (s >= fan.right.head) return {fan.rho_r, fan.un_r, fan.ut_r};
  return {fan.rho_star, fan.u_star, fan.ut_r};
}

Primitive sample_fan(const RiemannFan& fan, double s, double nx, double ny) {
  Primitive rot = sample_fan_rotated(fan, s);
  return {rot.rho, rot.ux * nx - rot.uy * ny, rot.ux * ny + rot.uy * nx};
}

EdgeFlux godunov_flux_sampled(const Primitive& left, const Primitive& right,
                              double nx, double ny, double edge_speed,
                              const GasModel& gas, Primitive* star_out) {
  RiemannFan fan = solve_star(left, right, nx, ny, gas);
  Primitive u = sample_fan_rotated(fan, edge_speed);
  if (star_out) {
    *star_out = {u.rho, u.ux * nx - u.uy * ny, u.ux * ny + u.uy * nx};
  }
  double p = pressure(u.rho, gas);
  double rel = u.ux - edge_speed;
  double frho = u.rho * rel;
  double fn = u.rho * u.ux * u.ux + p - edge_speed * u.rho * u.ux;
  double ft = u.rho * rel * u.uy;
  return unrotate(frho, fn, ft, nx, ny);
}

EdgeFlux godunov_flux(const Primitive& left, const Primitive& right, double nx,
                      double ny, double edge_speed, const GasModel& gas) {
  return godunov_flux_sampled(left, right, nx, ny, edge_speed, gas, nullptr);
}

EdgeFlux rusanov_flux(const Primitive& left, const Primitive& right, double nx,
                      double ny, double edge_speed, const GasModel& gas) {
  if (left.rho <= 0.0 || right.rho <= 0.0) {
    throw StateError("rusanov_flux: nonpositive density");
  }
  Rotated l = rotate(left, nx, ny);
  Rotated r = rotate(right, nx, ny);
  double c_l = sound_speed(left.rho, gas);
  double c_r = sound_speed(right.rho, gas);
  double p_l = pressure(left.rho, gas);
  double p_r = pressure(right.rho, gas);
  double a = std::max(std::abs(l.un - edge_speed) + c_l,
                      std::abs(r.un - edge_speed) + c_r);

  double frho = 0.5 * (left.rho * l.un + right.rho * r.un) -
                edge_speed * 0.5 * (left.rho + right.rho) -
                0.5 * a * (right.rho - left.rho);
  double fn = 0.5 * (left.rho * l.un * l.un + p_l + right.rho * r.un * r.un + p_r) -
              edge_speed * 0.5 * (left.rho * l.un + right.rho * r.un) -
              0.5 * a * (right.rho * r.un - left.rho * l.un);
  double ft = 0.5 * (left.rho * l.un * l.ut + right.rho * r.un * r.ut) -
              edge_speed * 0.5 * (left.rho * l.ut + right.rho * r.ut) -
              0.5 * a * (right.rho * r.ut - left.rho * l.ut);
  return unrotate(frho, fn, ft, nx, ny);
}

EdgeFlux blended_flux(const Primitive& left, const Primitive& right, double nx,
                      double ny, double edge_speed, double theta, const GasModel& gas) {
  if (theta < 0.0 || theta > 1.0) throw UsageError("blended_flux: theta outside [0,1]");
  if (theta == 0.0) return godunov_flux(left, right, nx, ny, edge_speed, gas);
  if (theta == 1.0) return rusanov_flux(left, right, nx, ny, edge_speed, gas);
  EdgeFlux g = godunov_flux(left, right, nx, ny, edge_speed, gas);
  EdgeFlux r = rusanov_flux(left, right, nx, ny, edge_speed, gas);
  return {(1.0 - theta) * g.frho + theta * r.frho,
          (1.0 - theta) * g.fmx + theta * r.fmx,
          (1.0 - theta) * g.fmy + theta * r.fmy};
}

}  // namespace carb

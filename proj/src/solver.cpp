#include "carb/solver.hpp"

#include <cmath>
#include <string>

namespace carb {

BlendMask make_blend_mask_none() { return {}; }

BlendMask make_blend_mask_band(const GridGeometry& geom, double y_cut, double theta_max) {
  if (theta_max < 0.0 || theta_max > 1.0) {
    throw UsageError("make_blend_mask_band: theta_max outside [0,1]");
  }
  BlendMask m;
  m.nx = geom.nx;
  m.ny = geom.ny;
  m.theta.assign(static_cast<size_t>(geom.nx) * geom.ny, 0.0);
  for (int j = 0; j < geom.ny; ++j) {
    if (geom.yc(j) > y_cut) {
      for (int i = 0; i < geom.nx; ++i) {
        m.theta[static_cast<size_t>(j) * geom.nx + i] = theta_max;
      }
    }
  }
  return m;
}

namespace {

struct PrimCache {
  std::vector<Primitive> prim;  // (nx+2)*(ny+2), ghost frame included
  std::vector<double> c;
  int nx, ny;
  const Primitive& at(int i, int j) const {
    return prim[(j + 1) * (nx + 2) + (i + 1)];
  }
  double cs(int i, int j) const { return c[(j + 1) * (nx + 2) + (i + 1)]; }
};

PrimCache make_cache(const FieldGrid& f, const GasModel& gas) {
  PrimCache pc;
  pc.nx = f.geom.nx;
  pc.ny = f.geom.ny;
  pc.prim.resize(f.cells.size());
  pc.c.resize(f.cells.size());
  for (size_t k = 0; k < f.cells.size(); ++k) {
    const Conservative& u = f.cells[k];
    if (!(u.rho > 0.0) || !std::isfinite(u.rho) || !std::isfinite(u.mx) ||
        !std::isfinite(u.my)) {
      throw SolverAbort("nonfinite or nonpositive state at cell index " +
                        std::to_string(k) + ", t = " + std::to_string(f.time));
    }
    pc.prim[k] = cons_to_prim(u);
    pc.c[k] = sound_speed(u.rho, gas);
  }
  return pc;
}

[[noreturn]] void rethrow_at_edge(const std::exception& e, char axis, int i, int j,
                                  double t) {
  throw SolverAbort(std::string(e.what()) + " [" + axis + "-edge (" +
                    std::to_string(i) + "," + std::to_string(j) + "), t = " +
                    std::to_string(t) + "]");
}

}  // namespace

double cfl_dt(const FieldGrid& field, const SchemeSpec& scheme, const GasModel& gas) {
  PrimCache pc = make_cache(field, gas);
  const int nx = field.geom.nx;
  const int ny = field.geom.ny;
  double t = field.time;
  bool sim = field.mode == Mode::similarity;
  double wx = sim ? field.geom.dx * t : field.geom.dx;
  double wy = sim ? field.geom.dy * t : field.geom.dy;

  double max_rate = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      double s = sim ? field.geom.xface(i) : 0.0;
      double rl = (std::abs(pc.at(i - 1, j).ux - s) + pc.cs(i - 1, j)) / wx;
      double rr = (std::abs(pc.at(i, j).ux - s) + pc.cs(i, j)) / wx;
      max_rate = std::max(max_rate, std::max(rl, rr));
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double s = sim ? field.geom.yface(j) : 0.0;
      double rb = (std::abs(pc.at(i, j - 1).uy - s) + pc.cs(i, j - 1)) / wy;
      double rt = (std::abs(pc.at(i, j).uy - s) + pc.cs(i, j)) / wy;
      max_rate = std::max(max_rate, std::max(rb, rt));
    }
  }
  if (!(max_rate > 0.0) || !std::isfinite(max_rate)) {
    throw SolverAbort("cfl_dt: nonfinite wave speeds");
  }
  return scheme.cfl / max_rate;
}

namespace {

StepReport do_step(FieldGrid& field, const BoundarySpec& bc, const TriggerSpec* trigger,
                   const SchemeSpec& scheme, double dt, EdgeStates* record,
                   const GasModel& gas) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("step: invalid dt");
  if (scheme.cfl <= 0.0 || scheme.cfl > 0.5) {
    throw UsageError("step: cfl outside (0, 0.5]");
  }
  fill_ghosts(field, bc, trigger);
  PrimCache pc = make_cache(field, gas);

  const int nx = field.geom.nx;
  const int ny = field.geom.ny;
  const double dx = field.geom.dx;
  const double dy = field.geom.dy;
  const bool sim = field.mode == Mode::similarity;
  const double t = field.time;
  const double tm = sim ? t + 0.5 * dt : t;

  if (record) {
    record->nx = nx;
    record->ny = ny;
    record->t_before = t;
    record->dt = dt;
    record->xstar.assign(static_cast<size_t>(nx + 1) * ny, Primitive{});
    record->ystar.assign(static_cast<size_t>(nx) * (ny + 1), Primitive{});
    if (scheme.flux != FluxKind::godunov) {
      throw UsageError("step: entropy recording requires the Godunov flux");
    }
  }

  std::vector<EdgeFlux> fx(static_cast<size_t>(nx + 1) * ny);
  std::vector<EdgeFlux> fy(static_cast<size_t>(nx) * (ny + 1));
  double max_speed = 0.0;

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      double s = sim ? field.geom.xface(i) : 0.0;
      const Primitive& l = pc.at(i - 1, j);
      const Primitive& r = pc.at(i, j);
      max_speed = std::max(max_speed, std::max(std::abs(l.ux - s) + pc.cs(i - 1, j),
                                               std::abs(r.ux - s) + pc.cs(i, j)));
      size_t e = static_cast<size_t>(j) * (nx + 1) + i;
      try {
        if (scheme.flux == FluxKind::rusanov) {
          fx[e] = rusanov_flux(l, r, 1.0, 0.0, s, gas);
        } else {
          double theta = std::max(scheme.blend.at(i - 1, j), scheme.blend.at(i, j));
          if (record) {
            Primitive* star = &record->xstar[e];
            fx[e] = godunov_flux_sampled(l, r, 1.0, 0.0, s, gas, star);
            if (theta > 0.0) {
              EdgeFlux ru = rusanov_flux(l, r, 1.0, 0.0, s, gas);
              fx[e] = {(1.0 - theta) * fx[e].frho + theta * ru.frho,
                       (1.0 - theta) * fx[e].fmx + theta * ru.fmx,
                       (1.0 - theta) * fx[e].fmy + theta * ru.fmy};
            }
          } else {
            fx[e] = blended_flux(l, r, 1.0, 0.0, s, theta, gas);
          }
        }
      } catch (const SolverAbort&) {
        throw;
      } catch (const std::exception& ex) {
        rethrow_at_edge(ex, 'x', i, j, t);
      }
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double s = sim ? field.geom.yface(j) : 0.0;
      const Primitive& b = pc.at(i, j - 1);
      const Primitive& u = pc.at(i, j);
      max_speed = std::max(max_speed, std::max(std::abs(b.uy - s) + pc.cs(i, j - 1),
                                               std::abs(u.uy - s) + pc.cs(i, j)));
      size_t e = static_cast<size_t>(j) * nx + i;
      try {
        if (scheme.flux == FluxKind::rusanov) {
          fy[e] = rusanov_flux(b, u, 0.0, 1.0, s, gas);
        } else {
          double theta = std::max(scheme.blend.at(i, j - 1), scheme.blend.at(i, j));
          if (record) {
            Primitive* star = &record->ystar[e];
            fy[e] = godunov_flux_sampled(b, u, 0.0, 1.0, s, gas, star);
            if (theta > 0.0) {
              EdgeFlux ru = rusanov_flux(b, u, 0.0, 1.0, s, gas);
              fy[e] = {(1.0 - theta) * fy[e].frho + theta * ru.frho,
                       (1.0 - theta) * fy[e].fmx + theta * ru.fmx,
                       (1.0 - theta) * fy[e].fmy + theta * ru.fmy};
            }
          } else {
            fy[e] = blended_flux(b, u, 0.0, 1.0, s, theta, gas);
          }
        }
      } catch (const SolverAbort&) {
        throw;
      } catch (const std::exception& ex) {
        rethrow_at_edge(ex, 'y', i, j, t);
      }
    }
  }

  const double len_x = sim ? dy * tm : dy;
  const double len_y = sim ? dx * tm : dx;
  const double vol_old = sim ? dx * dy * t * t : dx * dy;
  const double vol_new = sim ? dx * dy * (t + dt) * (t + dt) : dx * dy;

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const EdgeFlux& fw = fx[static_cast<size_t>(j) * (nx + 1) + i];
      const EdgeFlux& fe = fx[static_cast<size_t>(j) * (nx + 1) + i + 1];
      const EdgeFlux& fs = fy[static_cast<size_t>(j) * nx + i];
      const EdgeFlux& fn = fy[static_cast<size_t>(j + 1) * nx + i];
      // Fixed W,E,S,N combination so mirrored configurations stay bit-exact.
      double arho = fe.frho - fw.frho, amx = fe.fmx - fw.fmx, amy = fe.fmy - fw.fmy;
      double brho = fn.frho - fs.frho, bmx = fn.fmx - fs.fmx, bmy = fn.fmy - fs.fmy;
      Conservative& cc = field.at(i, j);
      Conservative next;
      next.rho = (vol_old * cc.rho - dt * (len_x * arho + len_y * brho)) / vol_new;
      next.mx = (vol_old * cc.mx - dt * (len_x * amx + len_y * bmx)) / vol_new;
      next.my = (vol_old * cc.my - dt * (len_x * amy + len_y * bmy)) / vol_new;
      if (!(next.rho > 0.0) || !std::isfinite(next.rho) || !std::isfinite(next.mx) ||
          !std::isfinite(next.my)) {
        throw SolverAbort("step: state became invalid at cell (" + std::to_string(i) +
                          "," + std::to_string(j) + "), t = " + std::to_string(t));
      }
      cc = next;
    }
  }
  field.time = t + dt;

  StepReport rep;
  rep.dt = dt;
  rep.max_wave_speed = max_speed;
  EdgeFlux bt;
  for (int j = 0; j < ny; ++j) {
    const EdgeFlux& fw = fx[static_cast<size_t>(j) * (nx + 1)];
    const EdgeFlux& fe = fx[static_cast<size_t>(j) * (nx + 1) + nx];
    bt += len_x * fe;
    bt += -len_x * fw;
  }
  for (int i = 0; i < nx; ++i) {
    const EdgeFlux& fs = fy[static_cast<size_t>(i)];
    const EdgeFlux& fn = fy[static_cast<size_t>(ny) * nx + i];
    bt += len_y * fn;
    bt += -len_y * fs;
  }
  rep.boundary_total = bt;
  return rep;
}

}  // namespace

StepReport step_standard(FieldGrid& field, const BoundarySpec& bc,
                         const TriggerSpec* trigger, const SchemeSpec& scheme,
                         double dt, const GasModel& gas, EdgeStates* record) {
  if (field.mode != Mode::standard) throw UsageError("step_standard: wrong mode");
  return do_step(field, bc, trigger, scheme, dt, record, gas);
}

StepReport step_similarity(FieldGrid& field, const BoundarySpec& bc,
                           const TriggerSpec* trigger, const SchemeSpec& scheme,
                           double dt, const GasModel& gas, EdgeStates* record) {
  if (field.mode != Mode::similarity) throw UsageError("step_similarity: wrong mode");
  return do_step(field, bc, trigger, scheme, dt, record, gas);
}

StepReport step(FieldGrid& field, const BoundarySpec& bc, const TriggerSpec* trigger,
                const SchemeSpec& scheme, double dt, const GasModel& gas,
                EdgeStates* record) {
  return do_step(field, bc, trigger, scheme, dt, record, gas);
}

}  // namespace carb

#include "carb/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace carb {

double entropy_density(const Primitive& u, const GasModel& gas) {
  return 0.5 * u.rho * (u.ux * u.ux + u.uy * u.uy) +
         gas.kappa * std::pow(u.rho, gas.gamma) / (gas.gamma - 1.0);
}

double entropy_flux_n(const Primitive& u, double nx, double ny, const GasModel& gas) {
  double un = u.ux * nx + u.uy * ny;
  return (entropy_density(u, gas) + pressure(u.rho, gas)) * un;
}

EntropyField entropy_production(const FieldGrid& before, const FieldGrid& after,
                                const EdgeStates& edges, const GasModel& gas) {
  const int nx = before.geom.nx;
  const int ny = before.geom.ny;
  if (edges.nx != nx || edges.ny != ny || edges.xstar.empty()) {
    throw UsageError("entropy_production: edge fan data missing or mismatched");
  }
  if (after.geom.nx != nx || after.geom.ny != ny) {
    throw UsageError("entropy_production: grid mismatch");
  }
  const double dt = edges.dt;
  const double t = edges.t_before;
  const bool sim = before.mode == Mode::similarity;
  const double tm = sim ? t + 0.5 * dt : t;
  const double dx = before.geom.dx;
  const double dy = before.geom.dy;
  const double len_x = sim ? dy * tm : dy;
  const double len_y = sim ? dx * tm : dx;
  const double vol_old = sim ? dx * dy * t * t : dx * dy;
  const double vol_new = sim ? dx * dy * (t + dt) * (t + dt) : dx * dy;

  // Entropy flux through an edge, relative to the edge motion.
  auto edge_term = [&](const Primitive& star, double n_x, double n_y, double s) {
    return entropy_flux_n(star, n_x, n_y, gas) - s * entropy_density(star, gas);
  };

  EntropyField out;
  out.production.assign(static_cast<size_t>(nx) * ny, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double sw = sim ? before.geom.xface(i) : 0.0;
      double se = sim ? before.geom.xface(i + 1) : 0.0;
      double ss = sim ? before.geom.yface(j) : 0.0;
      double sn = sim ? before.geom.yface(j + 1) : 0.0;
      const Primitive& w = edges.xstar[static_cast<size_t>(j) * (nx + 1) + i];
      const Primitive& e = edges.xstar[static_cast<size_t>(j) * (nx + 1) + i + 1];
      const Primitive& s = edges.ystar[static_cast<size_t>(j) * nx + i];
      const Primitive& n = edges.ystar[static_cast<size_t>(j + 1) * nx + i];
      double flux = len_x * (edge_term(e, 1.0, 0.0, se) - edge_term(w, 1.0, 0.0, sw)) +
                    len_y * (edge_term(n, 0.0, 1.0, sn) - edge_term(s, 0.0, 1.0, ss));
      double eta0 = entropy_density(cons_to_prim(before.at(i, j)), gas);
      double eta1 = entropy_density(cons_to_prim(after.at(i, j)), gas);
      double prod = (vol_new * eta1 - vol_old * eta0) / dt + flux;
      out.production[static_cast<size_t>(j) * nx + i] = prod;
      double tol = 1e-10 * (vol_new / dt) * std::max(eta0, eta1);
      out.max_production = std::max(out.max_production, prod);
      out.max_margin = std::max(out.max_margin, prod / tol);
    }
  }
  return out;
}

PerturbationMetrics perturbation_metrics(const FieldGrid& field,
                                         const FieldGrid& reference, double eps_c) {
  const GridGeometry& g = field.geom;
  const GridGeometry& r = reference.geom;
  if (g.nx != r.nx || g.ny != r.ny || g.x_min != r.x_min || g.y_min != r.y_min ||
      g.dx != r.dx || g.dy != r.dy) {
    throw UsageError("perturbation_metrics: grid mismatch");
  }
  double vol = cell_volume(field, field.time);
  PerturbationMetrics m;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double ux = field.at(i, j).mx / field.at(i, j).rho;
      double ux_ref = reference.at(i, j).mx / reference.at(i, j).rho;
      m.l1 += std::abs(ux - ux_ref) * vol;
      // The extent tracks the transverse velocity perturbation: any 1D
      // shock-normal transient (e.g. a dissipative scheme smearing the
      // discrete shock) leaves uy untouched, a carbuncle does not.
      double uy = field.at(i, j).my / field.at(i, j).rho;
      double uy_ref = reference.at(i, j).my / reference.at(i, j).rho;
      double d = std::abs(uy - uy_ref);
      if (d > eps_c) {
        if (m.extent.empty) {
          m.extent = {false, g.xface(i), g.xface(i + 1), g.yface(j), g.yface(j + 1)};
        } else {
          m.extent.xmin = std::min(m.extent.xmin, g.xface(i));
          m.extent.xmax = std::max(m.extent.xmax, g.xface(i + 1));
          m.extent.ymin = std::min(m.extent.ymin, g.yface(j));
          m.extent.ymax = std::max(m.extent.ymax, g.yface(j + 1));
        }
      }
    }
  }
  return m;
}

GrowthFit growth_rate(std::span<const double> t, std::span<const double> h) {
  if (t.size() != h.size() || t.size() < 3) {
    throw UsageError("growth_rate: need at least 3 samples");
  }
  size_t n = t.size();
  double tbar = 0.0, hbar = 0.0;
  for (size_t k = 0; k < n; ++k) {
    tbar += t[k];
    hbar += h[k];
  }
  tbar /= n;
  hbar /= n;
  double stt = 0.0, sth = 0.0, shh = 0.0;
  for (size_t k = 0; k < n; ++k) {
    stt += (t[k] - tbar) * (t[k] - tbar);
    sth += (t[k] - tbar) * (h[k] - hbar);
    shh += (h[k] - hbar) * (h[k] - hbar);
  }
  if (stt == 0.0) throw UsageError("growth_rate: degenerate time window");
  GrowthFit fit;
  fit.rate = sth / stt;
  fit.r_squared = (shh == 0.0) ? 1.0 : (sth * sth) / (stt * shh);
  return fit;
}

GrowthFit growth_rate(std::span<const DiagnosticsRecord> records) {
  std::vector<double> t, h;
  t.reserve(records.size());
  h.reserve(records.size());
  for (const auto& r : records) {
    t.push_back(r.time);
    h.push_back(r.extent_height);
  }
  return growth_rate(std::span<const double>(t), std::span<const double>(h));
}

std::vector<double> shock_front(const FieldGrid& field) {
  const GridGeometry& g = field.geom;
  std::vector<double> front(g.ny, std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < g.ny; ++j) {
    double scale = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      scale = std::max(scale, std::abs(field.at(i, j).mx / field.at(i, j).rho));
    }
    int best = -1;
    double best_drop = 0.0;
    auto drop = [&](int i) {
      double ul = field.at(i, j).mx / field.at(i, j).rho;
      double ur = field.at(i + 1, j).mx / field.at(i + 1, j).rho;
      return ul - ur;
    };
    for (int i = 0; i + 1 < g.nx; ++i) {
      double d = drop(i);
      if (d > best_drop) {
        best_drop = d;
        best = i;
      }
    }
    if (best < 0 || best_drop <= 1e-9 * std::max(scale, 1e-300)) continue;
    // Sub-cell refinement: centroid of the face positions of the steepest
    // drop and its neighbors, weighted by the (clamped) drops.
    double wsum = 0.0, xsum = 0.0;
    for (int i = std::max(0, best - 1); i <= std::min(g.nx - 2, best + 1); ++i) {
      double w = std::max(drop(i), 0.0);
      wsum += w;
      xsum += w * g.xface(i + 1);
    }
    front[j] = xsum / wsum;
  }
  return front;
}

std::optional<double> tip_angle(const std::vector<double>& front,
                                const GridGeometry& geom, int k) {
  if (k < 2) throw UsageError("tip_angle: window too small");
  int tip_row = -1;
  double tip_x = std::numeric_limits<double>::infinity();
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < static_cast<int>(front.size()); ++j) {
    if (std::isnan(front[j])) continue;
    fmin = std::min(fmin, front[j]);
    fmax = std::max(fmax, front[j]);
    if (front[j] < tip_x) {
      tip_x = front[j];
      tip_row = j;
    }
  }
  if (tip_row < 0) return std::nullopt;
  if (fmax - fmin < 0.5 * geom.dx) return std::nullopt;  // straight front

  // Fit x = a + m*y over the window above the tip, skipping missing rows.
  std::vector<double> ys, xs;
  for (int j = tip_row; j <= std::min<int>(tip_row + k, front.size() - 1); ++j) {
    if (std::isnan(front[j])) continue;
    ys.push_back(geom.yc(j));
    xs.push_back(front[j]);
  }
  if (ys.size() < 3) return std::nullopt;
  double yb = 0.0, xb = 0.0;
  for (size_t q = 0; q < ys.size(); ++q) {
    yb += ys[q];
    xb += xs[q];
  }
  yb /= ys.size();
  xb /= xs.size();
  double syy = 0.0, syx = 0.0;
  for (size_t q = 0; q < ys.size(); ++q) {
    syy += (ys[q] - yb) * (ys[q] - yb);
    syx += (ys[q] - yb) * (xs[q] - xb);
  }
  if (syy == 0.0) return std::nullopt;
  double m = syx / syy;  // dx/dy along the front
  return std::atan2(1.0, m);
}

namespace {

// Bilinear interpolation of ux at a physical point, clamped to the cell-center
// hull.
double sample_ux(const FieldGrid& f, double x, double y) {
  const GridGeometry& g = f.geom;
  double fi = (x - g.x_min) / g.dx - 0.5;
  double fj = (y - g.y_min) / g.dy - 0.5;
  fi = std::clamp(fi, 0.0, static_cast<double>(g.nx - 1));
  fj = std::clamp(fj, 0.0, static_cast<double>(g.ny - 1));
  int i0 = std::min(static_cast<int>(fi), g.nx - 2);
  int j0 = std::min(static_cast<int>(fj), g.ny - 2);
  if (g.nx == 1) i0 = 0;
  if (g.ny == 1) j0 = 0;
  double a = fi - i0;
  double b = fj - j0;
  auto ux = [&](int i, int j) {
    const Conservative& c = f.at(std::min(i, g.nx - 1), std::min(j, g.ny - 1));
    return c.mx / c.rho;
  };
  return (1 - a) * (1 - b) * ux(i0, j0) + a * (1 - b) * ux(i0 + 1, j0) +
         (1 - a) * b * ux(i0, j0 + 1) + a * b * ux(i0 + 1, j0 + 1);
}

}  // namespace

double self_similarity_residual(const FieldGrid& a, const FieldGrid& b, double x0,
                                double y0, double t_origin) {
  double ta = a.time - t_origin;
  double tb = b.time - t_origin;
  if (!(ta > 0.0) || !(tb > 0.0)) throw UsageError("self_similarity_residual: times must exceed the origin time");
  if (&a == &b) return 0.0;

  auto box = [&](const FieldGrid& f, double tau, double& xi0, double& xi1,
                 double& et0, double& et1) {
    xi0 = (f.geom.x_min - x0) / tau;
    xi1 = (f.geom.x_max - x0) / tau;
    et0 = (f.geom.y_min - y0) / tau;
    et1 = (f.geom.y_max - y0) / tau;
  };
  double ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
  box(a, ta, ax0, ax1, ay0, ay1);
  box(b, tb, bx0, bx1, by0, by1);
  double xi0 = std::max(ax0, bx0), xi1 = std::min(ax1, bx1);
  double et0 = std::max(ay0, by0), et1 = std::min(ay1, by1);
  if (!(xi1 > xi0) || !(et1 > et0)) {
    throw UsageError("self_similarity_residual: empty xi overlap");
  }

  double dxi = b.geom.dx / tb;
  double det = b.geom.dy / tb;
  int nxi = std::max(2, static_cast<int>((xi1 - xi0) / dxi));
  int net = std::max(2, static_cast<int>((et1 - et0) / det));
  dxi = (xi1 - xi0) / nxi;
  det = (et1 - et0) / net;

  double num = 0.0, den = 0.0;
  for (int j = 0; j < net; ++j) {
    double eta = et0 + (j + 0.5) * det;
    for (int i = 0; i < nxi; ++i) {
      double xi = xi0 + (i + 0.5) * dxi;
      double ua = sample_ux(a, x0 + xi * ta, y0 + eta * ta);
      double ub = sample_ux(b, x0 + xi * tb, y0 + eta * tb);
      num += std::abs(ua - ub);
      den += std::abs(ua);
    }
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace carb

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "carb/solver.hpp"

namespace carb {

// Total energy density, the convex entropy of the isentropic system.
double entropy_density(const Primitive& u, const GasModel& gas);
// Entropy flux component q(U)·n with q = (eta + p) u.
double entropy_flux_n(const Primitive& u, double nx, double ny, const GasModel& gas);

// Per-cell discrete entropy production of one step, and its maximum relative
// to the per-cell rounding tolerance (margin <= 1 means the discrete entropy
// inequality held everywhere).
struct EntropyField {
  std::vector<double> production;  // nx*ny, row-major j then i
  double max_production = -std::numeric_limits<double>::infinity();
  double max_margin = -std::numeric_limits<double>::infinity();
};

EntropyField entropy_production(const FieldGrid& before, const FieldGrid& after,
                                const EdgeStates& edges, const GasModel& gas);

struct Extent {
  bool empty = true;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double height() const { return empty ? 0.0 : ymax - ymin; }
};

struct PerturbationMetrics {
  double l1 = 0.0;
  Extent extent;
};

// Volume-weighted L1 norm of ux - ux_reference, and the bounding box of
// |uy - uy_reference| > eps_c (the carbuncle extent); reference on the same
// grid.
PerturbationMetrics perturbation_metrics(const FieldGrid& field,
                                         const FieldGrid& reference, double eps_c);

struct GrowthFit {
  double rate = 0.0;
  double r_squared = 1.0;
};

// Least-squares linear fit of h vs t; r^2 is 1 by convention for a
// zero-variance response.
GrowthFit growth_rate(std::span<const double> t, std::span<const double> h);

// Per-row shock abscissa (steepest single-cell ux drop, sub-cell refined);
// NaN where a row has no transition.
std::vector<double> shock_front(const FieldGrid& field);

// Half-opening angle at the front's leftmost point, from a least-squares line
// over k rows above the tip. Empty when the front is straight or too sparse.
std::optional<double> tip_angle(const std::vector<double>& front,
                                const GridGeometry& geom, int k = 8);

// Volume-weighted relative L1 difference of ux after mapping both fields to
// xi = (x - x0)/(t - t_origin). Fields must be standard-mode snapshots of one
// run at times t1 <= t2.
double self_similarity_residual(const FieldGrid& a, const FieldGrid& b,
                                double x0 = 0.0, double y0 = 0.0,
                                double t_origin = 0.0);

struct DiagnosticsRecord {
  double time = 0.0;
  double l1_perturbation = 0.0;
  Extent extent;
  double extent_height = 0.0;
  // Max per-cell entropy production over the steps since the last record
  // (NaN when entropy diagnostics are off).
  double max_entropy_production = std::numeric_limits<double>::quiet_NaN();
  // Max production/tolerance ratio over the same steps.
  double entropy_margin = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> front;
  std::optional<double> tip_angle_beta;
};

GrowthFit growth_rate(std::span<const DiagnosticsRecord> records);

}  // namespace carb

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mlurn/rational.hpp"

namespace mlurn::replicator {

// Mean-field drift of the urn process:
//   f_i(p) = 2 (1 - r) p_i (margins p)_i + r (1/d - p_i)
// Components sum to zero on the simplex; f_i >= -2 p_i, so g = p + f/2
// maps the simplex into itself.
struct VectorField {
  Matrix margins;
  double r = 0.0;

  int d() const { return static_cast<int>(margins.rows()); }
};

Vector eval_f(const VectorField& vf, const Vector& p);
Vector eval_g(const VectorField& vf, const Vector& p);
Matrix jacobian_f(const VectorField& vf, const Vector& p);

struct OdeTrajectory {
  double h = 0.0;   // accepted step size (after any automatic halving)
  double r = 0.0;
  std::vector<double> t;
  std::vector<Vector> y;
  std::vector<double> entropy;  // D(entropy_ref | y), when a reference was given
  Vector entropy_ref;
};

struct IntegrateOptions {
  double escape_tol = 1e-6;  // simplex-escape guard before renormalization
  int max_halvings = 24;
  std::int64_t store_stride = 1;
  std::optional<Vector> entropy_ref;
};

// Classical RK4 with a per-step renormalization guard. If a step leaves the
// simplex by more than escape_tol the whole integration restarts with h/2.
OdeTrajectory integrate(const VectorField& vf, const Vector& p0, double t_end, double h,
                        const IntegrateOptions& opts = {});

struct FixedPoint {
  Vector p;
  double residual;  // |f(p)|_1
  double r;
  double stationary_residual;  // max_i |2(1-r)(margins p)_i - r (1 - 1/(d p_i))|
};

struct FixedPointOptions {
  double ode_tol = 1e-12;
  double h = 0.01;
  double t_max = 2e5;
  int newton_iterations = 12;
  std::optional<Vector> start;  // default: uniform
};

// The unique zero of f for r > 0, found by integrating from the start until
// |f|_1 <= ode_tol (convergence from any interior start is guaranteed), then
// sharpened by a projected Newton polish.
FixedPoint fixed_point(const VectorField& vf, const FixedPointOptions& opts = {});

// Fixed points along a decreasing mutation schedule; the path approaches the
// maximal-lottery set as r -> 0.
std::vector<FixedPoint> ml_limit_path(const Matrix& margins, const std::vector<double>& schedule,
                                      const FixedPointOptions& opts = {});

// Relative entropy sum_i p_i ln(p_i / q_i); zero-probability terms of p drop
// out, and the result is +inf if q vanishes somewhere p does not.
double relative_entropy(const Vector& p, const Vector& q);

struct EntropyDiagnostics {
  std::vector<double> d_series;
  std::vector<double> slope;       // finite differences, one fewer entry
  std::vector<double> rate_bound;  // -(r / (d sqrt(d))) |p* - y|_1^2
  bool monotone = false;           // nonincreasing up to 1e-9 slack
  bool slope_bounded = false;      // slope <= bound + slack everywhere
  double max_monotonicity_violation = 0.0;
  double max_bound_violation = 0.0;
};

EntropyDiagnostics entropy_diagnostics(const OdeTrajectory& traj, const Vector& p_star,
                                       double relative_slack = 0.1, double absolute_slack = 1e-9);

}  // namespace mlurn::replicator

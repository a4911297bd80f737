#include "mlurn/replicator.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mlurn/errors.hpp"

namespace mlurn::replicator {

Vector eval_f(const VectorField& vf, const Vector& p) {
  if (p.size() != vf.margins.rows()) throw std::invalid_argument("dimension mismatch");
  const double d = static_cast<double>(vf.d());
  return 2.0 * (1.0 - vf.r) * p.cwiseProduct(vf.margins * p) +
         vf.r * (Vector::Constant(p.size(), 1.0 / d) - p);
}

Vector eval_g(const VectorField& vf, const Vector& p) { return p + 0.5 * eval_f(vf, p); }

Matrix jacobian_f(const VectorField& vf, const Vector& p) {
  const int d = vf.d();
  Vector mp = vf.margins * p;
  Matrix j = 2.0 * (1.0 - vf.r) * (p.asDiagonal() * vf.margins);
  for (int i = 0; i < d; ++i) j(i, i) += 2.0 * (1.0 - vf.r) * mp(i) - vf.r;
  return j;
}

namespace {

bool rk4_pass(const VectorField& vf, const Vector& p0, double t_end, double h,
              const IntegrateOptions& opts, OdeTrajectory& out) {
  const int d = vf.d();
  const std::int64_t steps = static_cast<std::int64_t>(std::ceil(t_end / h - 1e-9));
  out.t.clear();
  out.y.clear();
  out.entropy.clear();
  out.h = h;
  out.r = vf.r;

  Vector y = p0;
  auto store = [&](double t, const Vector& state) {
    out.t.push_back(t);
    out.y.push_back(state);
    if (opts.entropy_ref) out.entropy.push_back(relative_entropy(*opts.entropy_ref, state));
  };
  store(0.0, y);

  for (std::int64_t k = 1; k <= steps; ++k) {
    Vector k1 = eval_f(vf, y);
    Vector k2 = eval_f(vf, y + 0.5 * h * k1);
    Vector k3 = eval_f(vf, y + 0.5 * h * k2);
    Vector k4 = eval_f(vf, y + h * k3);
    Vector next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (next.minCoeff() < -opts.escape_tol || std::abs(next.sum() - 1.0) > opts.escape_tol)
      return false;  // caller halves h
    for (int i = 0; i < d; ++i)
      if (next(i) < 0) next(i) = 0;
    next /= next.sum();
    y = next;
    if (k % opts.store_stride == 0 || k == steps) store(k * h, y);
  }
  return true;
}

}  // namespace

OdeTrajectory integrate(const VectorField& vf, const Vector& p0, double t_end, double h,
                        const IntegrateOptions& opts) {
  if (h <= 0) throw std::invalid_argument("step size must be positive");
  if (t_end < 0) throw std::invalid_argument("negative end time");
  if (p0.size() != vf.margins.rows()) throw std::invalid_argument("dimension mismatch");
  if (p0.minCoeff() < -1e-12 || std::abs(p0.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("start state not in the simplex");
  if (opts.entropy_ref && opts.entropy_ref->size() != p0.size())
    throw std::invalid_argument("entropy reference dimension mismatch");

  OdeTrajectory out;
  if (vf.margins.rows() != vf.margins.cols() || !is_skew_symmetric(vf.margins, 1e-9))
    throw std::invalid_argument("margin matrix must be skew-symmetric");
  double step = h;
  for (int attempt = 0; attempt <= opts.max_halvings; ++attempt) {
    if (rk4_pass(vf, p0, t_end, step, opts, out)) return out;
    step /= 2;
  }
  throw NonConvergenceError("RK4 simplex-escape guard kept tripping after halving the step " +
                            std::to_string(opts.max_halvings) + " times");
}

FixedPoint fixed_point(const VectorField& vf, const FixedPointOptions& opts) {
  if (vf.r <= 0)
    throw std::invalid_argument("fixed point requires r > 0 (at r = 0 every maximal lottery "
                                "is a rest point)");
  const int d = vf.d();
  Vector y = opts.start ? *opts.start : Vector::Constant(d, 1.0 / d);
  if (std::abs(y.sum() - 1.0) > 1e-9 || y.minCoeff() < 0)
    throw std::invalid_argument("start state not in the simplex");

  // Integrate in chunks until the residual target is met.
  const double chunk = 25.0;
  double t = 0;
  double res = eval_f(vf, y).lpNorm<1>();
  while (res > opts.ode_tol) {
    if (t > opts.t_max)
      throw NonConvergenceError("fixed-point integration exceeded its time budget at residual " +
                                std::to_string(res));
    IntegrateOptions iopts;
    iopts.store_stride = std::numeric_limits<std::int64_t>::max();
    OdeTrajectory seg = integrate(vf, y, chunk, opts.h, iopts);
    y = seg.y.back();
    t += chunk;
    res = eval_f(vf, y).lpNorm<1>();
  }

  // Projected Newton polish on the tangent space {sum = 0}.
  for (int it = 0; it < opts.newton_iterations; ++it) {
    Vector f = eval_f(vf, y);
    if (f.lpNorm<1>() <= 1e-15 * d) break;
    Matrix a(d + 1, d);
    a.topRows(d) = jacobian_f(vf, y);
    a.bottomRows(1).setOnes();
    Vector rhs(d + 1);
    rhs.head(d) = -f;
    rhs(d) = 0;
    Vector delta = a.colPivHouseholderQr().solve(rhs);
    double scale = 1.0;
    while (scale > 1e-8 && (y + scale * delta).minCoeff() <= 0) scale /= 2;
    Vector candidate = y + scale * delta;
    if (eval_f(vf, candidate).lpNorm<1>() < eval_f(vf, y).lpNorm<1>()) {
      y = candidate / candidate.sum();
    } else {
      break;
    }
  }

  FixedPoint fp;
  fp.p = y;
  fp.r = vf.r;
  fp.residual = eval_f(vf, y).lpNorm<1>();
  Vector mp = vf.margins * y;
  double worst = 0;
  for (int i = 0; i < d; ++i)
    worst = std::max(worst,
                     std::abs(2.0 * (1.0 - vf.r) * mp(i) - vf.r * (1.0 - 1.0 / (y(i) * d))));
  fp.stationary_residual = worst;
  return fp;
}

std::vector<FixedPoint> ml_limit_path(const Matrix& margins, const std::vector<double>& schedule,
                                      const FixedPointOptions& opts) {
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] >= schedule[i - 1])
      throw std::invalid_argument("mutation schedule must be strictly decreasing");
  std::vector<FixedPoint> path;
  for (double r : schedule) {
    if (r <= 0) throw std::invalid_argument("mutation schedule must be positive");
    path.push_back(fixed_point(VectorField{margins, r}, opts));
  }
  return path;
}

double relative_entropy(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("dimension mismatch");
  double d = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0) continue;
    if (q(i) <= 0) return std::numeric_limits<double>::infinity();
    d += p(i) * std::log(p(i) / q(i));
  }
  return d;
}

EntropyDiagnostics entropy_diagnostics(const OdeTrajectory& traj, const Vector& p_star,
                                       double relative_slack, double absolute_slack) {
  if (traj.y.size() < 2) throw std::invalid_argument("trajectory too short");
  if (p_star.minCoeff() <= 0)
    throw std::invalid_argument("entropy reference must be strictly positive");
  const int d = static_cast<int>(p_star.size());
  const double rate = traj.r / (d * std::sqrt(static_cast<double>(d)));

  EntropyDiagnostics diag;
  diag.d_series.reserve(traj.y.size());
  for (const auto& y : traj.y) {
    for (int i = 0; i < d; ++i)
      if (y(i) <= 0 && p_star(i) > 0)
        throw std::domain_error(
            "trajectory hit the boundary; relative entropy undefined (integration bug?)");
    diag.d_series.push_back(relative_entropy(p_star, y));
  }

  diag.monotone = true;
  diag.slope_bounded = true;
  for (std::size_t k = 0; k + 1 < traj.y.size(); ++k) {
    double dt = traj.t[k + 1] - traj.t[k];
    double slope = (diag.d_series[k + 1] - diag.d_series[k]) / dt;
    double bound = -rate * std::pow((p_star - traj.y[k]).lpNorm<1>(), 2);
    diag.slope.push_back(slope);
    diag.rate_bound.push_back(bound);
    double mono_violation = diag.d_series[k + 1] - diag.d_series[k];
    diag.max_monotonicity_violation = std::max(diag.max_monotonicity_violation, mono_violation);
    if (mono_violation > 1e-9) diag.monotone = false;
    double allowed = bound + relative_slack * std::abs(bound) + absolute_slack;
    diag.max_bound_violation = std::max(diag.max_bound_violation, slope - allowed);
    if (slope > allowed) diag.slope_bounded = false;
  }
  return diag;
}

}  // namespace mlurn::replicator

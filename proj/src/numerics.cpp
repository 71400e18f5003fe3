#include "qbertrand/numerics.hpp"

#include "qbertrand/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbertrand::numerics {

namespace {

double checked(const ScalarFn& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "function is not finite at x=" << x;
    throw EvaluationError(os.str(), x);
  }
  return v;
}

double max_norm(const Vec2& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

bool finite(const Vec2& v) { return std::isfinite(v[0]) && std::isfinite(v[1]); }

}  // namespace

void BracketSearchConfig::validate() const {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(ErrorCode::InvalidArgument, "bracket search needs finite lower < upper");
  }
  if (grid_points < 3) {
    throw Error(ErrorCode::InvalidArgument, "bracket search needs at least 3 grid points");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bracket search tolerance must be positive");
  }
}

MaxResult golden_max(const ScalarFn& f, const BracketSearchConfig& cfg) {
  cfg.validate();
  const auto grid = linspace(cfg.lower, cfg.upper, cfg.grid_points);

  std::size_t best = 0;
  double best_value = checked(f, grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = checked(f, grid[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  MaxResult out;
  out.boundary = best == 0 || best + 1 == grid.size();

  double lo = grid[best == 0 ? 0 : best - 1];
  double hi = grid[std::min(best + 1, grid.size() - 1)];

  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = checked(f, x1);
  double f2 = checked(f, x2);
  while (hi - lo > cfg.tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = checked(f, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = checked(f, x1);
    }
  }

  const double mid = 0.5 * (lo + hi);
  const double mid_value = checked(f, mid);
  if (mid_value >= best_value) {
    out.argmax = mid;
    out.value = mid_value;
  } else {
    out.argmax = grid[best];
    out.value = best_value;
  }
  return out;
}

std::string_view to_string(RootStatus s) {
  switch (s) {
    case RootStatus::Converged: return "converged";
    case RootStatus::NonConvergence: return "non-convergence";
    case RootStatus::Singular: return "singular-jacobian";
    case RootStatus::NonFinite: return "non-finite-residual";
  }
  return "unknown";
}

RootResult damped_root_2d(const VectorFn2& F, const Vec2& seed, const RootConfig& cfg) {
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0) || cfg.max_iters < 1 || !(cfg.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "root config needs damping in (0,1], max_iters >= 1, tol > 0");
  }

  Vec2 x = seed;
  Vec2 fx = F(x);
  if (!finite(fx)) {
    std::ostringstream os;
    os << "residual is not finite at seed (" << seed[0] << ", " << seed[1] << ")";
    throw EvaluationError(os.str(), seed[0]);
  }

  RootResult out;
  for (int it = 0; it <= cfg.max_iters; ++it) {
    out.root = x;
    out.residual = max_norm(fx);
    out.iterations = it;
    if (out.residual < cfg.tol) {
      out.status = RootStatus::Converged;
      return out;
    }
    if (it == cfg.max_iters) break;

    // J[i][j] = dF_i / dx_j
    double J[2][2];
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-7 * (1.0 + std::abs(x[j]));
      Vec2 xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec2 fp = F(xp);
      const Vec2 fm = F(xm);
      if (!finite(fp) || !finite(fm)) {
        out.status = RootStatus::NonFinite;
        return out;
      }
      J[0][j] = (fp[0] - fm[0]) / (2.0 * h);
      J[1][j] = (fp[1] - fm[1]) / (2.0 * h);
    }

    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double norm1 = std::max(std::abs(J[0][0]) + std::abs(J[1][0]), std::abs(J[0][1]) + std::abs(J[1][1]));
    // ||J^-1||_1 for a 2x2 is the max column sum of the adjugate over |det|.
    const double adj1 = std::max(std::abs(J[1][1]) + std::abs(J[1][0]), std::abs(J[0][1]) + std::abs(J[0][0]));
    if (det == 0.0 || !std::isfinite(det) || norm1 * adj1 / std::abs(det) > kSingularCondition) {
      out.status = RootStatus::Singular;
      return out;
    }

    const double dx0 = (J[1][1] * fx[0] - J[0][1] * fx[1]) / det;
    const double dx1 = (-J[1][0] * fx[0] + J[0][0] * fx[1]) / det;
    x = {x[0] - cfg.damping * dx0, x[1] - cfg.damping * dx1};
    fx = F(x);
    if (!finite(fx)) {
      out.root = x;
      out.iterations = it + 1;
      out.status = RootStatus::NonFinite;
      return out;
    }
  }
  out.status = RootStatus::NonConvergence;
  return out;
}

double finite_diff_2nd(const ScalarFn& f, double x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite difference step must be positive");
  const double fp = checked(f, x + h);
  const double f0 = checked(f, x);
  const double fm = checked(f, x - h);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "linspace needs n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

}  // namespace qbertrand::numerics

#ifndef QBERTRAND_NUMERICS_HPP
#define QBERTRAND_NUMERICS_HPP

#include <array>
#include <functional>
#include <string_view>
#include <vector>

namespace qbertrand::numerics {

// Shared tolerances. Acceptance checks in every module refer to these.
inline constexpr double kBracketTol = 1e-10;
inline constexpr double kRootTol = 1e-12;
inline constexpr double kDedupTol = 1e-6;
inline constexpr int kGridPoints = 1024;
inline constexpr double kRootDamping = 0.5;
inline constexpr int kRootMaxIters = 200;
inline constexpr double kSingularCondition = 1e12;

using ScalarFn = std::function<double(double)>;
using Vec2 = std::array<double, 2>;
using VectorFn2 = std::function<Vec2(const Vec2&)>;

struct BracketSearchConfig {
  double lower = 0.0;
  double upper = 1.0;
  int grid_points = kGridPoints;
  double tol = kBracketTol;

  void validate() const;
};

struct MaxResult {
  double argmax = 0.0;
  double value = 0.0;
  bool boundary = false;  // grid argmax was an endpoint of [lower, upper]
};

/// Grid pre-scan over cfg.grid_points equally spaced points, then
/// golden-section refinement inside the cell pair around the best grid
/// point. Throws EvaluationError if f is non-finite at any grid point.
MaxResult golden_max(const ScalarFn& f, const BracketSearchConfig& cfg);

enum class RootStatus { Converged, NonConvergence, Singular, NonFinite };

std::string_view to_string(RootStatus s);

struct RootResult {
  RootStatus status = RootStatus::NonConvergence;
  Vec2 root{};
  double residual = 0.0;  // max-norm of F at root
  int iterations = 0;

  bool converged() const { return status == RootStatus::Converged; }
};

struct RootConfig {
  double damping = kRootDamping;
  int max_iters = kRootMaxIters;
  double tol = kRootTol;
};

/// Damped Newton iteration x <- x - damping * J^-1 F(x) with a central
/// finite-difference Jacobian (step 1e-7 (1 + |x_j|)). Never throws on
/// divergence; the outcome is carried in RootResult::status. Throws
/// EvaluationError only when F is non-finite at the seed itself.
RootResult damped_root_2d(const VectorFn2& F, const Vec2& seed, const RootConfig& cfg = {});

/// (f(x+h) - 2 f(x) + f(x-h)) / h^2
double finite_diff_2nd(const ScalarFn& f, double x, double h);

/// n equally spaced points from lo to hi inclusive. The last point is hi
/// exactly. A gamma grid only contains pi/4 when (n - 1) is a multiple of 4
/// over [0, pi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace qbertrand::numerics

#endif

#include "qbertrand/quantum_engine.hpp"

#include "qbertrand/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qbertrand {

namespace {

Eigen::Matrix4d kron(const Eigen::Matrix2d& A, const Eigen::Matrix2d& B) {
  Eigen::Matrix4d out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = A(i, j) * B;
  return out;
}

void require_finite(const PricePair& prices) {
  if (!std::isfinite(prices.p1) || !std::isfinite(prices.p2)) {
    throw Error(ErrorCode::InvalidArgument, "prices must be finite");
  }
}

// Mixture weights without the [0, inf) restriction, for diagnostic
// evaluation at negative candidate prices.
StrategyProbabilities weights_unchecked(const PricePair& prices) {
  require_finite(prices);
  if (prices.p1 == -1.0 || prices.p2 == -1.0) {
    throw Error(ErrorCode::Domain, "price -1 has no strategy probability");
  }
  return {1.0 / (1.0 + prices.p1), 1.0 / (1.0 + prices.p2)};
}

}  // namespace

EntanglementAngle EntanglementAngle::from_radians(double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0 || gamma > std::numbers::pi) {
    std::ostringstream os;
    os << "entanglement angle must lie in [0, pi] (got " << gamma << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  // The double nearest pi/4 leaves cos 2g at ~6e-17, which is rounding in
  // the angle and not entanglement; treat it as the maximal state.
  if (std::abs(gamma - std::numbers::pi / 4.0) <= 2.0 * std::numeric_limits<double>::epsilon()) return maximal();
  EntanglementAngle g;
  g.gamma_ = gamma;
  g.cos_ = std::cos(gamma);
  g.sin_ = std::sin(gamma);
  g.cos_sq_ = g.cos_ * g.cos_;
  g.sin_sq_ = g.sin_ * g.sin_;
  g.cos_double_ = std::cos(2.0 * gamma);
  g.cos_sin_ = g.cos_ * g.sin_;
  return g;
}

EntanglementAngle EntanglementAngle::maximal() {
  EntanglementAngle g;
  g.gamma_ = std::numbers::pi / 4.0;
  g.cos_ = std::numbers::sqrt2 / 2.0;
  g.sin_ = std::numbers::sqrt2 / 2.0;
  g.cos_sq_ = 0.5;
  g.sin_sq_ = 0.5;
  g.cos_double_ = 0.0;
  g.cos_sin_ = 0.5;
  return g;
}

bool EntanglementAngle::is_maximal(double tol) const { return std::abs(cos_double_) <= tol; }

bool EntanglementAngle::is_classical(double tol) const { return sin_sq_ <= tol; }

StrategyProbabilities price_to_prob(const PricePair& prices) {
  require_finite(prices);
  if (prices.p1 < 0.0 || prices.p2 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "prices must be non-negative to map to probabilities");
  }
  return {1.0 / (1.0 + prices.p1), 1.0 / (1.0 + prices.p2)};
}

Eigen::Matrix2d operator_matrix(LocalOperator op) {
  Eigen::Matrix2d m;
  if (op == LocalOperator::Identity) {
    m << 1, 0, 0, 1;
  } else {
    m << 0, 1, 1, 0;
  }
  return m;
}

double DensityMatrix4::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix4 initial_state(const EntanglementAngle& angle) {
  Eigen::Vector4d psi(angle.cos(), 0.0, 0.0, angle.sin());
  return {psi * psi.transpose()};
}

DensityMatrix4 evolve_state(const DensityMatrix4& rho_i, const StrategyProbabilities& probs) {
  struct Term {
    LocalOperator a, b;
    double weight;
  };
  const double x = probs.x, y = probs.y;
  const Term terms[] = {
      {LocalOperator::Identity, LocalOperator::Identity, x * y},
      {LocalOperator::Identity, LocalOperator::Flip, x * (1.0 - y)},
      {LocalOperator::Flip, LocalOperator::Identity, y * (1.0 - x)},
      {LocalOperator::Flip, LocalOperator::Flip, (1.0 - x) * (1.0 - y)},
  };
  DensityMatrix4 out;
  for (const auto& t : terms) {
    const Eigen::Matrix4d U = kron(operator_matrix(t.a), operator_matrix(t.b));
    out.entries += t.weight * U * rho_i.entries * U.transpose();
  }
  return out;
}

DensityElements density_elements_closed(const PricePair& prices, const EntanglementAngle& angle) {
  const double p1 = prices.p1, p2 = prices.p2;
  const double cc = angle.cos_sq(), ss = angle.sin_sq(), cs = angle.cos_sin();
  DensityElements e;
  e.normalizer = (1.0 + p1) * (1.0 + p2);
  const double inv = 1.0 / e.normalizer;
  e.rho11 = (cc + p1 * p2 * ss) * inv;
  e.rho14 = (1.0 + p1 * p2) * cs * inv;
  e.rho22 = (p2 * cc + p1 * ss) * inv;
  e.rho23 = (p1 + p2) * cs * inv;
  e.rho33 = (p1 * cc + p2 * ss) * inv;
  e.rho44 = (p1 * p2 * cc + ss) * inv;
  return e;
}

DensityElements extract_elements(const DensityMatrix4& rho, const PricePair& prices) {
  const auto& m = rho.entries;
  DensityElements e;
  e.rho11 = m(0, 0);
  e.rho14 = m(0, 3);
  e.rho22 = m(1, 1);
  e.rho23 = m(1, 2);
  e.rho33 = m(2, 2);
  e.rho44 = m(3, 3);
  e.normalizer = (1.0 + prices.p1) * (1.0 + prices.p2);
  return e;
}

PayoffPair quantum_payoff(const MarketParams& params, const PricePair& prices, const EntanglementAngle& angle) {
  require_finite(prices);
  const double p1 = prices.p1, p2 = prices.p2, c = params.c;
  const auto q = demand(params, prices);
  PayoffPair out;
  out.kA = p1 - c;
  out.kB = p2 - c;
  out.uA = q.qA * (out.kA * angle.cos_sq() + (p2 + p1 * (-1.0 - c * p2 + p2 * p2)) * angle.sin_sq());
  out.uB = q.qB * (out.kB * angle.cos_sq() + (p1 - p2 * (1.0 + c * p1 - p1 * p1)) * angle.sin_sq());
  out.physical = prices.physical();
  return out;
}

PayoffPair quantum_payoff_via_state(const MarketParams& params, const PricePair& prices,
                                    const EntanglementAngle& angle) {
  const auto probs = weights_unchecked(prices);
  const auto rho = evolve_state(initial_state(angle), probs);
  const auto e = extract_elements(rho, prices);
  const auto q = demand(params, prices);
  PayoffPair out;
  out.kA = prices.p1 - params.c;
  out.kB = prices.p2 - params.c;
  out.uA = q.qA * e.normalizer * (out.kB * e.rho11 - e.rho22 + e.rho33);
  out.uB = q.qB * e.normalizer * (out.kA * e.rho11 + e.rho22 - e.rho33);
  out.physical = prices.physical();
  return out;
}

double firm_payoff(const MarketParams& params, const PricePair& prices, const EntanglementAngle& angle, Firm firm) {
  const auto u = quantum_payoff(params, prices, angle);
  return firm == Firm::A ? u.uA : u.uB;
}

}  // namespace qbertrand

#ifndef QBERTRAND_QUANTUM_ENGINE_HPP
#define QBERTRAND_QUANTUM_ENGINE_HPP

#include "qbertrand/core_model.hpp"

#include <Eigen/Dense>

namespace qbertrand {

/// Entanglement angle of the initial state cos(g)|00> + sin(g)|11>, with the
/// trigonometric quantities the payoff formulas consume cached up front.
class EntanglementAngle {
public:
  /// Accepts gamma in [0, pi]. Values within a few ulps of pi/4 give maximal().
  static EntanglementAngle from_radians(double gamma);

  /// gamma = pi/4 with exact cached values (cos^2 = sin^2 = 1/2, cos 2g = 0).
  static EntanglementAngle maximal();

  static EntanglementAngle unentangled() { return from_radians(0.0); }

  double radians() const { return gamma_; }
  double cos_sq() const { return cos_sq_; }
  double sin_sq() const { return sin_sq_; }
  double cos_double() const { return cos_double_; }  // cos 2g
  double cos_sin() const { return cos_sin_; }        // cos g sin g
  double cos() const { return cos_; }
  double sin() const { return sin_; }

  /// cos 2g == 0 to within tol; the maximally entangled configuration.
  bool is_maximal(double tol = 1e-9) const;
  /// sin^2 g == 0 to within tol; the game reduces to the classical one.
  bool is_classical(double tol = 1e-15) const;

private:
  double gamma_ = 0.0;
  double cos_ = 1.0, sin_ = 0.0;
  double cos_sq_ = 1.0, sin_sq_ = 0.0, cos_double_ = 1.0, cos_sin_ = 0.0;
};

/// Probabilities that each firm applies the identity rather than the flip.
struct StrategyProbabilities {
  double x = 1.0;
  double y = 1.0;
};

/// x = 1/(1+p1), y = 1/(1+p2). Prices must be finite and non-negative.
StrategyProbabilities price_to_prob(const PricePair& prices);

enum class LocalOperator { Identity, Flip };

Eigen::Matrix2d operator_matrix(LocalOperator op);

/// Real symmetric 4x4 state in the basis |00>, |01>, |10>, |11>; the first
/// qubit belongs to firm A.
struct DensityMatrix4 {
  Eigen::Matrix4d entries = Eigen::Matrix4d::Zero();

  double trace() const { return entries.trace(); }
  double asymmetry() const { return (entries - entries.transpose()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const;
};

DensityMatrix4 initial_state(const EntanglementAngle& angle);

/// Marinatto-Weber mixture: the four products of {Identity, Flip} on each
/// qubit, weighted by xy, x(1-y), (1-x)y and (1-x)(1-y).
DensityMatrix4 evolve_state(const DensityMatrix4& rho_i, const StrategyProbabilities& probs);

/// The nonzero entries of the evolved state (1-based labels), together with
/// the normalizer D = (1+p1)(1+p2).
struct DensityElements {
  double rho11 = 0.0, rho14 = 0.0, rho22 = 0.0, rho23 = 0.0, rho33 = 0.0, rho44 = 0.0;
  double normalizer = 1.0;

  double diagonal_sum() const { return rho11 + rho22 + rho33 + rho44; }
};

DensityElements density_elements_closed(const PricePair& prices, const EntanglementAngle& angle);

/// Reads the six elements out of an explicit state. D is taken from prices.
DensityElements extract_elements(const DensityMatrix4& rho, const PricePair& prices);

struct PayoffPair {
  double uA = 0.0;
  double uB = 0.0;
  double kA = 0.0;  // p1 - c
  double kB = 0.0;  // p2 - c
  bool physical = true;
};

/// Closed-form quantum payoffs:
///   uA = qA [kA cos^2 g + (p2 + p1 (-1 - c p2 + p2^2)) sin^2 g]
///   uB = qB [kB cos^2 g + (p1 - p2 (1 + c p1 - p1^2)) sin^2 g]
PayoffPair quantum_payoff(const MarketParams& params, const PricePair& prices, const EntanglementAngle& angle);

/// Same payoffs computed through the explicit state:
///   uA = qA D (kB rho11 - rho22 + rho33),  uB = qB D (kA rho11 + rho22 - rho33).
/// Negative prices are evaluated algebraically (the mixture weights leave
/// [0,1]); a price of exactly -1 is a domain error.
PayoffPair quantum_payoff_via_state(const MarketParams& params, const PricePair& prices,
                                    const EntanglementAngle& angle);

/// A single firm's closed-form payoff, with the opponent's price held fixed.
double firm_payoff(const MarketParams& params, const PricePair& prices, const EntanglementAngle& angle, Firm firm);

}  // namespace qbertrand

#endif

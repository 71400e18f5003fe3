#ifndef QBERTRAND_RESPONSE_DYNAMICS_HPP
#define QBERTRAND_RESPONSE_DYNAMICS_HPP

#include "qbertrand/core_model.hpp"
#include "qbertrand/quantum_engine.hpp"

#include <string_view>
#include <vector>

namespace qbertrand {

struct ReactionResult {
  double price = 0.0;          // unconstrained critical point (may be negative)
  double clamped_price = 0.0;  // max(price, 0)
  bool concavity_ok = false;   // second_derivative < 0
  double second_derivative = 0.0;
  bool boundary = false;       // only set by numerical_reaction
};

/// 10 (a + c)
double default_search_max(const MarketParams& params);

ReactionResult classical_reaction(const MarketParams& params, double opponent_price);

/// Best response for general entanglement. With k = p_opp - c the
/// responder's payoff is (a + b p_opp - p)(A1 p + B1), where
///   A1 = [(2 - p_opp k) cos 2g + p_opp k] / 2,
///   B1 = [k - (c + p_opp) cos 2g] / 2,
/// so the critical point is [(a + b p_opp) A1 - B1] / (2 A1) and the second
/// derivative is -2 A1. Throws DegenerateResponse when A1 == 0.
///
/// The payoffs are role-symmetric, so `responder` does not change the
/// result; it is accepted so call sites read naturally.
ReactionResult quantum_reaction(const MarketParams& params, double opponent_price, const EntanglementAngle& angle,
                                Firm responder = Firm::A);

/// d^2 u / dp^2 of the responder's payoff in its own price, i.e. -2 A1.
/// Constant in own price.
double own_price_curvature(const MarketParams& params, double opponent_price, const EntanglementAngle& angle);

/// (b p^2 + a p - 1) / (2 p). Independent of c; concavity still depends on c
/// through -p (p - c). Throws a Domain error at p_opp == 0.
ReactionResult max_entangled_reaction(const MarketParams& params, double opponent_price);

/// Reaction used by the dynamics and the root solver: the reduced form at
/// exactly cos 2g == 0, the general form otherwise.
ReactionResult best_response(const MarketParams& params, double opponent_price, const EntanglementAngle& angle);

/// Grid scan plus golden-section argmax of firm A's payoff over own price
/// in [0, search_max]. concavity_ok and second_derivative come from a finite
/// difference at the argmax, not from the analytic coefficients.
ReactionResult numerical_reaction(const MarketParams& params, double opponent_price, const EntanglementAngle& angle,
                                  double search_max);

enum class UpdateRule { Simultaneous, Sequential };

enum class DynamicsExit { Converged, MaxIterations, LeftDomain, Degenerate };

std::string_view to_string(DynamicsExit e);

struct Trajectory {
  std::vector<PricePair> path;  // path[0] is the start
  bool converged = false;
  DynamicsExit exit = DynamicsExit::MaxIterations;
};

struct DynamicsConfig {
  int max_iters = 200;
  double tol = 1e-12;
  UpdateRule rule = UpdateRule::Simultaneous;
  double search_max = 0.0;  // <= 0 selects default_search_max
};

/// Iterates the reaction maps from `start`. Stops on convergence (max-norm
/// step below tol), when an iterate leaves [0, search_max], or when a
/// reaction is degenerate.
Trajectory br_dynamics(const MarketParams& params, const EntanglementAngle& angle, const PricePair& start,
                       const DynamicsConfig& cfg = {});

}  // namespace qbertrand

#endif

#ifndef QBERTRAND_EQUILIBRIUM_HPP
#define QBERTRAND_EQUILIBRIUM_HPP

#include "qbertrand/core_model.hpp"
#include "qbertrand/numerics.hpp"
#include "qbertrand/quantum_engine.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace qbertrand {

enum class CandidateLabel { Classical, Q1, Q2, Q3, Q4, Numerical };

std::string_view to_string(CandidateLabel l);

inline constexpr double kFocTol = 1e-9;

struct EquilibriumCandidate {
  CandidateLabel label = CandidateLabel::Numerical;
  PricePair prices;
  PayoffPair payoffs;

  double foc_residual = 0.0;  // max |p - BR(p_opp)| over both firms
  double curvature_A = 0.0;   // d^2 uA / dp1^2
  double curvature_B = 0.0;   // d^2 uB / dp2^2
  bool concave_A = false;
  bool concave_B = false;
  bool physical = false;
  bool boundary_dominant = false;
  double spectral_radius = 0.0;  // of the best-response Jacobian
  bool stable = false;

  /// Physical, concave for both firms, boundary-dominant and FOC-satisfying.
  /// Stability is reported separately and does not enter this flag.
  bool nash() const { return physical && concave_A && concave_B && boundary_dominant && foc_residual <= kFocTol; }
};

/// p* = (a + c) / (2 - b), u* = (p* - c)^2, classified against the
/// unentangled game.
EquilibriumCandidate classical_equilibrium(const MarketParams& params);

/// The four solutions of the maximally entangled first-order system:
///   q1, q2: symmetric roots of (2 - b) p^2 - a p + 1 = 0,
///   q3, q4: p1 = 2b / (a(2+b) +- sqrt(2+b) G), p2 = -(a +- G / sqrt(2+b)) / (2b),
/// with G = sqrt(4b^2 + a^2 (2+b)). Each candidate is classified at the
/// maximally entangled angle. Throws ComplexCandidates when a^2 + 4(b-2) < 0.
std::array<EquilibriumCandidate, 4> quantum_candidates(const MarketParams& params);

/// Closed-form candidate prices only, without classification.
std::array<PricePair, 4> quantum_candidate_prices(const MarketParams& params);

struct ClosedFormPayoff {
  CandidateLabel label = CandidateLabel::Q1;
  PricePair prices;
  double closed_uA = 0.0, closed_uB = 0.0;
  double direct_uA = 0.0, direct_uB = 0.0;
  double rel_mismatch = 0.0;  // max relative difference closed vs direct

  bool agrees(double rel_tol) const { return rel_mismatch <= rel_tol; }
};

/// Printed closed-form payoffs at q1..q4 alongside direct evaluation of the
/// quantum payoff at the candidate prices. Mismatches are reported through
/// rel_mismatch; nothing is corrected silently.
std::array<ClosedFormPayoff, 4> candidate_payoffs_closed(const MarketParams& params);

/// Symmetric NE payoff at q1 in terms of beta, alpha.
double q1_payoff_closed(const MarketParams& params);
/// Symmetric payoff at q2.
double q2_payoff_closed(const MarketParams& params);
/// (uA, uB) at q3 (sign = +1) or q4 (sign = -1).
std::pair<double, double> asymmetric_payoff_closed(const MarketParams& params, int sign);

/// Fills every diagnostic field of `candidate` for the given angle. Throws
/// InvalidArgument when the candidate does not satisfy the first-order
/// conditions to kFocTol.
void classify(const MarketParams& params, EquilibriumCandidate& candidate, const EntanglementAngle& angle,
              double search_max = 0.0);

struct SeedOutcome {
  PricePair seed;
  numerics::RootStatus status = numerics::RootStatus::NonConvergence;
  PricePair root;
  int iterations = 0;
};

struct NumericSolveReport {
  std::vector<EquilibriumCandidate> roots;  // deduplicated, lexicographic by price
  std::vector<SeedOutcome> seeds;
};

/// 5x5 grid over [0.1, a]^2 plus the two asymmetric starts
/// (b/(2a), -a/b) and (-a/b, b/(2a)).
std::vector<PricePair> default_seeds(const MarketParams& params);

/// Damped Newton solve of p1 - BR(p2) = 0, p2 - BR(p1) = 0 from each seed.
/// Per-seed failures are recorded, not thrown.
NumericSolveReport solve_numeric(const MarketParams& params, const EntanglementAngle& angle,
                                 const std::vector<PricePair>& seeds);

/// Candidate table for an angle: the classical row when unentangled, q1..q4
/// when maximally entangled, numerical roots otherwise.
std::vector<EquilibriumCandidate> equilibrium_report(const MarketParams& params, const EntanglementAngle& angle);

struct PositivityViolation {
  double a = 0.0, c = 0.0, b = 0.0;
  double u_q1 = 0.0;
};

/// Evaluates the q1 payoff over every (a, c, b) combination and returns the
/// points where it is not strictly positive.
std::vector<PositivityViolation> q1_positivity_scan(const std::vector<double>& a_values,
                                                    const std::vector<double>& c_values,
                                                    const std::vector<double>& b_values);

}  // namespace qbertrand

#endif

#include "qbertrand/response_dynamics.hpp"

#include "qbertrand/error.hpp"
#include "qbertrand/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbertrand {

namespace {

ReactionResult make_result(double price, double second_derivative) {
  ReactionResult r;
  r.price = price;
  r.clamped_price = std::max(price, 0.0);
  r.second_derivative = second_derivative;
  r.concavity_ok = second_derivative < 0.0;
  return r;
}

}  // namespace

double default_search_max(const MarketParams& params) { return 10.0 * (params.a + params.c); }

ReactionResult classical_reaction(const MarketParams& params, double opponent_price) {
  return make_result(0.5 * (params.b * opponent_price + params.a + params.c), -2.0);
}

ReactionResult quantum_reaction(const MarketParams& params, double opponent_price, const EntanglementAngle& angle,
                                Firm /*responder*/) {
  const double p = opponent_price;
  const double k = p - params.c;
  const double cd = angle.cos_double();
  const double A1 = 0.5 * ((2.0 - p * k) * cd + p * k);
  const double B1 = 0.5 * (k - (params.c + p) * cd);
  if (A1 == 0.0) {
    std::ostringstream os;
    os << "payoff is linear in own price at opponent price " << p << "; no interior best response";
    const int sign = B1 > 0.0 ? -1 : (B1 < 0.0 ? 1 : 0);
    throw DegenerateResponse(os.str(), sign);
  }
  const double s = params.a + params.b * p;
  return make_result((s * A1 - B1) / (2.0 * A1), -2.0 * A1);
}

double own_price_curvature(const MarketParams& params, double opponent_price, const EntanglementAngle& angle) {
  const double p = opponent_price;
  const double k = p - params.c;
  return -((2.0 - p * k) * angle.cos_double() + p * k);
}

ReactionResult max_entangled_reaction(const MarketParams& params, double opponent_price) {
  const double p = opponent_price;
  if (p == 0.0) {
    throw Error(ErrorCode::Domain, "maximally entangled reaction is undefined at opponent price 0");
  }
  return make_result((params.b * p * p + params.a * p - 1.0) / (2.0 * p), -p * (p - params.c));
}

ReactionResult best_response(const MarketParams& params, double opponent_price, const EntanglementAngle& angle) {
  if (angle.cos_double() == 0.0) return max_entangled_reaction(params, opponent_price);
  return quantum_reaction(params, opponent_price, angle);
}

ReactionResult numerical_reaction(const MarketParams& params, double opponent_price, const EntanglementAngle& angle,
                                  double search_max) {
  if (!(search_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "search_max must be positive");
  auto f = [&](double own) { return firm_payoff(params, {own, opponent_price}, angle, Firm::A); };
  numerics::BracketSearchConfig cfg;
  cfg.lower = 0.0;
  cfg.upper = search_max;
  const auto m = numerics::golden_max(f, cfg);

  // The payoff is quadratic in own price, so a wide stencil is exact up to rounding.
  const double h = 1e-3 * (1.0 + std::abs(m.argmax));
  auto r = make_result(m.argmax, numerics::finite_diff_2nd(f, m.argmax, h));
  r.boundary = m.boundary;
  return r;
}

std::string_view to_string(DynamicsExit e) {
  switch (e) {
    case DynamicsExit::Converged: return "converged";
    case DynamicsExit::MaxIterations: return "max-iterations";
    case DynamicsExit::LeftDomain: return "left-domain";
    case DynamicsExit::Degenerate: return "degenerate-response";
  }
  return "unknown";
}

Trajectory br_dynamics(const MarketParams& params, const EntanglementAngle& angle, const PricePair& start,
                       const DynamicsConfig& cfg) {
  if (!std::isfinite(start.p1) || !std::isfinite(start.p2) || start.p1 < 0.0 || start.p2 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "dynamics start must be finite and non-negative");
  }
  const double search_max = cfg.search_max > 0.0 ? cfg.search_max : default_search_max(params);
  auto in_domain = [&](double p) { return std::isfinite(p) && p >= 0.0 && p <= search_max; };

  Trajectory t;
  t.path.push_back(start);
  PricePair cur = start;
  for (int it = 0; it < cfg.max_iters; ++it) {
    PricePair next;
    try {
      next.p1 = best_response(params, cur.p2, angle).price;
      const double against = cfg.rule == UpdateRule::Sequential ? next.p1 : cur.p1;
      next.p2 = best_response(params, against, angle).price;
    } catch (const Error&) {
      t.exit = DynamicsExit::Degenerate;
      return t;
    }
    t.path.push_back(next);
    if (!in_domain(next.p1) || !in_domain(next.p2)) {
      t.exit = DynamicsExit::LeftDomain;
      return t;
    }
    const double step = std::max(std::abs(next.p1 - cur.p1), std::abs(next.p2 - cur.p2));
    cur = next;
    if (step < cfg.tol) {
      t.converged = true;
      t.exit = DynamicsExit::Converged;
      return t;
    }
  }
  t.exit = DynamicsExit::MaxIterations;
  return t;
}

}  // namespace qbertrand

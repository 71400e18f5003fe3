#include "qbertrand/equilibrium.hpp"

#include "qbertrand/error.hpp"
#include "qbertrand/response_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace qbertrand {

namespace {

void require_real(const MarketParams& params, const DerivedConstants& d) {
  if (!d.real_candidates()) {
    std::ostringstream os;
    os << "equilibrium candidates are complex for a=" << params.a << ", b=" << params.b
       << " (a^2 + 4(b-2) = " << d.disc << " < 0)";
    throw Error(ErrorCode::ComplexCandidates, os.str());
  }
}

double rel_diff(double x, double y) {
  const double scale = std::max({std::abs(x), std::abs(y), std::numeric_limits<double>::min()});
  return std::abs(x - y) / scale;
}

// Reaction slope dBR/dp_opp by central difference.
double reaction_slope(const MarketParams& params, double p_opp, const EntanglementAngle& angle) {
  const double h = 1e-6 * (1.0 + std::abs(p_opp));
  return (best_response(params, p_opp + h, angle).price - best_response(params, p_opp - h, angle).price) / (2.0 * h);
}

bool candidate_less(const EquilibriumCandidate& x, const EquilibriumCandidate& y) {
  return std::tie(x.label, x.prices.p1, x.prices.p2) < std::tie(y.label, y.prices.p1, y.prices.p2);
}

}  // namespace

std::string_view to_string(CandidateLabel l) {
  switch (l) {
    case CandidateLabel::Classical: return "classical";
    case CandidateLabel::Q1: return "q1";
    case CandidateLabel::Q2: return "q2";
    case CandidateLabel::Q3: return "q3";
    case CandidateLabel::Q4: return "q4";
    case CandidateLabel::Numerical: return "numerical";
  }
  return "unknown";
}

EquilibriumCandidate classical_equilibrium(const MarketParams& params) {
  const double p = (params.a + params.c) / (2.0 - params.b);
  const double u = (p - params.c) * (p - params.c);
  EquilibriumCandidate cand;
  cand.label = CandidateLabel::Classical;
  cand.prices = {p, p};
  classify(params, cand, EntanglementAngle::unentangled());
  cand.payoffs.uA = u;
  cand.payoffs.uB = u;
  return cand;
}

std::array<PricePair, 4> quantum_candidate_prices(const MarketParams& params) {
  const auto d = derived_constants(params);
  require_real(params, d);
  const double a = params.a, b = params.b;
  const double root = std::sqrt(d.disc);
  const double p_hi = (a + root) / (-2.0 * d.beta);
  const double p_lo = 2.0 / (a + root);

  const double r = std::sqrt(2.0 + b);
  const double G = d.gamma_cap;
  // The minus-sign branch of each formula cancels badly for small b.
  // Rationalising shows q4 is q3 with the firms swapped, and q3 uses only
  // the plus-sign branches.
  const PricePair q3{2.0 * b / (a * (2.0 + b) + r * G), -(a + G / r) / (2.0 * b)};
  return {PricePair{p_hi, p_hi}, PricePair{p_lo, p_lo}, q3, q3.swapped()};
}

std::array<EquilibriumCandidate, 4> quantum_candidates(const MarketParams& params) {
  const auto prices = quantum_candidate_prices(params);
  const CandidateLabel labels[] = {CandidateLabel::Q1, CandidateLabel::Q2, CandidateLabel::Q3, CandidateLabel::Q4};
  const auto angle = EntanglementAngle::maximal();
  std::array<EquilibriumCandidate, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i].label = labels[i];
    out[i].prices = prices[i];
    classify(params, out[i], angle);
  }
  return out;
}

double q1_payoff_closed(const MarketParams& params) {
  const auto d = derived_constants(params);
  require_real(params, d);
  const double a = params.a, b = params.b, c = params.c;
  const double be = d.beta, al = d.alpha, s = std::sqrt(d.disc);
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const double bracket = a4 + 2.0 * al * al + 2.0 * a2 * b * be + a3 * c * be - a * ((be - 2.0) * be - 3.0) * c * be * be +
                         s * (a3 + 2.0 * a * al + c * al * al + a2 * c * be);
  return bracket / (4.0 * be * be * be * be);
}

double q2_payoff_closed(const MarketParams& params) {
  const auto d = derived_constants(params);
  require_real(params, d);
  const double a = params.a, b = params.b, c = params.c;
  const double s = std::sqrt(d.disc);
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
  const double bracket = a5 * c + a * (-1.0 + b) * ((-9.0 + 5.0 * b) * c - 2.0 * s) - a3 * ((8.0 - 5.0 * b) * c + s) +
                         (-1.0 + b) * (-1.0 + b) * (-2.0 + c * s) + a4 * (-1.0 + c * s) +
                         a2 * (6.0 - 4.0 * c * s + b * (-4.0 + 3.0 * c * s));
  const double den = a + s;
  return -4.0 / (den * den * den * den) * bracket;
}

std::pair<double, double> asymmetric_payoff_closed(const MarketParams& params, int sign) {
  const auto d = derived_constants(params);
  require_real(params, d);
  const double a = params.a, b = params.b, c = params.c, G = d.gamma_cap;
  const double sg = sign >= 0 ? 1.0 : -1.0;
  const double r = std::sqrt(2.0 + b);
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  const double lead = (1.0 + b) * (1.0 + b);

  const double num_A = a * a * r3 + a * (2.0 + b) * (b * r * c + sg * G) + b * (2.0 * b * r + sg * c * G * (2.0 + b));
  const double den_A_root = a * (2.0 + b) + sg * r * G;
  const double uA = lead * num_A / (r3 * den_A_root * den_A_root);
  const double uB = -lead * r * (2.0 * a * c + a * b * c - 2.0 * b + sg * r * G * c) / (4.0 * b * r5);
  return {uA, uB};
}

std::array<ClosedFormPayoff, 4> candidate_payoffs_closed(const MarketParams& params) {
  const auto prices = quantum_candidate_prices(params);
  const auto angle = EntanglementAngle::maximal();
  const double u1 = q1_payoff_closed(params);
  const double u2 = q2_payoff_closed(params);
  const auto u3 = asymmetric_payoff_closed(params, +1);
  const auto u4 = asymmetric_payoff_closed(params, -1);
  const std::pair<double, double> closed[] = {{u1, u1}, {u2, u2}, u3, u4};
  const CandidateLabel labels[] = {CandidateLabel::Q1, CandidateLabel::Q2, CandidateLabel::Q3, CandidateLabel::Q4};

  std::array<ClosedFormPayoff, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    auto& row = out[i];
    row.label = labels[i];
    row.prices = prices[i];
    row.closed_uA = closed[i].first;
    row.closed_uB = closed[i].second;
    const auto direct = quantum_payoff(params, prices[i], angle);
    row.direct_uA = direct.uA;
    row.direct_uB = direct.uB;
    row.rel_mismatch = std::max(rel_diff(row.closed_uA, row.direct_uA), rel_diff(row.closed_uB, row.direct_uB));
  }
  return out;
}

void classify(const MarketParams& params, EquilibriumCandidate& cand, const EntanglementAngle& angle,
              double search_max) {
  const double smax = search_max > 0.0 ? search_max : default_search_max(params);
  const double p1 = cand.prices.p1, p2 = cand.prices.p2;

  double foc = std::numeric_limits<double>::infinity();
  try {
    foc = std::max(std::abs(p1 - best_response(params, p2, angle).price),
                   std::abs(p2 - best_response(params, p1, angle).price));
  } catch (const Error&) {
  }
  if (!(foc <= kFocTol)) {
    std::ostringstream os;
    os << "candidate (" << p1 << ", " << p2 << ") violates the first-order conditions (residual " << foc << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  cand.foc_residual = foc;
  cand.payoffs = quantum_payoff(params, cand.prices, angle);

  cand.curvature_A = own_price_curvature(params, p2, angle);
  cand.curvature_B = own_price_curvature(params, p1, angle);
  cand.concave_A = cand.curvature_A < 0.0;
  cand.concave_B = cand.curvature_B < 0.0;
  cand.physical = cand.prices.physical();

  const double uA0 = firm_payoff(params, {0.0, p2}, angle, Firm::A);
  const double uAmax = firm_payoff(params, {smax, p2}, angle, Firm::A);
  const double uB0 = firm_payoff(params, {p1, 0.0}, angle, Firm::B);
  const double uBmax = firm_payoff(params, {p1, smax}, angle, Firm::B);
  cand.boundary_dominant = cand.payoffs.uA >= uA0 && cand.payoffs.uA >= uAmax && cand.payoffs.uB >= uB0 &&
                           cand.payoffs.uB >= uBmax;

  // The best-response Jacobian [[0, sA], [sB, 0]] has eigenvalues +-sqrt(sA sB).
  try {
    const double sA = reaction_slope(params, p2, angle);
    const double sB = reaction_slope(params, p1, angle);
    cand.spectral_radius = std::sqrt(std::abs(sA * sB));
  } catch (const Error&) {
    cand.spectral_radius = std::numeric_limits<double>::infinity();
  }
  cand.stable = cand.spectral_radius < 1.0;
}

std::vector<PricePair> default_seeds(const MarketParams& params) {
  std::vector<PricePair> seeds;
  const auto axis = numerics::linspace(0.1, params.a, 5);
  for (double p1 : axis)
    for (double p2 : axis) seeds.push_back({p1, p2});
  // One best-response step from p_opp = -a/b lands at b/(2a).
  const double small = params.b / (2.0 * params.a);
  const double far = -params.a / params.b;
  seeds.push_back({small, far});
  seeds.push_back({far, small});
  return seeds;
}

NumericSolveReport solve_numeric(const MarketParams& params, const EntanglementAngle& angle,
                                 const std::vector<PricePair>& seeds) {
  if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "solve_numeric needs at least one seed");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const numerics::VectorFn2 F = [&](const numerics::Vec2& x) -> numerics::Vec2 {
    try {
      return {x[0] - best_response(params, x[1], angle).price, x[1] - best_response(params, x[0], angle).price};
    } catch (const Error&) {
      return {nan, nan};
    }
  };

  NumericSolveReport report;
  for (const auto& seed : seeds) {
    SeedOutcome outcome;
    outcome.seed = seed;
    try {
      const auto r = numerics::damped_root_2d(F, {seed.p1, seed.p2});
      outcome.status = r.status;
      outcome.root = {r.root[0], r.root[1]};
      outcome.iterations = r.iterations;
    } catch (const Error&) {
      outcome.status = numerics::RootStatus::NonFinite;
    }
    report.seeds.push_back(outcome);
    if (outcome.status != numerics::RootStatus::Converged) continue;

    const bool duplicate = std::any_of(report.roots.begin(), report.roots.end(), [&](const auto& c) {
      return std::max(std::abs(c.prices.p1 - outcome.root.p1), std::abs(c.prices.p2 - outcome.root.p2)) <=
             numerics::kDedupTol;
    });
    if (duplicate) continue;

    EquilibriumCandidate cand;
    cand.label = CandidateLabel::Numerical;
    cand.prices = outcome.root;
    try {
      classify(params, cand, angle);
    } catch (const Error&) {
      continue;
    }
    report.roots.push_back(cand);
  }
  std::sort(report.roots.begin(), report.roots.end(), candidate_less);
  return report;
}

std::vector<EquilibriumCandidate> equilibrium_report(const MarketParams& params, const EntanglementAngle& angle) {
  if (angle.is_classical()) return {classical_equilibrium(params)};
  if (angle.is_maximal()) {
    const auto q = quantum_candidates(params);
    return {q.begin(), q.end()};
  }
  return solve_numeric(params, angle, default_seeds(params)).roots;
}

std::vector<PositivityViolation> q1_positivity_scan(const std::vector<double>& a_values,
                                                    const std::vector<double>& c_values,
                                                    const std::vector<double>& b_values) {
  std::vector<PositivityViolation> out;
  for (double a : a_values)
    for (double c : c_values)
      for (double b : b_values) {
        const auto params = MarketParams::make(a, c, b);
        const double u = q1_payoff_closed(params);
        if (!(u > 0.0)) out.push_back({a, c, b, u});
      }
  return out;
}

}  // namespace qbertrand

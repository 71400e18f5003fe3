#include "qbertrand/core_model.hpp"

#include "qbertrand/error.hpp"

#include <cmath>
#include <sstream>

namespace qbertrand {

MarketParams MarketParams::make(double a, double c, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidArgument, "market parameters must be finite");
  }
  if (!(b > 0.0 && b < 1.0)) {
    std::ostringstream os;
    os << "substitution parameter b must satisfy 0 < b < 1 (got " << b << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!(c >= 0.0 && c < a)) {
    std::ostringstream os;
    os << "marginal cost must satisfy 0 <= c < a (got c=" << c << ", a=" << a << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return MarketParams{a, c, b};
}

Quantities demand(const MarketParams& params, const PricePair& prices) {
  return {params.a - prices.p1 + params.b * prices.p2, params.a - prices.p2 + params.b * prices.p1};
}

std::pair<double, double> classical_profit(const MarketParams& params, const PricePair& prices) {
  const auto q = demand(params, prices);
  return {q.qA * (prices.p1 - params.c), q.qB * (prices.p2 - params.c)};
}

DerivedConstants derived_constants(const MarketParams& params) {
  const double a = params.a;
  const double b = params.b;
  DerivedConstants d;
  d.beta = b - 2.0;
  d.alpha = 2.0 - 3.0 * b + b * b;
  d.gamma_cap = std::sqrt(4.0 * b * b + a * a * (2.0 + b));
  d.disc = a * a + 4.0 * d.beta;
  return d;
}

}  // namespace qbertrand

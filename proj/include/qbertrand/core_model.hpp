#ifndef QBERTRAND_CORE_MODEL_HPP
#define QBERTRAND_CORE_MODEL_HPP

#include <utility>

namespace qbertrand {

enum class Firm { A, B };

/// Economic constants of the differentiated-product duopoly.
///
/// Construction through make() enforces 0 < b < 1 and 0 <= c < a. The
/// fields stay public so the solvers can read them without accessors, but
/// a MarketParams obtained from make() is always valid.
struct MarketParams {
  double a = 3.5;  // demand intercept
  double c = 0.1;  // marginal cost
  double b = 0.5;  // substitution parameter

  static MarketParams make(double a, double c, double b);

  /// Figure preset: a = 3.5, c = 0.1, with the given substitution parameter.
  static MarketParams figure_preset(double b) { return make(3.5, 0.1, b); }
};

/// Prices may be negative here: the asymmetric equilibrium candidates carry
/// one negative price and are flagged non-physical downstream.
struct PricePair {
  double p1 = 0.0;
  double p2 = 0.0;

  PricePair swapped() const { return {p2, p1}; }
  bool physical() const { return p1 >= 0.0 && p2 >= 0.0; }
  double own(Firm f) const { return f == Firm::A ? p1 : p2; }
  double opponent(Firm f) const { return f == Firm::A ? p2 : p1; }
};

struct Quantities {
  double qA = 0.0;
  double qB = 0.0;
};

struct DerivedConstants {
  double beta = 0.0;       // b - 2
  double alpha = 0.0;      // 2 - 3b + b^2
  double gamma_cap = 0.0;  // sqrt(4b^2 + a^2 (2 + b))
  double disc = 0.0;       // a^2 + 4 beta; real symmetric candidates need disc >= 0

  bool real_candidates() const { return disc >= 0.0; }
};

Quantities demand(const MarketParams& params, const PricePair& prices);

/// Classical profits (uA, uB) = (qA (p1 - c), qB (p2 - c)).
std::pair<double, double> classical_profit(const MarketParams& params, const PricePair& prices);

DerivedConstants derived_constants(const MarketParams& params);

}  // namespace qbertrand

#endif

#ifndef QBERTRAND_FIGURES_HPP
#define QBERTRAND_FIGURES_HPP

#include "qbertrand/quantum_engine.hpp"

#include <string>
#include <vector>

namespace qbertrand {

struct SweepSpec {
  double b_min = 0.01;
  double b_max = 0.99;
  int steps = 99;
  double a = 3.5;
  double c = 0.1;
  EntanglementAngle gamma = EntanglementAngle::maximal();
  int figure = 1;
  int threads = 1;  // rows are independent; output order does not depend on this

  void validate() const;
};

/// Figure 1: b,u_classical,u_quantum_q1
/// Figure 2: b,uA_q2,uB_q2,uA_q3,uB_q3,uA_q4,uB_q4
struct SweepTable {
  int figure = 1;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // ascending in b
};

/// At maximal entanglement the quantum columns use the closed-form candidate
/// payoffs. Figure 1 at any other angle takes the highest-payoff Nash root of
/// the numerical solver (NaN when none exists); figure 2 is only defined at
/// maximal entanglement.
SweepTable run_sweep(const SweepSpec& spec);

/// %.12g
std::string format_number(double v);

/// UTF-8, LF line endings, header row first.
std::string to_csv(const SweepTable& table);

/// Throws an Io error naming the path on failure.
void write_csv(const SweepTable& table, const std::string& path);

}  // namespace qbertrand

#endif

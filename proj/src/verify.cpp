#include "qbertrand/verify.hpp"

#include "qbertrand/equilibrium.hpp"
#include "qbertrand/figures.hpp"
#include "qbertrand/numerics.hpp"
#include "qbertrand/quantum_engine.hpp"
#include "qbertrand/response_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace qbertrand {

namespace {

constexpr std::size_t kMaxExamples = 10;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string tol_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Suite {
public:
  Suite(std::string name, double default_tol, const VerifyConfig& cfg) {
    result_.name = std::move(name);
    result_.tolerance = cfg.tolerance.value_or(default_tol);
  }

  double tol() const { return result_.tolerance; }

  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++result_.checked;
    if (ok) return;
    ++result_.failed;
    if (result_.counterexamples.size() < kMaxExamples) result_.counterexamples.push_back(describe());
  }

  // |x - y| <= tol * scale
  void close(double x, double y, double scale, const std::string& what) {
    const double err = std::abs(x - y);
    check(err <= tol() * scale, [&] { return what + ": " + fmt(x) + " vs " + fmt(y) + " (err " + fmt(err) + ")"; });
  }

  SuiteResult take() { return std::move(result_); }

private:
  SuiteResult result_;
};

struct GridPoint {
  MarketParams params;
  EntanglementAngle angle;
  PricePair prices;
};

std::string describe(const GridPoint& g) {
  return "a=" + fmt(g.params.a) + " b=" + fmt(g.params.b) + " c=" + fmt(g.params.c) +
         " gamma=" + fmt(g.angle.radians()) + " p=(" + fmt(g.prices.p1) + "," + fmt(g.prices.p2) + ")";
}

GridPoint sample_point(FixedSeedSampler& s) {
  GridPoint g{MarketParams{}, EntanglementAngle::unentangled(), {}};
  const double a = s.uniform(2.0, 6.0);
  g.params = MarketParams::make(a, s.uniform(0.0, 1.0), s.open(0.0, 1.0));
  g.angle = EntanglementAngle::from_radians(s.uniform(0.0, std::numbers::pi));
  g.prices = {s.uniform(0.0, 10.0), s.uniform(0.0, 10.0)};
  return g;
}

SuiteResult state_fidelity(const VerifyConfig& cfg) {
  Suite suite("state_fidelity", 1e-12, cfg);
  FixedSeedSampler s(cfg.seed);
  for (int i = 0; i < 1000; ++i) {
    const auto g = sample_point(s);
    const auto rho = evolve_state(initial_state(g.angle), price_to_prob(g.prices));
    const auto from_state = extract_elements(rho, g.prices);
    const auto closed = density_elements_closed(g.prices, g.angle);
    const auto& m = rho.entries;
    const double diffs[] = {
        from_state.rho11 - closed.rho11, from_state.rho14 - closed.rho14, from_state.rho22 - closed.rho22,
        from_state.rho23 - closed.rho23, from_state.rho33 - closed.rho33, from_state.rho44 - closed.rho44,
        m(3, 0) - closed.rho14,          m(2, 1) - closed.rho23,
    };
    double worst = 0.0;
    for (double d : diffs) worst = std::max(worst, std::abs(d));
    // Entries outside the six tracked positions must vanish.
    for (auto [r, c] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}}) worst = std::max(worst, std::abs(m(r, c)));
    suite.check(worst <= suite.tol(), [&] { return "elements " + describe(g) + " err " + fmt(worst); });
    suite.close(rho.trace(), 1.0, 1.0, "trace " + describe(g));
    suite.check(rho.asymmetry() <= suite.tol(), [&] { return "symmetry " + describe(g); });
    const double lambda = rho.min_eigenvalue();
    suite.check(lambda >= -suite.tol(), [&] { return "psd " + describe(g) + " min eigenvalue " + fmt(lambda); });
  }
  return suite.take();
}

SuiteResult payoff_paths(const VerifyConfig& cfg) {
  Suite suite("payoff_path_equivalence", 1e-12, cfg);
  FixedSeedSampler s(cfg.seed);
  for (int i = 0; i < 1000; ++i) {
    const auto g = sample_point(s);
    const auto closed = quantum_payoff(g.params, g.prices, g.angle);
    const auto state = quantum_payoff_via_state(g.params, g.prices, g.angle);
    suite.close(closed.uA, state.uA, std::max(1.0, std::abs(closed.uA)), "uA " + describe(g));
    suite.close(closed.uB, state.uB, std::max(1.0, std::abs(closed.uB)), "uB " + describe(g));
  }
  return suite.take();
}

SuiteResult reductions(const VerifyConfig& cfg) {
  Suite suite("limit_reductions", 1e-12, cfg);
  FixedSeedSampler s(cfg.seed + 1);
  const auto unentangled = EntanglementAngle::unentangled();
  const auto maximal = EntanglementAngle::maximal();
  for (int i = 0; i < 500; ++i) {
    const auto g = sample_point(s);
    const auto classical = classical_profit(g.params, g.prices);
    const auto q = quantum_payoff(g.params, g.prices, unentangled);
    suite.close(q.uA, classical.first, std::max(1.0, std::abs(classical.first)), "gamma=0 uA " + describe(g));
    suite.close(q.uB, classical.second, std::max(1.0, std::abs(classical.second)), "gamma=0 uB " + describe(g));

    const double p_opp = g.prices.p2;
    const double r0 = quantum_reaction(g.params, p_opp, unentangled).price;
    const double rc = classical_reaction(g.params, p_opp).price;
    suite.close(r0, rc, std::max(1.0, std::abs(rc)), "gamma=0 reaction " + describe(g));

    if (p_opp > 0.0 && p_opp != g.params.c) {
      const double rq = quantum_reaction(g.params, p_opp, maximal).price;
      const double re = max_entangled_reaction(g.params, p_opp).price;
      suite.close(rq, re, std::max(1.0, std::abs(re)), "max-entangled reaction " + describe(g));
    }
  }
  return suite.take();
}

SuiteResult symmetries(const VerifyConfig& cfg) {
  Suite suite("symmetries", 1e-12, cfg);
  FixedSeedSampler s(cfg.seed + 2);
  for (int i = 0; i < 500; ++i) {
    const auto g = sample_point(s);
    const auto u = quantum_payoff(g.params, g.prices, g.angle);
    const auto swapped = quantum_payoff(g.params, g.prices.swapped(), g.angle);
    suite.check(u.uB == swapped.uA, [&] { return "role swap " + describe(g); });
    const auto reflected =
        quantum_payoff(g.params, g.prices, EntanglementAngle::from_radians(std::numbers::pi - g.angle.radians()));
    suite.close(u.uA, reflected.uA, std::max(1.0, std::abs(u.uA)), "reflection uA " + describe(g));
    suite.close(u.uB, reflected.uB, std::max(1.0, std::abs(u.uB)), "reflection uB " + describe(g));
  }
  return suite.take();
}

// Draws until `count` configurations satisfy `accept`.
template <class Accept, class Run>
void for_accepted(FixedSeedSampler& s, int count, Accept&& accept, Run&& run) {
  int done = 0;
  while (done < count) {
    auto g = sample_point(s);
    if (!accept(g)) continue;
    run(g);
    ++done;
  }
}

SuiteResult best_response_oracle(const VerifyConfig& cfg) {
  Suite suite("best_response_oracle", 1e-6, cfg);
  FixedSeedSampler s(cfg.seed + 3);
  for_accepted(
      s, 500,
      [&](GridPoint& g) {
        g.prices.p2 = s.open(0.0, 10.0);
        if (own_price_curvature(g.params, g.prices.p2, g.angle) >= 0.0) return false;
        const double p = quantum_reaction(g.params, g.prices.p2, g.angle).price;
        return p > 0.0 && p < default_search_max(g.params);
      },
      [&](const GridPoint& g) {
        const double analytic = quantum_reaction(g.params, g.prices.p2, g.angle).price;
        const double oracle =
            numerical_reaction(g.params, g.prices.p2, g.angle, default_search_max(g.params)).price;
        suite.close(oracle, analytic, 1.0, "argmax " + describe(g));
      });
  return suite.take();
}

SuiteResult curvature(const VerifyConfig& cfg) {
  Suite suite("second_derivative", 1e-5, cfg);
  FixedSeedSampler s(cfg.seed + 4);
  for_accepted(
      s, 200, [&](const GridPoint& g) { return own_price_curvature(g.params, g.prices.p2, g.angle) < 0.0; },
      [&](const GridPoint& g) {
        const double analytic = own_price_curvature(g.params, g.prices.p2, g.angle);
        auto f = [&](double own) { return firm_payoff(g.params, {own, g.prices.p2}, g.angle, Firm::A); };
        const double fd = numerics::finite_diff_2nd(f, g.prices.p1, 1e-2 * (1.0 + g.prices.p1));
        suite.close(fd, analytic, std::abs(analytic), "curvature " + describe(g));
      });
  return suite.take();
}

const double kGridA[] = {3.5, 4.0, 5.0};
const double kGridC[] = {0.0, 0.1, 1.0};

std::vector<double> grid_b() {
  std::vector<double> out;
  for (int i = 1; i <= 9; ++i) out.push_back(0.1 * i);
  return out;
}

SuiteResult closed_forms(const VerifyConfig& cfg) {
  Suite sym("closed_form_symmetric_payoffs", 1e-9, cfg);
  Suite asym("closed_form_asymmetric_payoffs", 1e-6, cfg);
  for (double a : kGridA)
    for (double c : kGridC)
      for (double b : grid_b()) {
        const auto params = MarketParams::make(a, c, b);
        const std::string where = "a=" + fmt(a) + " b=" + fmt(b) + " c=" + fmt(c);
        for (const auto& row : candidate_payoffs_closed(params)) {
          auto& suite = (row.label == CandidateLabel::Q1 || row.label == CandidateLabel::Q2) ? sym : asym;
          suite.check(row.rel_mismatch <= suite.tol(), [&] {
            return std::string(to_string(row.label)) + " " + where + " rel mismatch " + fmt(row.rel_mismatch);
          });
        }
      }
  // Fold into one result so the report stays one line per concern.
  auto r1 = sym.take();
  auto r2 = asym.take();
  SuiteResult out;
  out.name = "closed_form_payoffs";
  out.tolerance = r1.tolerance;
  out.checked = r1.checked + r2.checked;
  out.failed = r1.failed + r2.failed;
  out.counterexamples = r1.counterexamples;
  for (auto& e : r2.counterexamples)
    if (out.counterexamples.size() < kMaxExamples) out.counterexamples.push_back(e);
  return out;
}

SuiteResult candidate_recovery(const VerifyConfig& cfg) {
  Suite suite("numerical_candidate_recovery", 1e-6, cfg);
  const auto angle = EntanglementAngle::maximal();
  for (double a : kGridA)
    for (double c : kGridC)
      for (double b : grid_b()) {
        const auto params = MarketParams::make(a, c, b);
        const std::string where = "a=" + fmt(a) + " b=" + fmt(b) + " c=" + fmt(c);
        const auto closed = quantum_candidate_prices(params);
        const auto roots = solve_numeric(params, angle, default_seeds(params)).roots;
        auto dist = [](const PricePair& x, const PricePair& y) {
          return std::max(std::abs(x.p1 - y.p1), std::abs(x.p2 - y.p2));
        };
        for (std::size_t i = 0; i < closed.size(); ++i) {
          double best = INFINITY;
          for (const auto& r : roots) best = std::min(best, dist(r.prices, closed[i]));
          suite.check(best <= suite.tol(), [&] { return "q" + std::to_string(i + 1) + " not recovered " + where; });
        }
        for (const auto& r : roots) {
          double best = INFINITY;
          for (const auto& p : closed) best = std::min(best, dist(r.prices, p));
          suite.check(best <= suite.tol(), [&] {
            return "spurious root (" + fmt(r.prices.p1) + "," + fmt(r.prices.p2) + ") " + where;
          });
        }
      }
  return suite.take();
}

SuiteResult figure1_claim(const VerifyConfig& cfg) {
  Suite suite("figure1_quantum_above_classical", 0.0, cfg);
  SweepSpec spec;
  spec.figure = 1;
  const auto table = run_sweep(spec);
  for (const auto& row : table.rows) {
    suite.check(row[2] > row[1] + suite.tol(), [&] {
      return "b=" + fmt(row[0]) + " u_quantum_q1=" + fmt(row[2]) + " u_classical=" + fmt(row[1]);
    });
  }
  return suite.take();
}

SuiteResult stability(const VerifyConfig& cfg) {
  Suite suite("best_response_stability", 1e-9, cfg);
  const auto params = MarketParams::make(3.5, 0.1, 0.5);
  const auto angle = EntanglementAngle::maximal();
  const auto q = quantum_candidate_prices(params);

  const auto toward_q1 = br_dynamics(params, angle, {1.8, 1.8});
  const auto& last = toward_q1.path.back();
  const double err = std::max(std::abs(last.p1 - q[0].p1), std::abs(last.p2 - q[0].p2));
  suite.check(toward_q1.converged && err <= suite.tol() && toward_q1.path.size() <= 201,
              [&] { return "from (1.8,1.8): " + std::string(to_string(toward_q1.exit)) + " err " + fmt(err); });

  DynamicsConfig short_run;
  short_run.max_iters = 20;
  const auto away = br_dynamics(params, angle, {0.34, 0.34}, short_run);
  const bool escaped = std::any_of(away.path.begin(), away.path.end(), [&](const PricePair& p) {
    return std::max(std::abs(p.p1 - q[1].p1), std::abs(p.p2 - q[1].p2)) > 1e-3;
  });
  suite.check(escaped, [&] { return std::string("from (0.34,0.34): stayed near q2 for 20 iterations"); });
  return suite.take();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failed == 0; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const auto& s : suites) {
    os << (s.failed == 0 ? "PASS " : "FAIL ") << s.name << ": " << s.checked << " checked, " << s.failed
       << " failed (tol " << tol_text(s.tolerance) << ")\n";
  }
  std::size_t shown = 0;
  for (const auto& s : suites) {
    for (const auto& e : s.counterexamples) {
      if (shown == kMaxExamples) break;
      if (shown == 0) os << "counterexamples:\n";
      os << "  [" << s.name << "] " << e << '\n';
      ++shown;
    }
  }
  os << "verify: " << (passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  VerifyReport report;
  report.suites.push_back(state_fidelity(cfg));
  report.suites.push_back(payoff_paths(cfg));
  report.suites.push_back(reductions(cfg));
  report.suites.push_back(symmetries(cfg));
  report.suites.push_back(best_response_oracle(cfg));
  report.suites.push_back(curvature(cfg));
  report.suites.push_back(closed_forms(cfg));
  report.suites.push_back(candidate_recovery(cfg));
  report.suites.push_back(figure1_claim(cfg));
  report.suites.push_back(stability(cfg));
  return report;
}

}  // namespace qbertrand

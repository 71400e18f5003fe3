// qbertrand: command-line front end over the C API.
//
//   qbertrand payoff      --a 3.5 --c 0.1 --b 0.5 --gamma 0.785398163397 --p1 2 --p2 2
//   qbertrand equilibrium --b 0.5 --max-entangled
//   qbertrand sweep       --figure 1 --output fig1.csv
//   qbertrand verify      --seed 42
//
// Exit codes: 0 success, 1 runtime/domain failure, 2 usage error.

#include "qbertrand/qbertrand.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  double a = 3.5;
  double c = 0.1;
  double b = 0.5;
  std::optional<double> gamma;
  bool max_entangled = false;
  std::string output;
  std::string format = "csv";
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;

  double p1 = 0.0, p2 = 0.0;

  int figure = 1;
  double b_min = 0.01, b_max = 0.99;
  int steps = 99;
  int threads = 1;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Validation failures on user-supplied values are usage errors; everything
// else the library reports is a runtime failure.
int report(qb_status status) {
  std::cerr << "error: " << qb_last_error() << '\n';
  return status == QB_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
}

using ModelPtr = std::unique_ptr<qb_model, decltype(&qb_model_destroy)>;

qb_status make_model(const Options& o, ModelPtr& out) {
  qb_model* raw = nullptr;
  const qb_status st = (o.max_entangled || !o.gamma) ? qb_model_create_max_entangled(o.a, o.c, o.b, &raw)
                                                     : qb_model_create(o.a, o.c, o.b, *o.gamma, &raw);
  out.reset(raw);
  return st;
}

std::ostream& sink(const Options& o, std::ofstream& file) {
  if (o.output.empty()) return std::cout;
  file.open(o.output, std::ios::binary | std::ios::trunc);
  return file;
}

int emit(const Options& o, const std::string& text) {
  std::ofstream file;
  std::ostream& os = sink(o, file);
  if (!os) {
    std::cerr << "error: cannot open " << o.output << " for writing\n";
    return kExitFailure;
  }
  os << text;
  os.flush();
  if (!os) {
    std::cerr << "error: failed writing " << o.output << '\n';
    return kExitFailure;
  }
  return 0;
}

int cmd_payoff(const Options& o) {
  ModelPtr model(nullptr, qb_model_destroy);
  if (auto st = make_model(o, model); st != QB_OK) return report(st);
  double uA = 0, uB = 0;
  if (auto st = qb_quantum_payoff(model.get(), o.p1, o.p2, &uA, &uB); st != QB_OK) return report(st);

  if (o.format == "json") {
    nlohmann::json j = {{"p1", o.p1}, {"p2", o.p2}, {"uA", uA}, {"uB", uB}};
    return emit(o, j.dump(2) + "\n");
  }
  return emit(o, "uA = " + num(uA) + "\nuB = " + num(uB) + "\n");
}

int cmd_equilibrium(const Options& o) {
  ModelPtr model(nullptr, qb_model_destroy);
  if (auto st = make_model(o, model); st != QB_OK) return report(st);
  qb_candidates* raw = nullptr;
  if (auto st = qb_equilibrium_report(model.get(), &raw); st != QB_OK) {
    std::cerr << "error: " << qb_last_error() << '\n';
    return kExitFailure;
  }
  std::unique_ptr<qb_candidates, decltype(&qb_candidates_destroy)> list(raw, qb_candidates_destroy);

  nlohmann::json rows = nlohmann::json::array();
  std::string text = "label,p1,p2,uA,uB,physical,concave,stable,nash\n";
  const size_t n = qb_candidates_count(list.get());
  for (size_t i = 0; i < n; ++i) {
    qb_candidate c{};
    qb_candidates_get(list.get(), i, &c);
    const bool concave = c.concave_A && c.concave_B;
    rows.push_back({{"label", c.label},
                    {"p1", c.p1},
                    {"p2", c.p2},
                    {"uA", c.uA},
                    {"uB", c.uB},
                    {"foc_residual", c.foc_residual},
                    {"curvature_A", c.curvature_A},
                    {"curvature_B", c.curvature_B},
                    {"spectral_radius", c.spectral_radius},
                    {"physical", bool(c.physical)},
                    {"concave_A", bool(c.concave_A)},
                    {"concave_B", bool(c.concave_B)},
                    {"boundary_dominant", bool(c.boundary_dominant)},
                    {"stable", bool(c.stable)},
                    {"nash", bool(c.nash)}});
    text += std::string(c.label) + "," + num(c.p1) + "," + num(c.p2) + "," + num(c.uA) + "," + num(c.uB) + "," +
            (c.physical ? "physical" : "non-physical") + "," + (concave ? "concave" : "non-concave") + "," +
            (c.stable ? "stable" : "unstable") + "," + (c.nash ? "NE" : "-") + "\n";
  }
  if (o.format == "json") return emit(o, rows.dump(2) + "\n");
  return emit(o, text);
}

int cmd_sweep(const Options& o) {
  qb_sweep_spec spec;
  qb_sweep_spec_default(&spec);
  spec.a = o.a;
  spec.c = o.c;
  spec.b_min = o.b_min;
  spec.b_max = o.b_max;
  spec.steps = o.steps;
  spec.figure = o.figure;
  spec.threads = o.threads;
  spec.max_entangled = o.max_entangled || !o.gamma;
  if (o.gamma) spec.gamma = *o.gamma;

  qb_sweep* raw = nullptr;
  if (auto st = qb_sweep_run(&spec, &raw); st != QB_OK) return report(st);
  std::unique_ptr<qb_sweep, decltype(&qb_sweep_destroy)> sweep(raw, qb_sweep_destroy);

  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    const size_t cols = qb_sweep_columns(sweep.get());
    for (size_t r = 0; r < qb_sweep_rows(sweep.get()); ++r) {
      nlohmann::json row = nlohmann::json::object();
      for (size_t c = 0; c < cols; ++c) row[qb_sweep_header(sweep.get(), c)] = qb_sweep_value(sweep.get(), r, c);
      rows.push_back(row);
    }
    return emit(o, rows.dump(2) + "\n");
  }
  if (o.output.empty()) {
    std::cout << qb_sweep_csv(sweep.get());
    return 0;
  }
  if (auto st = qb_sweep_write_csv(sweep.get(), o.output.c_str()); st != QB_OK) {
    std::cerr << "error: " << qb_last_error() << '\n';
    return kExitFailure;
  }
  return 0;
}

int cmd_verify(const Options& o) {
  qb_verify_report* raw = nullptr;
  const std::uint64_t seed = o.seed.value_or(qb_verify_default_seed());
  if (auto st = qb_verify_run(o.tolerance ? 1 : 0, o.tolerance.value_or(0.0), seed, &raw); st != QB_OK) {
    std::cerr << "error: " << qb_last_error() << '\n';
    return kExitFailure;
  }
  std::unique_ptr<qb_verify_report, decltype(&qb_verify_destroy)> rep(raw, qb_verify_destroy);
  const bool passed = qb_verify_passed(rep.get());

  int rc = 0;
  if (o.format == "json") {
    nlohmann::json suites = nlohmann::json::array();
    for (size_t i = 0; i < qb_verify_suite_count(rep.get()); ++i) {
      const char* name = nullptr;
      int checked = 0, failed = 0;
      double tol = 0;
      qb_verify_suite(rep.get(), i, &name, &checked, &failed, &tol);
      suites.push_back({{"name", name}, {"checked", checked}, {"failed", failed}, {"tolerance", tol}});
    }
    nlohmann::json j = {{"seed", seed}, {"passed", passed}, {"suites", suites}};
    rc = emit(o, j.dump(2) + "\n");
  } else {
    rc = emit(o, qb_verify_text(rep.get()));
  }
  if (rc != 0) return rc;
  return passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Bertrand duopoly: payoffs, equilibria, figure sweeps and self-verification"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--a", o.a, "demand intercept")->capture_default_str();
  app.add_option("--c", o.c, "marginal cost")->capture_default_str();
  app.add_option("--b", o.b, "substitution parameter, 0 < b < 1")->capture_default_str();
  auto* gamma = app.add_option("--gamma", o.gamma, "entanglement angle in radians, [0, pi] (default pi/4)");
  app.add_flag("--max-entangled", o.max_entangled, "use gamma = pi/4 exactly")->excludes(gamma);
  app.add_option("--output", o.output, "write output to this file instead of stdout");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--tolerance", o.tolerance, "verify: replace every suite tolerance");
  app.add_option("--seed", o.seed, "verify: grid seed");

  auto* payoff = app.add_subcommand("payoff", "quantum payoffs at a price pair");
  payoff->add_option("--p1", o.p1, "firm A price")->required();
  payoff->add_option("--p2", o.p2, "firm B price")->required();

  auto* equilibrium = app.add_subcommand("equilibrium", "equilibrium candidates and their diagnostics");

  auto* sweep = app.add_subcommand("sweep", "payoff-vs-b data for figure 1 or 2");
  sweep->add_option("--figure", o.figure, "1: NE payoffs, 2: payoffs at q2..q4")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  sweep->add_option("--b-min", o.b_min)->capture_default_str();
  sweep->add_option("--b-max", o.b_max)->capture_default_str();
  sweep->add_option("--steps", o.steps)->capture_default_str();
  sweep->add_option("--threads", o.threads)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run every invariant and oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*payoff) return cmd_payoff(o);
  if (*equilibrium) return cmd_equilibrium(o);
  if (*sweep) return cmd_sweep(o);
  if (*verify) return cmd_verify(o);
  return kExitUsage;
}

#include "qbertrand/qbertrand.h"

#include "qbertrand/equilibrium.hpp"
#include "qbertrand/error.hpp"
#include "qbertrand/figures.hpp"
#include "qbertrand/quantum_engine.hpp"
#include "qbertrand/response_dynamics.hpp"
#include "qbertrand/verify.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <memory>
#include <exception>
#include <new>
#include <string>
#include <vector>

using namespace qbertrand;

struct qb_model {
  MarketParams params;
  EntanglementAngle angle;
};

struct qb_candidates {
  std::vector<qb_candidate> items;
};

struct qb_sweep {
  SweepTable table;
  std::string csv;
};

struct qb_verify_report {
  VerifyReport report;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

qb_status fail(qb_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class Body>
qb_status guarded(Body&& body) {
  try {
    body();
    return QB_OK;
  } catch (const Error& e) {
    return fail(static_cast<qb_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QB_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

qb_candidate to_c(const EquilibriumCandidate& c) {
  qb_candidate out{};
  const auto label = to_string(c.label);
  std::memcpy(out.label, label.data(), std::min(label.size(), sizeof out.label - 1));
  out.p1 = c.prices.p1;
  out.p2 = c.prices.p2;
  out.uA = c.payoffs.uA;
  out.uB = c.payoffs.uB;
  out.foc_residual = c.foc_residual;
  out.curvature_A = c.curvature_A;
  out.curvature_B = c.curvature_B;
  out.spectral_radius = c.spectral_radius;
  out.concave_A = c.concave_A;
  out.concave_B = c.concave_B;
  out.physical = c.physical;
  out.boundary_dominant = c.boundary_dominant;
  out.stable = c.stable;
  out.nash = c.nash();
  return out;
}

qb_reaction to_c(const ReactionResult& r) {
  return {r.price, r.clamped_price, r.second_derivative, r.concavity_ok ? 1 : 0, r.boundary ? 1 : 0};
}

}  // namespace

extern "C" {

const char* qb_last_error(void) { return g_last_error.c_str(); }

const char* qb_status_string(qb_status status) {
  switch (status) {
    case QB_OK: return "ok";
    case QB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QB_ERR_DOMAIN: return "domain error";
    case QB_ERR_DEGENERATE: return "degenerate response";
    case QB_ERR_COMPLEX_CANDIDATES: return "complex candidates";
    case QB_ERR_NON_CONVERGENCE: return "non-convergence";
    case QB_ERR_SINGULAR: return "singular jacobian";
    case QB_ERR_EVALUATION: return "evaluation error";
    case QB_ERR_IO: return "i/o error";
    case QB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qb_status qb_model_create(double a, double c, double b, double gamma, qb_model** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qb_model{MarketParams::make(a, c, b), EntanglementAngle::from_radians(gamma)};
  });
}

qb_status qb_model_create_max_entangled(double a, double c, double b, qb_model** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qb_model{MarketParams::make(a, c, b), EntanglementAngle::maximal()};
  });
}

void qb_model_destroy(qb_model* model) { delete model; }

qb_status qb_model_get(const qb_model* model, double* a, double* c, double* b, double* gamma) {
  return guarded([&] {
    require(model, "model");
    if (a) *a = model->params.a;
    if (c) *c = model->params.c;
    if (b) *b = model->params.b;
    if (gamma) *gamma = model->angle.radians();
  });
}

qb_status qb_classical_profit(const qb_model* model, double p1, double p2, double* uA, double* uB) {
  return guarded([&] {
    require(model, "model");
    require(uA, "uA");
    require(uB, "uB");
    const auto u = classical_profit(model->params, {p1, p2});
    *uA = u.first;
    *uB = u.second;
  });
}

qb_status qb_quantum_payoff(const qb_model* model, double p1, double p2, double* uA, double* uB) {
  return guarded([&] {
    require(model, "model");
    require(uA, "uA");
    require(uB, "uB");
    const auto u = quantum_payoff(model->params, {p1, p2}, model->angle);
    *uA = u.uA;
    *uB = u.uB;
  });
}

qb_status qb_quantum_payoff_via_state(const qb_model* model, double p1, double p2, double* uA, double* uB) {
  return guarded([&] {
    require(model, "model");
    require(uA, "uA");
    require(uB, "uB");
    const auto u = quantum_payoff_via_state(model->params, {p1, p2}, model->angle);
    *uA = u.uA;
    *uB = u.uB;
  });
}

qb_status qb_density_elements_closed(const qb_model* model, double p1, double p2, qb_density_elements* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto e = density_elements_closed({p1, p2}, model->angle);
    *out = {e.rho11, e.rho14, e.rho22, e.rho23, e.rho33, e.rho44, e.normalizer};
  });
}

qb_status qb_evolved_state(const qb_model* model, double p1, double p2, double out[16]) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto rho = evolve_state(initial_state(model->angle), price_to_prob({p1, p2}));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[4 * r + c] = rho.entries(r, c);
  });
}

qb_status qb_reaction_analytic(const qb_model* model, double opponent_price, qb_reaction* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = to_c(best_response(model->params, opponent_price, model->angle));
  });
}

qb_status qb_reaction_numerical(const qb_model* model, double opponent_price, double search_max, qb_reaction* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const double smax = search_max > 0.0 ? search_max : default_search_max(model->params);
    *out = to_c(numerical_reaction(model->params, opponent_price, model->angle, smax));
  });
}

qb_status qb_equilibrium_report(const qb_model* model, qb_candidates** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    auto list = std::make_unique<qb_candidates>();
    for (const auto& c : equilibrium_report(model->params, model->angle)) list->items.push_back(to_c(c));
    *out = list.release();
  });
}

size_t qb_candidates_count(const qb_candidates* list) { return list ? list->items.size() : 0; }

qb_status qb_candidates_get(const qb_candidates* list, size_t index, qb_candidate* out) {
  return guarded([&] {
    require(list, "list");
    require(out, "out");
    if (index >= list->items.size()) throw Error(ErrorCode::InvalidArgument, "candidate index out of range");
    *out = list->items[index];
  });
}

void qb_candidates_destroy(qb_candidates* list) { delete list; }

void qb_sweep_spec_default(qb_sweep_spec* spec) {
  if (!spec) return;
  const SweepSpec d;
  *spec = {d.b_min, d.b_max, d.steps, d.a, d.c, d.gamma.radians(), 1, d.figure, d.threads};
}

qb_status qb_sweep_run(const qb_sweep_spec* spec, qb_sweep** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    SweepSpec s;
    s.b_min = spec->b_min;
    s.b_max = spec->b_max;
    s.steps = spec->steps;
    s.a = spec->a;
    s.c = spec->c;
    s.gamma = spec->max_entangled ? EntanglementAngle::maximal() : EntanglementAngle::from_radians(spec->gamma);
    s.figure = spec->figure;
    s.threads = spec->threads;
    auto sweep = std::make_unique<qb_sweep>();
    sweep->table = run_sweep(s);
    sweep->csv = to_csv(sweep->table);
    *out = sweep.release();
  });
}

size_t qb_sweep_rows(const qb_sweep* sweep) { return sweep ? sweep->table.rows.size() : 0; }

size_t qb_sweep_columns(const qb_sweep* sweep) { return sweep ? sweep->table.header.size() : 0; }

const char* qb_sweep_header(const qb_sweep* sweep, size_t column) {
  if (!sweep || column >= sweep->table.header.size()) return nullptr;
  return sweep->table.header[column].c_str();
}

double qb_sweep_value(const qb_sweep* sweep, size_t row, size_t column) {
  if (!sweep || row >= sweep->table.rows.size() || column >= sweep->table.rows[row].size()) return std::numeric_limits<double>::quiet_NaN();
  return sweep->table.rows[row][column];
}

const char* qb_sweep_csv(const qb_sweep* sweep) { return sweep ? sweep->csv.c_str() : nullptr; }

qb_status qb_sweep_write_csv(const qb_sweep* sweep, const char* path) {
  return guarded([&] {
    require(sweep, "sweep");
    require(path, "path");
    write_csv(sweep->table, path);
  });
}

void qb_sweep_destroy(qb_sweep* sweep) { delete sweep; }

qb_status qb_verify_run(int has_tolerance, double tolerance, uint64_t seed, qb_verify_report** out) {
  return guarded([&] {
    require(out, "out");
    VerifyConfig cfg;
    if (has_tolerance) cfg.tolerance = tolerance;
    cfg.seed = seed;
    auto r = std::make_unique<qb_verify_report>();
    r->report = run_verify(cfg);
    r->text = r->report.to_text();
    *out = r.release();
  });
}

uint64_t qb_verify_default_seed(void) { return kDefaultSeed; }

int qb_verify_passed(const qb_verify_report* report) { return report && report->report.passed() ? 1 : 0; }

const char* qb_verify_text(const qb_verify_report* report) { return report ? report->text.c_str() : nullptr; }

size_t qb_verify_suite_count(const qb_verify_report* report) { return report ? report->report.suites.size() : 0; }

qb_status qb_verify_suite(const qb_verify_report* report, size_t index, const char** name, int* checked, int* failed,
                          double* tolerance) {
  return guarded([&] {
    require(report, "report");
    if (index >= report->report.suites.size()) throw Error(ErrorCode::InvalidArgument, "suite index out of range");
    const auto& s = report->report.suites[index];
    if (name) *name = s.name.c_str();
    if (checked) *checked = s.checked;
    if (failed) *failed = s.failed;
    if (tolerance) *tolerance = s.tolerance;
  });
}

void qb_verify_destroy(qb_verify_report* report) { delete report; }

}  // extern "C"

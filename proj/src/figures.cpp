#include "qbertrand/figures.hpp"

#include "qbertrand/equilibrium.hpp"
#include "qbertrand/error.hpp"
#include "qbertrand/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <thread>

namespace qbertrand {

namespace {

std::vector<double> figure1_row(const SweepSpec& spec, double b) {
  const auto params = MarketParams::make(spec.a, spec.c, b);
  const double u_classical = classical_equilibrium(params).payoffs.uA;
  double u_quantum = std::numeric_limits<double>::quiet_NaN();
  if (spec.gamma.is_maximal()) {
    u_quantum = q1_payoff_closed(params);
  } else {
    for (const auto& r : solve_numeric(params, spec.gamma, default_seeds(params)).roots) {
      if (r.nash() && !(r.payoffs.uA <= u_quantum)) u_quantum = r.payoffs.uA;
    }
  }
  return {b, u_classical, u_quantum};
}

std::vector<double> figure2_row(const SweepSpec& spec, double b) {
  const auto params = MarketParams::make(spec.a, spec.c, b);
  const double u2 = q2_payoff_closed(params);
  const auto u3 = asymmetric_payoff_closed(params, +1);
  const auto u4 = asymmetric_payoff_closed(params, -1);
  return {b, u2, u2, u3.first, u3.second, u4.first, u4.second};
}

}  // namespace

void SweepSpec::validate() const {
  if (!(b_min > 0.0 && b_min < b_max && b_max < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sweep range must satisfy 0 < b_min < b_max < 1");
  }
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs at least 2 steps");
  if (figure != 1 && figure != 2) throw Error(ErrorCode::InvalidArgument, "figure must be 1 or 2");
  if (figure == 2 && !gamma.is_maximal()) {
    throw Error(ErrorCode::InvalidArgument, "figure 2 candidates exist only at maximal entanglement");
  }
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be at least 1");
  MarketParams::make(a, c, b_min);
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable table;
  table.figure = spec.figure;
  if (spec.figure == 1) {
    table.header = {"b", "u_classical", "u_quantum_q1"};
  } else {
    table.header = {"b", "uA_q2", "uB_q2", "uA_q3", "uB_q3", "uA_q4", "uB_q4"};
  }

  const auto bs = numerics::linspace(spec.b_min, spec.b_max, spec.steps);
  table.rows.resize(bs.size());
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      table.rows[i] = spec.figure == 1 ? figure1_row(spec, bs[i]) : figure2_row(spec, bs[i]);
    }
  };

  const auto n = bs.size();
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(spec.threads), n);
  if (workers <= 1) {
    fill(0, n);
    return table;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) continue;
      pool.emplace_back([&, w, begin, end] {
        try {
          fill(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const SweepTable& table, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  os << to_csv(table);
  os.flush();
  if (!os) throw Error(ErrorCode::Io, "failed writing " + path);
}

}  // namespace qbertrand

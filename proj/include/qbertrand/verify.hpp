#ifndef QBERTRAND_VERIFY_HPP
#define QBERTRAND_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qbertrand {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Deterministic uniform sampler. Draws are built from raw mt19937_64 output
/// so sequences are identical across standard library implementations.
class FixedSeedSampler {
public:
  explicit FixedSeedSampler(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform on the open interval (lo, hi).
  double open(double lo, double hi) {
    double v = uniform(lo, hi);
    while (v <= lo) v = uniform(lo, hi);
    return v;
  }

private:
  std::mt19937_64 engine_;
};

struct VerifyConfig {
  std::optional<double> tolerance;  // replaces every suite tolerance when set
  std::uint64_t seed = kDefaultSeed;
};

struct SuiteResult {
  std::string name;
  double tolerance = 0.0;
  int checked = 0;
  int failed = 0;
  std::vector<std::string> counterexamples;  // at most 10 kept per suite
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  /// Per-suite counts, then the first 10 counterexamples overall.
  std::string to_text() const;
};

/// Runs every invariant and oracle suite: state fidelity, payoff path
/// equivalence, limit reductions, symmetries, best-response oracle,
/// curvature, closed-form candidates, numerical candidate recovery, the
/// figure 1 ordering, and best-response stability.
VerifyReport run_verify(const VerifyConfig& cfg = {});

}  // namespace qbertrand

#endif

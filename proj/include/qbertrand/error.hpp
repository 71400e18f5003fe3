#ifndef QBERTRAND_ERROR_HPP
#define QBERTRAND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qbertrand {

// Numeric values are mirrored by qb_status in qbertrand.h.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Domain = 2,
  Degenerate = 3,
  ComplexCandidates = 4,
  NonConvergence = 5,
  Singular = 6,
  Evaluation = 7,
  Io = 8,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Thrown when a firm's payoff is linear in its own price, so there is no
// interior optimum. slope_sign is the sign of the remaining linear slope.
class DegenerateResponse : public Error {
public:
  DegenerateResponse(const std::string& what, int slope_sign)
      : Error(ErrorCode::Degenerate, what), slope_sign_(slope_sign) {}
  int slope_sign() const noexcept { return slope_sign_; }

private:
  int slope_sign_;
};

// Evaluation error carrying the abscissa that produced a non-finite value.
class EvaluationError : public Error {
public:
  EvaluationError(const std::string& what, double at)
      : Error(ErrorCode::Evaluation, what), at_(at) {}
  double at() const noexcept { return at_; }

private:
  double at_;
};

}  // namespace qbertrand

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace kdvlab {

// Failure classes that callers (and the CLI exit-code map) tell apart.
enum class ErrorCode {
  Config = 2,        // bad configuration / usage contract violation
  NonContractive = 3,// linear iteration refuses to contract
  NoConvergence = 4, // fixed point not reached (includes ball escape)
  Budget = 5,        // resource/stability budget exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};
struct NonContractiveError : Error {
  explicit NonContractiveError(const std::string& w)
      : Error(ErrorCode::NonContractive, w) {}
};
struct NoConvergenceError : Error {
  explicit NoConvergenceError(const std::string& w)
      : Error(ErrorCode::NoConvergence, w) {}
};
struct BudgetError : Error {
  explicit BudgetError(const std::string& w) : Error(ErrorCode::Budget, w) {}
};

}  // namespace kdvlab

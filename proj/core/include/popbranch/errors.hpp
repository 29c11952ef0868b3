#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace popbranch {

enum class Errc {
  Syntax,
  Semantic,
  IdClash,
  WrongHead,
  Unreachable,
  NotWeakRanking,
  NotStrictRanking,
  TooLarge,
  BadParams,
  BadFormula,
  BadInput,
  Unsatisfied,
  NotAPath,
  InfeasiblePoint,
  SupportTooLarge,
  BudgetExceeded,
};

std::string_view errc_name(Errc code) noexcept;

/// All library failures are reported through this type; `code()` selects the
/// failure class, `what()` carries a human-readable explanation.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace popbranch

#include "popbranch/errors.hpp"

namespace popbranch {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Syntax: return "SyntaxError";
    case Errc::Semantic: return "SemanticError";
    case Errc::IdClash: return "IdClash";
    case Errc::WrongHead: return "WrongHead";
    case Errc::Unreachable: return "Unreachable";
    case Errc::NotWeakRanking: return "NotWeakRanking";
    case Errc::NotStrictRanking: return "NotStrictRanking";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadParams: return "BadParams";
    case Errc::BadFormula: return "BadFormula";
    case Errc::BadInput: return "BadInput";
    case Errc::Unsatisfied: return "Unsatisfied";
    case Errc::NotAPath: return "NotAPath";
    case Errc::InfeasiblePoint: return "InfeasiblePoint";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
  }
  return "Error";
}

}  // namespace popbranch

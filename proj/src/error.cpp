#include "equilog/error.hpp"

namespace equilog {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::precision_exhausted: return "precision-exhausted";
    case ErrorKind::budget_exhausted: return "budget-exhausted";
    case ErrorKind::certification_failed: return "certification-failed";
    case ErrorKind::no_solution: return "no-solution-found-within-budget";
    case ErrorKind::search_range_exhausted: return "search-range-exhausted";
    case ErrorKind::precondition: return "precondition-violation";
    case ErrorKind::conjugate_inputs: return "conjugate-inputs";
    case ErrorKind::padic_context_unavailable: return "padic-context-unavailable";
    case ErrorKind::ramified_or_unseparable: return "ramified-or-unseparable";
    case ErrorKind::vanishing_input: return "vanishing-input";
    case ErrorKind::nonintegral_element: return "nonintegral-element";
    case ErrorKind::factorization_inconclusive: return "factorization-inconclusive";
    case ErrorKind::no_squarefree_prime: return "no-squarefree-prime-found";
    case ErrorKind::grid_degenerate: return "grid-degenerate";
    case ErrorKind::assembly_invariant: return "assembly-invariant-violated";
    case ErrorKind::degenerate_n: return "degenerate-n";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace equilog

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equilog {

enum class ErrorKind {
  precision_exhausted,
  budget_exhausted,
  certification_failed,
  no_solution,
  search_range_exhausted,
  precondition,
  conjugate_inputs,
  padic_context_unavailable,
  ramified_or_unseparable,
  vanishing_input,
  nonintegral_element,
  factorization_inconclusive,
  no_squarefree_prime,
  grid_degenerate,
  assembly_invariant,
  degenerate_n,
  parse,
  internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Budget and precision exhaustion are resource errors, not mathematical ones.
  bool is_resource() const noexcept {
    return kind_ == ErrorKind::precision_exhausted || kind_ == ErrorKind::budget_exhausted;
  }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace equilog

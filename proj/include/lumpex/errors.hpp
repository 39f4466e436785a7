#pragma once

#include <stdexcept>
#include <string>

namespace lumpex {

/// The family W_κ(Y,E) is empty: the graph is not strongly connected, or some
/// row of a lumped block has no edge into the target class.
class VacuousFamilyError : public std::domain_error {
 public:
  explicit VacuousFamilyError(const std::string& what)
      : std::domain_error(what) {}
};

/// Power iteration did not settle within its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace lumpex

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topospin {

enum class ErrorKind { validation, budget, zero_phi, division_by_zero };

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries every violated invariant, not just the first one found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  explicit ValidationError(const std::string& problem)
      : ValidationError(std::vector<std::string>{problem}) {}
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::budget, what) {}
};

class ZeroPhi : public Error {
 public:
  explicit ZeroPhi(const std::string& what) : Error(ErrorKind::zero_phi, what) {}
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error(ErrorKind::division_by_zero, what) {}
};

}  // namespace topospin

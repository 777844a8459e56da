#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Invalid user input: malformed files, bad CLI arguments, violated
// preconditions on externally supplied data.  CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap was hit (vertex budget, enumeration budget,
// iteration caps).  CLI maps this to exit code 3.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical routine failed to reach its required accuracy.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_residual(achieved) {}
  double achieved_residual;
};

}  // namespace steklov

#pragma once

#include <stdexcept>
#include <string>

namespace instanton {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, double at)
      : std::runtime_error(what + " at x=" + std::to_string(at)), location(at) {}
  double location;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
        achieved(achieved) {}
  double achieved;
};

}  // namespace instanton

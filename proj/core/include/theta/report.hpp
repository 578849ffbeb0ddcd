#pragma once

#include <string>
#include <vector>

namespace theta {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool exact = false;  // integer identity: residual is 0 or 1
  bool pass = false;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  double max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = r < c.residual ? c.residual : r;
    return r;
  }
  void add(std::string name, double residual, double tolerance) {
    checks.push_back({std::move(name), residual, tolerance, false, residual < tolerance});
  }
  void add_exact(std::string name, bool ok) {
    checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, true, ok});
  }
  void append(const Report& other) {
    for (const auto& c : other.checks) {
      Check copy = c;
      copy.name = other.suite + "/" + c.name;
      checks.push_back(std::move(copy));
    }
  }
};

}  // namespace theta

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rdsim {

/// Violated precondition on shapes or grids (programming error on the caller side).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input data unusable for a fit or reduction (nonpositive samples, degenerate abscissae).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver breakdown. Carries the time, species and offending value when known.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what, double time = 0.0, int species = -1,
                            double value = 0.0)
      : std::runtime_error(what), time_(time), species_(species), value_(value) {}

  double time() const noexcept { return time_; }
  int species() const noexcept { return species_; }
  double value() const noexcept { return value_; }

 private:
  double time_;
  int species_;
  double value_;
};

/// Configuration rejected. Holds every validation message, each prefixed by its field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

}  // namespace rdsim

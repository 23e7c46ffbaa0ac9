#pragma once

#include <stdexcept>
#include <string>

namespace scorevote {

// An enumeration, search space or cover exceeded its configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what, long long explored = -1)
      : std::runtime_error(what), explored_(explored) {}
  long long explored() const { return explored_; }

 private:
  long long explored_;
};

// An iterative numeric routine failed to converge; carries the final residual.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace scorevote

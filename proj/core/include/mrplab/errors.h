#pragma once

#include <stdexcept>
#include <string>

namespace mrplab {

// Malformed input: bad MRP file, broken invariants, mismatched path.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size or time cap was hit.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(std::string cap, const std::string& what)
      : std::runtime_error(what), cap_(std::move(cap)) {}
  const std::string& cap() const { return cap_; }

 private:
  std::string cap_;
};

// Counts that admit no path decomposition.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure (singular system on a spec that should be solvable).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mrplab

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace squine {

// Thrown when a residue has no inverse (gcd(k, b) != 1).
class not_invertible_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Thrown when an input carries fewer decimal digits than the planner
// requires. `required_digits` is the minimal sufficient count.
class precision_error : public std::runtime_error {
public:
  precision_error(std::uint64_t required, const std::string& what)
      : std::runtime_error(what), required_digits(required) {}
  std::uint64_t required_digits;
};

// Floor extraction would be ambiguous: the sum lies within its own error
// bound of an integer. Prop-2.1-style fractional parts keep the sum well
// clear of integers, so this firing indicates a bug upstream.
class ambiguous_floor_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// term_rational_fast called with k <= k0; caller must use the slow path.
class fast_path_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// weps_demo found no admissible denominator below the search bound.
class not_found_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace squine

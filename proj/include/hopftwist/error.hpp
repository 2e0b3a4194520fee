#pragma once

#include <stdexcept>
#include <string>

namespace hopftwist {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or mathematically invalid input (bad schema, non-group table,
// singular matrix where regular required, ...).  CLI exit code 2.
struct invalid_input : error {
  using error::error;
};

// A verification that was asked for failed; the message carries a witness.
// CLI exit code 1.
struct check_failure : error {
  using error::error;
};

// A configured resource bound (dimension, conductor, subgroup count, ...)
// was exceeded.  CLI exit code 3.
struct resource_limit : error {
  using error::error;
};

}  // namespace hopftwist

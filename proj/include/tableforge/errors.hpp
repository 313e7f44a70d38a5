#pragma once

#include <stdexcept>
#include <string>

namespace tableforge {

// Base class for all harness errors so callers can catch broadly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tableforge

#pragma once

#include <stdexcept>
#include <string>

namespace glab {

// An operation was called with inputs outside its stated contract.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Serialized input could not be understood.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource cap (relevant bits, search width, ...) was exceeded.
// Never an approximation: the caller either raises the cap or gives up.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glab

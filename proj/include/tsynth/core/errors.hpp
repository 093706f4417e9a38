#pragma once

#include <stdexcept>
#include <string>

namespace tsynth {

// Malformed input: bad JSON, unknown names, sort errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input parses but violates a semantic requirement of the model.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search exceeded its node budget.
struct ResourceError : std::runtime_error {
  ResourceError(const std::string &msg, std::size_t frontier)
      : std::runtime_error(msg), frontier_size(frontier) {}
  std::size_t frontier_size;
};

// Internal invariant broken; indicates a bug rather than bad input.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace tsynth

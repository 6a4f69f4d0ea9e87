#pragma once

#include <stdexcept>
#include <string>

namespace zeck {

// Bad input to a public operation (n = 0, malformed seating, unknown token).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

// A move whose count precondition does not hold in the current state.
class IllegalMove : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GameOver : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Asked for a move in a terminal position.
class NoMove : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap (memo entries, reachable states) was exceeded.
class CapacityError : public std::runtime_error {
public:
  CapacityError(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

// Something that the game's mathematics rules out happened anyway.
class InternalInvariant : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace zeck

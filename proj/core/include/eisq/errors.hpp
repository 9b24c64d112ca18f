#pragma once

#include <stdexcept>
#include <string>

namespace eisq {

/// Bad input: wrong congruence class, non-prime where a prime is required,
/// unsupported level and so on. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two computations that must agree did not. Always a bug, never bad input.
/// The CLI maps this to exit code 3.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured effort bound (factorization iterations, oracle cap, vertex
/// cap, 64-bit range) was exceeded. The CLI maps this to exit code 4.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EISQ_REQUIRE(cond, msg)                        \
  do {                                                 \
    if (!(cond)) throw ::eisq::ValidationError(msg);   \
  } while (0)

#define EISQ_CHECK(cond, msg)                          \
  do {                                                 \
    if (!(cond)) throw ::eisq::ConsistencyError(msg);  \
  } while (0)

}  // namespace eisq

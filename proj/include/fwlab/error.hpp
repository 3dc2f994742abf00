#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fwlab {

// Base for every error the library raises. Callers that only care about
// "input was bad" vs "a check failed" can catch the two subclasses below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad cycle strings, degree mismatches,
// generators outside the parent, wrong file contents.
class InputError : public Error {
 public:
  using Error::Error;
};

// H = 1 or H = G handed to an operation that needs 1 < H < G.
class DegenerateInputError : public InputError {
 public:
  using InputError::InputError;
};

// A theorem hypothesis does not hold for the supplied data. `witness`
// names the offending element or section in cycle notation when one exists.
class HypothesisError : public InputError {
 public:
  HypothesisError(const std::string& what, std::string witness)
      : InputError(what + (witness.empty() ? "" : " (witness: " + witness + ")")),
        witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::size_t reached)
      : Error(what + " (reached " + std::to_string(reached) + ")"), reached_(reached) {}

  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

}  // namespace fwlab

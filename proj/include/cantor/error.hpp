#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// bad input: malformed files, violated argument ranges
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// the mathematics says no (percon, mixing, perfectness ...). witness is a
// short human readable obstruction, e.g. "period 1".
class Refusal : public std::runtime_error {
 public:
  Refusal(std::string const& what, std::string witness = "")
      : std::runtime_error(what), witness_(std::move(witness)) {}
  std::string const& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace cantor

#pragma once

#include <stdexcept>
#include <string>

namespace dynacct {

// Malformed input files, illegal parameters, precondition violations on user data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact enumeration would exceed its configured cap.
class EnumerationRefused : public std::runtime_error {
 public:
  EnumerationRefused(const std::string& what, double branching)
      : std::runtime_error(what), branching_(branching) {}
  double branching() const { return branching_; }

 private:
  double branching_;
};

}  // namespace dynacct

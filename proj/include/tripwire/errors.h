#pragma once

#include <stdexcept>
#include <string>

namespace tripwire {

// Arguments outside an operation's domain (bad probability, angle, count...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A closed form is undefined at this point (p or q on {0,1}, P_str = 1, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Observed data that no hypothesis can explain.
class InconsistentData : public std::runtime_error {
 public:
  explicit InconsistentData(const std::string& what) : std::runtime_error(what) {}
};

class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tripwire

#pragma once

#include <stdexcept>
#include <string>

namespace rtd {

// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Current outside the range a resistance branch can carry.
class BranchRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InsufficientEntropy : public std::runtime_error {
 public:
  InsufficientEntropy() : std::runtime_error("insufficient entropy for requested security") {}
};

// Invalid configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rtd

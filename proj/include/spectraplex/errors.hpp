#pragma once

#include <stdexcept>
#include <string>

namespace spectraplex {

/// Malformed arguments: bad indices, mismatched lengths, negative budgets.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input outside the hypotheses an operation needs.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spectraplex

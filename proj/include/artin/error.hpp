#pragma once

#include <stdexcept>
#include <string>

namespace artin {

// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input is valid but exceeds a documented cost cap.
class RefusalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An internal cross-check (oracle vs. implementation) disagreed. Always a bug.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace artin

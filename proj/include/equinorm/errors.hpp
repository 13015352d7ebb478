#pragma once

#include <stdexcept>
#include <string>

namespace equinorm {

// Error taxonomy mirrored by the CLI exit codes:
//   ValidationError / InfeasibleError -> 2
//   SizeCapError                      -> 3
//   CertificateError                  -> 4
//   NumericError                      -> 5
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace equinorm

#pragma once

#include <stdexcept>
#include <string>

namespace pcepart {

/// Violated precondition or malformed argument (bad sizes, indices, config values).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be used (unparsable CSV, too few assets, zero variance).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded (qubit count, brute-force width).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcepart

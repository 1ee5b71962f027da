#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Error categories map onto CLI exit codes: config 2, contract 3, io 4.

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class ContractError : public std::runtime_error {
  public:
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qwalk

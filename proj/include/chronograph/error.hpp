#pragma once

#include <stdexcept>
#include <string>

namespace chronograph {

// Maps onto the CLI exit codes: config=2, input=3, stage=4.
enum class ErrorKind { Config = 2, Input = 3, Stage = 4 };

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

}  // namespace chronograph

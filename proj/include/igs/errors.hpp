// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace igs {

/// Invalid argument or precondition violation on a caller-supplied value.
class domain_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Floating-point result left its analytically guaranteed range, or an
/// internal numeric consistency check failed.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Config-text parse failure; message carries key and line when known.
class parse_error : public std::invalid_argument {
  public:
    explicit parse_error(const std::string& msg) : std::invalid_argument(msg), line_(0) {}
    parse_error(int line, const std::string& msg)
        : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const noexcept { return line_; }

  private:
    int line_;
};

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace igs

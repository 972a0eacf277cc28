#pragma once

#include <stdexcept>
#include <string>

namespace imagine {

/// Malformed text input (config files, checkpoints). Messages carry the
/// source location ("open5.cfg:12: ...") where one is known.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failure: missing file, unwritable path, short read.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace imagine

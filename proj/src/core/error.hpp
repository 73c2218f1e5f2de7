#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace herc {

// Error categories map 1:1 onto CLI exit codes / C API status values.
enum class ErrorKind { Validation = 1, Runtime = 2, Io = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  static Error validation(std::string msg) { return {ErrorKind::Validation, std::move(msg)}; }
  static Error runtime(std::string msg) { return {ErrorKind::Runtime, std::move(msg)}; }
  static Error io(std::string msg) { return {ErrorKind::Io, std::move(msg)}; }

 private:
  ErrorKind kind_;
};

}  // namespace herc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace growthlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A coefficient or weight file could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A function, space or command-line specification is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Geometric domination of a series tail could not be certified at the
/// requested truncation index.
class TailError : public Error {
 public:
  TailError(std::size_t k, const std::string& what)
      : Error("tail not certified at K=" + std::to_string(k) + ": " + what), k_(k) {}

  std::size_t index() const noexcept { return k_; }

 private:
  std::size_t k_;
};

/// A computation refused to proceed because a hypothesis failed
/// (mu-limit existence, undefined ratio, ...).
class Refusal : public Error {
 public:
  using Error::Error;
};

/// Numerical quadrature or optimisation did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what + " (achieved relative error " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace growthlab

#pragma once

#include <stdexcept>
#include <string>

namespace corrclust {

// Precondition or invariant broken by the caller.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Instance shape not covered by the algorithm (e.g. weighted input to the
// complete-graph rounder).
class UnsupportedInstance : public std::runtime_error {
 public:
  explicit UnsupportedInstance(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration combination the solver cannot honor (e.g. z-variables with
// the infinity norm).
class UnsupportedConfiguration : public std::runtime_error {
 public:
  explicit UnsupportedConfiguration(const std::string& msg) : std::runtime_error(msg) {}
};

// Brute-force enumeration refused because the instance exceeds the size guard.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// Every enumeration candidate crossed an uncuttable edge.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace corrclust

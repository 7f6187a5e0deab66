#pragma once

#include <stdexcept>
#include <string>

namespace involute {

enum class ErrorKind {
  Domain,           // argument or evaluation point outside the admissible set
  Unsupported,      // case not handled (e.g. a == 0, non-zero c coefficient)
  Degenerate,       // data makes the problem ill-posed (non-symmetric domain, zero-mean v, ...)
  NoUniqueSolution, // IVP initial time hits a zero of the homogeneous solution
  Resonant,         // BVP has a non-trivial homogeneous solution
  WrongCase,        // operation called with a problem of a different case
  NotGuaranteed,    // sufficient condition fails and the caller did not force
  Convergence,      // iteration did not converge
  Quadrature,       // adaptive quadrature hit its depth limit
  Syntax,           // expression parse error
  UnknownIdentifier,
  Evaluation,       // expression evaluation error (division by zero, ln of non-positive, ...)
  Singular,         // vanishing derivative in a change of variables
  CannotShoot,      // shooting map has no root / is flat
  Io,
};

const char* to_string(ErrorKind kind);

// Exit code the command-line front end maps each kind to.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse-time errors carry the byte offset into the source string.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
      : Error(kind, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace involute

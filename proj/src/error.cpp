#include "involute/error.hpp"

namespace involute {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NoUniqueSolution: return "no-unique-solution";
    case ErrorKind::Resonant: return "resonant";
    case ErrorKind::WrongCase: return "wrong-case";
    case ErrorKind::NotGuaranteed: return "not-guaranteed";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Quadrature: return "quadrature";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownIdentifier: return "unknown-identifier";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::CannotShoot: return "cannot-shoot";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Resonant:
    case ErrorKind::CannotShoot:
      return 3;
    case ErrorKind::Convergence:
    case ErrorKind::Quadrature:
      return 4;
    case ErrorKind::Syntax:
    case ErrorKind::UnknownIdentifier:
      return 5;
    case ErrorKind::Io:
      return 1;
    default:
      return 2;
  }
}

}  // namespace involute

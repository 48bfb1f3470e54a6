#pragma once

#include <stdexcept>
#include <string>

namespace certicurve {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside a curve domain, or a denominator vanishing inside it.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Root isolation asked of the zero polynomial.
class IndeterminateRoots : public Error {
 public:
  using Error::Error;
};

// Planar curves, straight lines and other inputs outside the supported class.
class UnsupportedCurve : public Error {
 public:
  using Error::Error;
};

class NotProper : public Error {
 public:
  using Error::Error;
};

class DegenerateTetrahedron : public Error {
 public:
  using Error::Error;
};

class NoCertifiedBound : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class TopologyUnresolved : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Error raised inside the certify pipeline, tagged with the failing stage.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace certicurve

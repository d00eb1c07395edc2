#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qgd {

namespace detail {

inline std::string with_magnitude(const char* what, double magnitude) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s (magnitude %.6e)", what, magnitude);
  return buf;
}

}  // namespace detail

// Base of every failure raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  explicit NotHermitian(double deviation)
      : Error(detail::with_magnitude("matrix is not Hermitian", deviation)),
        deviation(deviation) {}
  double deviation;
};

struct NotUnitTrace : Error {
  explicit NotUnitTrace(double deviation)
      : Error(detail::with_magnitude("matrix trace is not 1", deviation)),
        deviation(deviation) {}
  double deviation;
};

struct NotPSD : Error {
  explicit NotPSD(double min_eigenvalue)
      : Error(detail::with_magnitude("matrix is not positive semidefinite",
                                     min_eigenvalue)),
        min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

struct InvalidParams : Error {
  using Error::Error;
};

struct ParamOutOfRange : Error {
  using Error::Error;
};

struct BadAxis : Error {
  explicit BadAxis(double norm)
      : Error(detail::with_magnitude("measurement axis must be a unit vector",
                                     norm)),
        norm(norm) {}
  double norm;
};

struct NotUnitary : Error {
  explicit NotUnitary(double deviation)
      : Error(detail::with_magnitude("matrix is not unitary", deviation)),
        deviation(deviation) {}
  double deviation;
};

struct NoRealSolution : Error {
  explicit NoRealSolution(double discriminant)
      : Error(detail::with_magnitude("constraint system has no real solution",
                                     discriminant)),
        discriminant(discriminant) {}
  double discriminant;
};

struct DomainError : Error {
  using Error::Error;
};

struct SamplerExhausted : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace qgd

#pragma once

#include <stdexcept>
#include <string>

namespace ybchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: parameters out of contract, unknown names, size caps.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Some quasiparticle energy vanishes; quantities with 1/epsilon are undefined.
class GaplessPoint : public Error {
 public:
  GaplessPoint() : Error("gapless point") {}
  explicit GaplessPoint(const std::string& what) : Error("gapless point: " + what) {}
};

class QuadratureError : public Error {
 public:
  QuadratureError(double estimate, double error_estimate)
      : Error("quadrature tolerance not met"),
        estimate_(estimate),
        error_estimate_(error_estimate) {}
  double estimate() const { return estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

class DistanceNotPrecomputed : public Error {
 public:
  explicit DistanceNotPrecomputed(int d)
      : Error("distance not precomputed: " + std::to_string(d)), distance_(d) {}
  int distance() const { return distance_; }

 private:
  int distance_;
};

/// Density matrix or spin-flip product with an eigenvalue below the numerical floor.
class NotPositiveSemidefinite : public Error {
 public:
  NotPositiveSemidefinite(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace ybchain

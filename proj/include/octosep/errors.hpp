#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace octosep {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// The imaginary part of a Laplace-expansion sum exceeded tolerance.
/// When raised from the Monte Carlo driver, seed/stream identify the sample.
class ImaginaryResidualExceeded : public Error {
 public:
  ImaginaryResidualExceeded(double residual, double real_part)
      : Error("imaginary residual " + std::to_string(residual) + " exceeds tolerance (real part " +
              std::to_string(real_part) + ")"),
        residual_(residual),
        real_part_(real_part) {}

  double residual() const noexcept { return residual_; }
  double real_part() const noexcept { return real_part_; }

  bool has_provenance() const noexcept { return has_provenance_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  void set_provenance(std::uint64_t seed, std::uint64_t stream) noexcept {
    has_provenance_ = true;
    seed_ = seed;
    stream_ = stream;
  }

 private:
  double residual_;
  double real_part_;
  bool has_provenance_ = false;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
};

}  // namespace octosep

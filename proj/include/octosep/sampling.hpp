#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "octosep/octomatrix.hpp"

namespace octosep {

/// Gamma-shape recipe for the Cholesky diagonal: shape a + 4(i-1) (plain) or
/// a + 1 + 4(i-1) (shifted), i = 1..dim, always with scale 2.
enum class GammaVariant { plain, shifted };

std::string_view to_string(GammaVariant v) noexcept;
GammaVariant parse_gamma_variant(std::string_view s);

std::string_view to_string(MinorMode m) noexcept;
MinorMode parse_minor_mode(std::string_view s);

struct SimulationConfig {
  double a = 1.0;
  GammaVariant gamma_variant = GammaVariant::plain;
  std::size_t dim = 4;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  MinorMode minor_mode = MinorMode::real;
};

/// Throws InvalidShape when a Gamma shape would be <= 0, InvalidConfig otherwise.
void validate(const SimulationConfig& cfg);

/// Shape of the Gamma law for diagonal entry i (0-based).
double gamma_shape(const SimulationConfig& cfg, std::size_t i) noexcept;

inline constexpr double kGammaScale = 2.0;

/// Per-sample generator: a counter-based split of the master seed, so sample `stream`
/// is the same regardless of how samples are distributed over workers.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Independent master seed for the index-th job derived from `seed` (sweep grid points).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct WishartSample {
  OctoMatrix w;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Upper-triangular T: Gaussian octonions strictly above the diagonal, sqrt(Gamma) on it.
OctoMatrix sample_cholesky(const SimulationConfig& cfg, std::uint64_t stream);

/// W = T^dagger T for T = sample_cholesky(cfg, stream).
WishartSample sample_wishart(const SimulationConfig& cfg, std::uint64_t stream);

/// W = X^dagger X for an n x 2 matrix X of standard Gaussian octonions.
WishartSample sample_gaussian_wishart_2(std::uint64_t n, std::uint64_t seed, std::uint64_t stream);

}  // namespace octosep

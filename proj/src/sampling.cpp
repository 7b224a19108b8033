#include "octosep/sampling.hpp"

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <cmath>

#include "octosep/errors.hpp"

namespace octosep {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <class Engine>
Octonion gaussian_octonion(Engine& eng) {
  boost::random::normal_distribution<double> normal;
  Octonion x;
  for (std::size_t k = 0; k < 8; ++k) x[k] = normal(eng);
  return x;
}

}  // namespace

std::string_view to_string(GammaVariant v) noexcept {
  return v == GammaVariant::plain ? "plain" : "shifted";
}

GammaVariant parse_gamma_variant(std::string_view s) {
  if (s == "plain") return GammaVariant::plain;
  if (s == "shifted") return GammaVariant::shifted;
  throw InvalidConfig("unknown gamma variant '" + std::string(s) + "'");
}

std::string_view to_string(MinorMode m) noexcept {
  return m == MinorMode::real ? "real" : "octonion";
}

MinorMode parse_minor_mode(std::string_view s) {
  if (s == "real") return MinorMode::real;
  if (s == "octonion") return MinorMode::octonion;
  throw InvalidConfig("unknown minor mode '" + std::string(s) + "'");
}

double gamma_shape(const SimulationConfig& cfg, std::size_t i) noexcept {
  const double offset = cfg.gamma_variant == GammaVariant::shifted ? 1.0 : 0.0;
  return cfg.a + offset + 4.0 * static_cast<double>(i);
}

void validate(const SimulationConfig& cfg) {
  if (cfg.dim < 2 || cfg.dim > 4) throw InvalidConfig("dim must be 2, 3 or 4");
  if (cfg.samples == 0) throw InvalidConfig("samples must be positive");
  if (cfg.workers == 0) throw InvalidConfig("workers must be positive");
  if (!std::isfinite(cfg.a)) throw InvalidShape("a must be finite");
  if (!(gamma_shape(cfg, 0) > 0.0)) {
    throw InvalidShape(std::string("Gamma shape ") + std::to_string(gamma_shape(cfg, 0)) +
                       " <= 0 (" + std::string(to_string(cfg.gamma_variant)) +
                       " variant needs a > " +
                       (cfg.gamma_variant == GammaVariant::plain ? "0" : "-1") + ")");
  }
}

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) noexcept {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(0xD1B54A32D192ED03ULL * (index + 1)));
}

OctoMatrix sample_cholesky(const SimulationConfig& cfg, std::uint64_t stream) {
  if (!(gamma_shape(cfg, 0) > 0.0)) validate(cfg);
  auto eng = stream_engine(cfg.seed, stream);
  OctoMatrix t(cfg.dim);
  for (std::size_t i = 0; i < cfg.dim; ++i) {
    boost::random::gamma_distribution<double> gamma(gamma_shape(cfg, i), kGammaScale);
    t(i, i) = Octonion(std::sqrt(gamma(eng)));
    for (std::size_t j = i + 1; j < cfg.dim; ++j) t(i, j) = gaussian_octonion(eng);
  }
  return t;
}

WishartSample sample_wishart(const SimulationConfig& cfg, std::uint64_t stream) {
  return {gram(sample_cholesky(cfg, stream)), cfg.seed, stream};
}

WishartSample sample_gaussian_wishart_2(std::uint64_t n, std::uint64_t seed,
                                        std::uint64_t stream) {
  if (n == 0) throw InvalidConfig("n must be >= 1");
  auto eng = stream_engine(seed, stream);
  OctoMatrix w(2);
  Octonion off;
  double d0 = 0.0, d1 = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const Octonion x0 = gaussian_octonion(eng);
    const Octonion x1 = gaussian_octonion(eng);
    d0 += norm2(x0);
    d1 += norm2(x1);
    off += conj(x0) * x1;
  }
  w(0, 0) = Octonion(d0);
  w(1, 1) = Octonion(d1);
  w(0, 1) = off;
  w(1, 0) = conj(off);
  return {w, seed, stream};
}

}  // namespace octosep

#include <doctest.h>

#include <cmath>

#include "octosep/errors.hpp"
#include "octosep/sampling.hpp"

using namespace octosep;

TEST_CASE("config validation") {
  SimulationConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.samples = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidConfig);
  cfg = {};
  cfg.workers = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidConfig);
  cfg = {};
  cfg.dim = 5;
  CHECK_THROWS_AS(validate(cfg), InvalidConfig);
  cfg = {};
  cfg.a = 0.0;
  CHECK_THROWS_AS(validate(cfg), InvalidShape);
  cfg.gamma_variant = GammaVariant::shifted;
  CHECK_NOTHROW(validate(cfg));
  cfg.a = -1.0;
  CHECK_THROWS_AS(validate(cfg), InvalidShape);
  cfg.a = -0.999;
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("gamma shapes") {
  SimulationConfig cfg;
  cfg.a = 0.5;
  CHECK(gamma_shape(cfg, 0) == 0.5);
  CHECK(gamma_shape(cfg, 3) == 12.5);
  cfg.gamma_variant = GammaVariant::shifted;
  CHECK(gamma_shape(cfg, 0) == 1.5);
  CHECK(gamma_shape(cfg, 3) == 13.5);
}

TEST_CASE("variant and mode names round-trip") {
  CHECK(parse_gamma_variant(to_string(GammaVariant::plain)) == GammaVariant::plain);
  CHECK(parse_gamma_variant(to_string(GammaVariant::shifted)) == GammaVariant::shifted);
  CHECK(parse_minor_mode(to_string(MinorMode::real)) == MinorMode::real);
  CHECK(parse_minor_mode(to_string(MinorMode::octonion)) == MinorMode::octonion);
  CHECK_THROWS_AS(parse_gamma_variant("other"), InvalidConfig);
}

TEST_CASE("draws depend only on seed and stream") {
  SimulationConfig cfg;
  cfg.seed = 99;
  const auto a = sample_wishart(cfg, 12345);
  const auto b = sample_wishart(cfg, 12345);
  const auto c = sample_wishart(cfg, 12346);
  CHECK(a.w == b.w);
  CHECK_FALSE(a.w == c.w);
  CHECK(a.seed == 99);
  CHECK(a.stream == 12345);
  cfg.seed = 100;
  CHECK_FALSE(sample_wishart(cfg, 12345).w == a.w);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("Cholesky factor is upper triangular with a positive real diagonal") {
  SimulationConfig cfg;
  const auto t = sample_cholesky(cfg, 7);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(t(i, i).real() > 0.0);
    CHECK(imag_norm(t(i, i)) == 0.0);
    for (std::size_t j = 0; j < i; ++j) CHECK(t(i, j) == Octonion());
  }
}

TEST_CASE("Wishart diagonal moments") {
  // W(j, j) = sum_{i <= j} |T(i, j)|^2: one Gamma(shape_j, 2) plus j squared Gaussian
  // octonions, so E W(j, j) = 2 (a + 4 j) + 8 j.
  SimulationConfig cfg;
  cfg.a = 0.75;
  cfg.seed = 4;
  const int n = 40000;
  std::array<double, 4> sum{}, sum2{};
  for (int s = 0; s < n; ++s) {
    const auto w = sample_wishart(cfg, static_cast<std::uint64_t>(s)).w;
    for (std::size_t j = 0; j < 4; ++j) {
      sum[j] += w(j, j).real();
      sum2[j] += w(j, j).real() * w(j, j).real();
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const double mean = sum[j] / n;
    const double sd = std::sqrt((sum2[j] / n - mean * mean) / n);
    const double expect = 2.0 * (cfg.a + 4.0 * j) + 8.0 * j;
    CHECK(std::abs(mean - expect) < 5.0 * sd);
  }
}

TEST_CASE("Gaussian 2x2 Wishart has E W = n I times 8") {
  const int count = 20000;
  double d0 = 0.0, off = 0.0;
  for (int s = 0; s < count; ++s) {
    const auto w = sample_gaussian_wishart_2(2, 5, static_cast<std::uint64_t>(s)).w;
    d0 += w(0, 0).real();
    off += w(0, 1)[3];
  }
  CHECK(d0 / count == doctest::Approx(16.0).epsilon(0.02));
  CHECK(std::abs(off / count) < 0.1);
}

#include <doctest.h>

#include <atomic>

#include "octosep/errors.hpp"
#include "octosep/montecarlo.hpp"
#include "oracles.hpp"

using namespace octosep;

TEST_CASE("counts are identical for any worker count") {
  SimulationConfig cfg;
  cfg.a = 0.5;
  cfg.samples = 3001;
  cfg.seed = 8;
  const auto base = estimate_separability(cfg);
  for (unsigned w : {2u, 3u, 8u}) {
    cfg.workers = w;
    const auto r = estimate_separability(cfg);
    CHECK(r.pos_det == base.pos_det);
    CHECK(r.ppt == base.ppt);
    CHECK(r.ordering_count == base.ordering_count);
    CHECK(r.per_worker.size() == w);
    std::uint64_t total = 0;
    for (auto n : r.per_worker) total += n;
    CHECK(total == cfg.samples);
  }
}

TEST_CASE("estimate bookkeeping") {
  SimulationConfig cfg;
  cfg.samples = 2000;
  cfg.seed = 1;
  const auto r = estimate_separability(cfg);
  CHECK(r.generated == 2000);
  CHECK(r.pos_det <= r.generated);
  CHECK(r.ppt <= r.pos_det);
  CHECK(r.ordering_count <= r.ppt);
  CHECK(r.sep_prob == doctest::Approx(double(r.ppt) / double(r.pos_det)));
  CHECK(r.sep_stderr == doctest::Approx(binomial_stderr(r.sep_prob, r.pos_det)));
  CHECK(r.max_minor_residual <= 1e-8);
  cfg.dim = 3;
  CHECK_THROWS_AS(estimate_separability(cfg), InvalidConfig);
}

TEST_CASE("classify on a product state and an entangled state") {
  // A diagonal matrix is invariant under the partial transpose.
  OctoMatrix d(4);
  for (std::size_t i = 0; i < 4; ++i) d(i, i) = Octonion(i + 1.0);
  const auto o = classify(d, MinorMode::real);
  CHECK(o.det == doctest::Approx(24.0));
  CHECK(o.det_pt == doctest::Approx(24.0));
  CHECK(o.scale == doctest::Approx(24.0));

  // Near-Bell state: large coherence between |00> and |11> (indices 0 and 3), small
  // populations of |01> and |10>. The coherence moves to (1, 2) under the partial
  // transpose, where it dominates the 0.1 diagonal.
  OctoMatrix b = OctoMatrix::identity(4);
  b(1, 1) = Octonion(0.1);
  b(2, 2) = Octonion(0.1);
  b(0, 3) = Octonion(0.9);
  b(3, 0) = Octonion(0.9);
  const auto e = classify(b, MinorMode::real);
  CHECK(e.det > 0.0);
  CHECK(e.det_pt < 0.0);
}

TEST_CASE("octonion minor mode surfaces the failing sample") {
  SimulationConfig cfg;
  cfg.samples = 200;
  cfg.seed = 2;
  cfg.minor_mode = MinorMode::octonion;
  bool thrown = false;
  try {
    (void)estimate_separability(cfg);
  } catch (const ImaginaryResidualExceeded& e) {
    thrown = true;
    CHECK(e.has_provenance());
    CHECK(e.seed() == 2);
    CHECK(e.stream() < 200);
    SimulationConfig one = cfg;
    CHECK_THROWS_AS(classify(sample_wishart(one, e.stream()).w, MinorMode::octonion),
                    ImaginaryResidualExceeded);
  }
  CHECK(thrown);
}

TEST_CASE("parallel_ranges covers every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_ranges(1000, 7, [&](std::uint64_t b, std::uint64_t e, unsigned) {
    for (auto i = b; i < e; ++i) hits[i]++;
  });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_ranges(10, 3,
                                  [](std::uint64_t b, std::uint64_t, unsigned) {
                                    if (b > 0) throw DomainError("boom");
                                  }),
                  DomainError);
}

TEST_CASE("model CDF limits") {
  const ModelEigenCdf m(3.0, 0.5);
  CHECK(m(1e6, 1e6) == doctest::Approx(1.0));
  CHECK(m(0.0, 0.0) == 0.0);
  const double q = m.upper_quantile(0.999);
  CHECK(m(q, q) == doctest::Approx(0.999).epsilon(1e-6));
  CHECK(m(5.0, 10.0) <= m(10.0, 10.0));
}

TEST_CASE("grid discrepancy of model draws is small") {
  const ModelEigenCdf m(3.0, 0.5);
  const auto pairs = oracle::rejection_pairs(3.0, 0.5, 50000, 77);
  const double d = grid_cdf_discrepancy(pairs, m, m.upper_quantile(0.999));
  CHECK(d < 0.02);
  // A wrong model is clearly separated.
  const ModelEigenCdf wrong(4.0, 0.5);
  CHECK(grid_cdf_discrepancy(pairs, wrong, wrong.upper_quantile(0.999)) > 0.05);
}

TEST_CASE("Gaussian Wishart eigenvalues follow the model") {
  const auto rep = eigen_pdf_check(2, 40000, 5, 50, 2);
  CHECK(rep.a_implied == 3.0);
  CHECK(rep.discrepancy < 0.02);
  std::uint64_t in_grid = 0;
  for (auto c : rep.histogram) in_grid += c;
  CHECK(in_grid + rep.overflow == rep.samples);
  CHECK_THROWS_AS(eigen_pdf_check(1, 10, 0), DomainError);
}

TEST_CASE("2x2 Wishart determinants are positive") {
  SimulationConfig cfg;
  cfg.dim = 2;
  cfg.samples = 5000;
  const auto r = determinant_signs(cfg);
  CHECK(r.negative == 0);
  CHECK(r.positive == 5000);
}

TEST_CASE("3x3 sign experiment is deterministic") {
  const auto a = forrester_3x3_mode(1.0, GammaVariant::plain, 4000, 3, 1);
  const auto b = forrester_3x3_mode(1.0, GammaVariant::plain, 4000, 3, 4);
  CHECK(a.negative == b.negative);
  CHECK(a.generated == 4000);
  CHECK(a.fraction_negative == doctest::Approx(double(a.negative) / 4000.0));
}

TEST_CASE("determinant signs are invariant under rescaling") {
  SimulationConfig cfg;
  cfg.a = 0.5;
  cfg.seed = 12;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto w = sample_wishart(cfg, s).w;
    OctoMatrix scaled = w;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) scaled(i, j) *= 37.5;
    const auto a = classify(w, MinorMode::real);
    const auto b = classify(scaled, MinorMode::real);
    CHECK((a.det > 0) == (b.det > 0));
    CHECK((a.det_pt > 0) == (b.det_pt > 0));
    CHECK((a.det > a.det_pt) == (b.det > b.det_pt));
  }
}

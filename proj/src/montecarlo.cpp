#include "octosep/montecarlo.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <exception>
#include <thread>

#include "octosep/errors.hpp"
#include "octosep/formulas.hpp"

namespace octosep {

void parallel_ranges(std::uint64_t count, unsigned workers,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  if (workers == 0) throw InvalidConfig("workers must be positive");
  const std::uint64_t w = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count));
  std::vector<std::exception_ptr> errors(w);
  auto run = [&](unsigned idx) {
    const std::uint64_t begin = count * idx / w;
    const std::uint64_t end = count * (idx + 1) / w;
    try {
      body(begin, end, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (unsigned i = 0; i < w; ++i) threads.emplace_back(run, i);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double binomial_stderr(double p, std::uint64_t n) noexcept {
  if (n == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

SampleOutcome classify(const OctoMatrix& w, MinorMode mode) {
  const OctoMatrix pt = partial_transpose(w);
  SampleOutcome out;
  out.det = laplace_det4(w, mode).value;
  out.det_pt = laplace_det4(pt, mode).value;
  out.scale = 1.0;
  for (std::size_t i = 0; i < 4; ++i) out.scale *= w(i, i).real();
  out.minor_residual = std::max(principal_minor_residual(w), principal_minor_residual(pt));
  return out;
}

namespace {

struct Counts {
  std::uint64_t generated = 0, pos_det = 0, ppt = 0, ordering = 0, near_zero = 0;
  double max_residual = 0.0;
};

}  // namespace

EstimateResult estimate_separability(const SimulationConfig& cfg) {
  validate(cfg);
  if (cfg.dim != 4) throw InvalidConfig("separability estimation requires dim = 4");

  std::vector<Counts> per(cfg.workers);
  parallel_ranges(cfg.samples, cfg.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    Counts c;
    for (std::uint64_t s = begin; s < end; ++s) {
      const WishartSample sample = sample_wishart(cfg, s);
      SampleOutcome o;
      try {
        o = classify(sample.w, cfg.minor_mode);
      } catch (ImaginaryResidualExceeded& e) {
        e.set_provenance(sample.seed, sample.stream);
        throw;
      }
      ++c.generated;
      c.max_residual = std::max(c.max_residual, o.minor_residual);
      if (std::abs(o.det) < kNearZeroRelative * o.scale) ++c.near_zero;
      if (!(o.det > 0.0)) continue;
      ++c.pos_det;
      if (!(o.det_pt > 0.0)) continue;
      ++c.ppt;
      if (o.det > o.det_pt) ++c.ordering;
    }
    per[w] = c;
  });

  EstimateResult r;
  r.config = cfg;
  for (const auto& c : per) {
    r.generated += c.generated;
    r.pos_det += c.pos_det;
    r.ppt += c.ppt;
    r.ordering_count += c.ordering;
    r.near_zero_dets += c.near_zero;
    r.max_minor_residual = std::max(r.max_minor_residual, c.max_residual);
    r.per_worker.push_back(c.generated);
  }
  // parallel_ranges never uses more threads than samples.
  while (r.per_worker.size() > std::min<std::uint64_t>(cfg.workers, cfg.samples))
    r.per_worker.pop_back();
  r.sep_prob = r.pos_det ? static_cast<double>(r.ppt) / static_cast<double>(r.pos_det) : 0.0;
  r.sep_stderr = binomial_stderr(r.sep_prob, r.pos_det);
  r.ordering_prob = r.ppt ? static_cast<double>(r.ordering_count) / static_cast<double>(r.ppt) : 0.0;
  r.ordering_stderr = binomial_stderr(r.ordering_prob, r.ppt);
  return r;
}

ModelEigenCdf::ModelEigenCdf(double a, double c)
    : a_(a), c_(c), weights_(formulas::forrester_cdf_weights(a)) {
  if (!(c > 0.0)) throw DomainError("ModelEigenCdf: c must be positive");
}

double ModelEigenCdf::operator()(double x, double y) const {
  using boost::math::gamma_p;
  if (x <= 0.0 || y <= 0.0) return 0.0;
  x = std::min(x, y);
  double both_below_y = 0.0;
  double both_between = 0.0;
  for (int j = 0; j <= 8; ++j) {
    const double s1 = a_ + j + 1.0;
    const double s2 = a_ + 9.0 - j;
    const double p1y = gamma_p(s1, c_ * y), p2y = gamma_p(s2, c_ * y);
    const double p1x = gamma_p(s1, c_ * x), p2x = gamma_p(s2, c_ * x);
    both_below_y += weights_[j] * p1y * p2y;
    both_between += weights_[j] * (p1y - p1x) * (p2y - p2x);
  }
  // Ordered pair: l1 <= x and l2 <= y  <=>  both <= y, minus both in (x, y].
  return std::clamp(both_below_y - both_between, 0.0, 1.0);
}

double ModelEigenCdf::upper_quantile(double p) const {
  double lo = 0.0, hi = 1.0;
  while ((*this)(hi, hi) < p) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((*this)(mid, mid) < p ? lo : hi) = mid;
  }
  return hi;
}

double grid_cdf_discrepancy(const std::vector<std::pair<double, double>>& pairs,
                            const ModelEigenCdf& model, double grid_max, int grid) {
  if (pairs.empty()) return 1.0;
  const auto g = static_cast<std::size_t>(grid);
  // counts[i][j]: pairs with first in cell i and second in cell j; cell g is overflow.
  std::vector<std::uint64_t> counts((g + 1) * (g + 1), 0);
  auto cell = [&](double v) {
    const double t = std::ceil(v / grid_max * grid) - 1.0;
    return static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(g)));
  };
  for (const auto& [l1, l2] : pairs) ++counts[cell(l1) * (g + 1) + cell(l2)];
  // 2-d prefix sums over the in-range cells.
  std::vector<double> cum(g * g, 0.0);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      double v = static_cast<double>(counts[i * (g + 1) + j]);
      if (i) v += cum[(i - 1) * g + j];
      if (j) v += cum[i * g + j - 1];
      if (i && j) v -= cum[(i - 1) * g + j - 1];
      cum[i * g + j] = v;
    }
  const double n = static_cast<double>(pairs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const double x = grid_max * static_cast<double>(i + 1) / grid;
      const double y = grid_max * static_cast<double>(j + 1) / grid;
      worst = std::max(worst, std::abs(cum[i * g + j] / n - model(x, y)));
    }
  return worst;
}

std::vector<std::pair<double, double>> gaussian_wishart_eigenpairs(std::uint64_t n,
                                                                   std::uint64_t samples,
                                                                   std::uint64_t seed,
                                                                   unsigned workers) {
  std::vector<std::pair<double, double>> pairs(samples);
  parallel_ranges(samples, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t s = begin; s < end; ++s)
      pairs[s] = eig2_hermitian(sample_gaussian_wishart_2(n, seed, s).w);
  });
  return pairs;
}

EigenPdfReport eigen_pdf_check(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                               int bins, unsigned workers) {
  if (n == 0) throw InvalidConfig("eigen_pdf_check: n must be >= 1");
  if (samples == 0) throw InvalidConfig("eigen_pdf_check: samples must be positive");
  if (bins < 1) throw InvalidConfig("eigen_pdf_check: bins must be positive");
  EigenPdfReport rep;
  rep.n = n;
  rep.a_implied = 4.0 * static_cast<double>(n) - 5.0;
  rep.c = 0.5;
  rep.samples = samples;
  rep.seed = seed;
  rep.bins = bins;
  if (!(rep.a_implied > -1.0)) throw DomainError("eigen_pdf_check: implied a must exceed -1");

  const ModelEigenCdf model(rep.a_implied, rep.c);
  rep.grid_max = model.upper_quantile(0.999);
  const auto pairs = gaussian_wishart_eigenpairs(n, samples, seed, workers);

  const auto b = static_cast<std::size_t>(bins);
  rep.histogram.assign(b * b, 0);
  for (const auto& [l1, l2] : pairs) {
    if (l1 > rep.grid_max || l2 > rep.grid_max) {
      ++rep.overflow;
      continue;
    }
    auto idx = [&](double v) {
      return std::min(b - 1, static_cast<std::size_t>(v / rep.grid_max * bins));
    };
    ++rep.histogram[idx(l1) * b + idx(l2)];
  }
  rep.discrepancy = grid_cdf_discrepancy(pairs, model, rep.grid_max, bins);
  return rep;
}

DetSignResult determinant_signs(const SimulationConfig& cfg) {
  validate(cfg);
  if (cfg.dim != 2 && cfg.dim != 3) throw InvalidConfig("determinant_signs requires dim 2 or 3");
  struct Tally {
    std::uint64_t generated = 0, negative = 0, positive = 0;
  };
  std::vector<Tally> per(cfg.workers);
  parallel_ranges(cfg.samples, cfg.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    Tally t;
    for (std::uint64_t s = begin; s < end; ++s) {
      const OctoMatrix m = sample_wishart(cfg, s).w;
      const double d = cfg.dim == 2 ? odet2(m).real() : det3_hermitian(m);
      ++t.generated;
      if (d < 0.0) ++t.negative;
      if (d > 0.0) ++t.positive;
    }
    per[w] = t;
  });
  DetSignResult r;
  r.config = cfg;
  for (std::size_t w = 0; w < per.size() && w < cfg.samples; ++w) {
    r.generated += per[w].generated;
    r.negative += per[w].negative;
    r.positive += per[w].positive;
    r.per_worker.push_back(per[w].generated);
  }
  r.fraction_negative = static_cast<double>(r.negative) / static_cast<double>(r.generated);
  return r;
}

Forrester3Result forrester_3x3_mode(double a, GammaVariant variant, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers) {
  SimulationConfig cfg;
  cfg.a = a;
  cfg.gamma_variant = variant;
  cfg.dim = 3;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  return determinant_signs(cfg);
}

}  // namespace octosep

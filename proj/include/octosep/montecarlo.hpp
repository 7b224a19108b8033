#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "octosep/sampling.hpp"

namespace octosep {

/// Determinants computed for one Wishart draw.
struct SampleOutcome {
  double det = 0.0;
  double det_pt = 0.0;
  /// Product of the diagonal of W; a PSD matrix has |det| <= scale.
  double scale = 0.0;
  double minor_residual = 0.0;
};

SampleOutcome classify(const OctoMatrix& w, MinorMode mode);

struct EstimateResult {
  SimulationConfig config;
  std::uint64_t generated = 0;
  std::uint64_t pos_det = 0;
  std::uint64_t ppt = 0;
  /// Draws with det > det_pt > 0.
  std::uint64_t ordering_count = 0;
  /// Draws with |det| < 1e-12 * scale.
  std::uint64_t near_zero_dets = 0;
  double sep_prob = 0.0;
  double sep_stderr = 0.0;
  /// ordering_count / ppt: among PPT draws, the fraction with det > det_pt.
  double ordering_prob = 0.0;
  double ordering_stderr = 0.0;
  /// Largest principal-minor imaginary residual seen over W and its partial transpose.
  double max_minor_residual = 0.0;
  std::vector<std::uint64_t> per_worker;
};

inline constexpr double kNearZeroRelative = 1e-12;

/// Splits [0, count) into `workers` contiguous ranges and calls body(begin, end, worker)
/// on a thread per range. Exceptions are rethrown after all threads join; the one from
/// the lowest range wins.
void parallel_ranges(std::uint64_t count, unsigned workers,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body);

/// Conditional PPT probability among positive-determinant 4x4 Wishart draws.
EstimateResult estimate_separability(const SimulationConfig& cfg);

/// Binomial standard error sqrt(p (1 - p) / n); zero when n == 0.
double binomial_stderr(double p, std::uint64_t n) noexcept;

/// Joint CDF of the ordered eigenvalue pair under the model density
/// (l1 l2)^a exp(-c (l1 + l2)) (l2 - l1)^8.
class ModelEigenCdf {
 public:
  ModelEigenCdf(double a, double c);
  /// P(l1 <= x, l2 <= y).
  double operator()(double x, double y) const;
  /// y with P(l2 <= y) = p.
  double upper_quantile(double p) const;
  double a() const noexcept { return a_; }
  double c() const noexcept { return c_; }

 private:
  double a_;
  double c_;
  std::array<double, 9> weights_;
};

/// Sup distance between the empirical and model joint CDFs on a grid x n grid over
/// (0, grid_max]^2. Pairs must be ordered (first <= second).
double grid_cdf_discrepancy(const std::vector<std::pair<double, double>>& pairs,
                            const ModelEigenCdf& model, double grid_max, int grid = 50);

struct EigenPdfReport {
  std::uint64_t n = 0;
  double a_implied = 0.0;
  double c = 0.5;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int bins = 50;
  double grid_max = 0.0;
  /// bins x bins counts of (l1, l2) over (0, grid_max]^2, row index from l1.
  std::vector<std::uint64_t> histogram;
  std::uint64_t overflow = 0;
  double discrepancy = 0.0;
};

/// Eigenvalue pairs of W = X^dagger X, X an n x 2 Gaussian octonion matrix, against the
/// model with a = 4n - 5 and c = 1/2.
EigenPdfReport eigen_pdf_check(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                               int bins = 50, unsigned workers = 1);

/// Ordered eigenvalue pairs in stream order, for reuse by callers and tests.
std::vector<std::pair<double, double>> gaussian_wishart_eigenpairs(std::uint64_t n,
                                                                   std::uint64_t samples,
                                                                   std::uint64_t seed,
                                                                   unsigned workers = 1);

/// Determinant signs of 2x2 (odet2 real part) or 3x3 (Hermitian determinant) Wisharts.
struct DetSignResult {
  SimulationConfig config;
  std::uint64_t generated = 0;
  std::uint64_t negative = 0;
  std::uint64_t positive = 0;
  double fraction_negative = 0.0;
  std::vector<std::uint64_t> per_worker;
};

DetSignResult determinant_signs(const SimulationConfig& cfg);

using Forrester3Result = DetSignResult;

/// Fraction of 3x3 Wishart draws whose Hermitian determinant is negative.
Forrester3Result forrester_3x3_mode(double a, GammaVariant variant, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers = 1);

}  // namespace octosep

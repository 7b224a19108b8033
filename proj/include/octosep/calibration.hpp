#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "octosep/montecarlo.hpp"

namespace octosep {

/// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Outside the knot range it continues the end interval's cubic.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  bool in_range(double x) const noexcept;
  bool empty() const noexcept { return xs_.empty(); }

  const std::vector<double>& knots() const noexcept { return xs_; }
  const std::vector<double>& values() const noexcept { return ys_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }

  /// Smallest x in [lo, hi] with f(x) = y, located on a 1e-12 bracket. Empty if no
  /// sign change is found on a fine scan of [lo, hi].
  std::optional<double> solve(double y, double lo, double hi) const;

 private:
  std::vector<double> xs_, ys_, slopes_;
};

/// Conjectured Hilbert-Schmidt value 44482/4091349.
inline constexpr double kConjecturedProbability = 44482.0 / 4091349.0;

/// Reference extrapolations quoted for comparison only; never asserted.
inline constexpr double kReferenceSweepAtZero = 0.010108;
inline constexpr double kReferenceF0 = 2.04852;

struct GridPoint {
  double a = 0.0;
  double sep_prob = 0.0;
  double stderr_ = 0.0;
  EstimateResult estimate;
};

struct SweepResult {
  std::vector<GridPoint> grid;
  MonotoneCubic interpolant;
  double at_zero = 0.0;
  /// True when a = 0 lies outside the sampled interval.
  bool at_zero_extrapolated = false;
  /// Index of the grid point whose estimate is nearest kConjecturedProbability.
  std::size_t nearest_to_conjecture = 0;
};

/// Parses "start:stop:step" (inclusive, rationals allowed) or a comma list. Throws
/// InvalidConfig on malformed or non-ascending input.
std::vector<double> parse_grid(std::string_view text);

/// One estimate per grid point, seeds derived from base.seed and the point index.
SweepResult sweep(const std::vector<double>& a_grid, const SimulationConfig& base);

/// sweep() on the shifted Gamma variant; every a must exceed -1.
SweepResult shifted_variant_scan(const std::vector<double>& a_grid, const SimulationConfig& base);

struct KPoint {
  long k = 0;
  double target = 0.0;
  std::optional<double> a_hat;
  /// Root not bracketed inside the sweep range; a_hat, if any, comes from the extended
  /// end cubic.
  bool extrapolated = false;
  double residual = 0.0;
};

struct CalibrationMap {
  std::vector<KPoint> points;
  MonotoneCubic fit;
  std::optional<double> f_at_zero;
  bool f_at_zero_extrapolated = false;
};

/// Solves interpolated sep_prob(a) = P(k,4) for each k and fits a monotone cubic in k.
CalibrationMap fit_a_of_k(const std::vector<long>& ks, const SweepResult& sweep);

}  // namespace octosep

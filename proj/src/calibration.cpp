#include "octosep/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "octosep/errors.hpp"
#include "octosep/formulas.hpp"

namespace octosep {

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

double edge_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (sign(d) != sign(m0)) {
    d = 0.0;
  } else if (sign(m0) != sign(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
    d = 3.0 * m0;
  }
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.empty())
    throw InvalidConfig("MonotoneCubic: need matching, nonempty knot and value lists");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1])) throw InvalidConfig("MonotoneCubic: knots must be strictly ascending");

  const std::size_t n = xs_.size();
  slopes_.assign(n, 0.0);
  if (n == 1) return;
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  slopes_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

bool MonotoneCubic::in_range(double x) const noexcept {
  return !xs_.empty() && x >= xs_.front() && x <= xs_.back();
}

double MonotoneCubic::operator()(double x) const {
  if (xs_.empty()) throw InvalidConfig("MonotoneCubic: empty interpolant");
  if (xs_.size() == 1) return ys_[0];
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  k = std::min(k, xs_.size() - 2);
  const double h = xs_[k + 1] - xs_[k];
  const double t = (x - xs_[k]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * ys_[k] + (t3 - 2 * t2 + t) * h * slopes_[k] +
         (-2 * t3 + 3 * t2) * ys_[k + 1] + (t3 - t2) * h * slopes_[k + 1];
}

std::optional<double> MonotoneCubic::solve(double y, double lo, double hi) const {
  if (xs_.empty() || !(hi >= lo)) return std::nullopt;
  // Scan points: knots inside [lo, hi] refined 64-fold, which resolves every cubic piece.
  std::vector<double> pts{lo, hi};
  for (double x : xs_)
    if (x > lo && x < hi) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  std::vector<double> scan;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (int s = 0; s < 64; ++s) scan.push_back(pts[i] + (pts[i + 1] - pts[i]) * s / 64.0);
  scan.push_back(hi);

  auto g = [&](double x) { return (*this)(x) - y; };
  double prev_x = scan[0], prev_g = g(prev_x);
  if (prev_g == 0.0) return prev_x;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const double x = scan[i], gx = g(x);
    if (gx == 0.0) return x;
    if (sign(gx) != sign(prev_g)) {
      double a = prev_x, b = x, ga = prev_g;
      while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
        const double m = 0.5 * (a + b), gm = g(m);
        if (gm == 0.0) return m;
        if (sign(gm) == sign(ga)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    prev_x = x;
    prev_g = gx;
  }
  return std::nullopt;
}

std::vector<double> parse_grid(std::string_view text) {
  using formulas::Rational;
  std::vector<double> out;
  const std::string s(text);
  try {
    if (s.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(s);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() != 3) throw InvalidConfig("grid must be start:stop:step");
      const Rational start = formulas::parse_rational(parts[0]);
      const Rational stop = formulas::parse_rational(parts[1]);
      const Rational step = formulas::parse_rational(parts[2]);
      if (step == 0) throw InvalidConfig("grid step must be nonzero");
      if ((stop - start) * step < 0) throw InvalidConfig("grid step points away from stop");
      for (Rational v = start; step > 0 ? v <= stop : v >= stop; v += step) {
        out.push_back(static_cast<double>(v));
        if (out.size() > 100000) throw InvalidConfig("grid has too many points");
      }
    } else {
      std::stringstream ss(s);
      for (std::string p; std::getline(ss, p, ',');)
        out.push_back(static_cast<double>(formulas::parse_rational(p)));
    }
  } catch (const DomainError& e) {
    throw InvalidConfig(std::string("malformed grid: ") + e.what());
  }
  if (out.empty()) throw InvalidConfig("grid is empty");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw InvalidConfig("grid has repeated points");
  return out;
}

SweepResult sweep(const std::vector<double>& a_grid, const SimulationConfig& base) {
  if (a_grid.empty()) throw InvalidConfig("sweep: grid is empty");
  for (std::size_t i = 1; i < a_grid.size(); ++i)
    if (!(a_grid[i] > a_grid[i - 1])) throw InvalidConfig("sweep: grid must be strictly ascending");
  for (double a : a_grid) {
    SimulationConfig cfg = base;
    cfg.a = a;
    validate(cfg);
  }

  SweepResult r;
  std::vector<double> ys;
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    SimulationConfig cfg = base;
    cfg.a = a_grid[i];
    cfg.seed = derive_seed(base.seed, i);
    GridPoint p;
    p.a = a_grid[i];
    p.estimate = estimate_separability(cfg);
    p.sep_prob = p.estimate.sep_prob;
    p.stderr_ = p.estimate.sep_stderr;
    ys.push_back(p.sep_prob);
    r.grid.push_back(std::move(p));
  }
  r.interpolant = MonotoneCubic(a_grid, ys);
  r.at_zero = r.interpolant(0.0);
  r.at_zero_extrapolated = !r.interpolant.in_range(0.0);
  for (std::size_t i = 1; i < r.grid.size(); ++i)
    if (std::abs(r.grid[i].sep_prob - kConjecturedProbability) <
        std::abs(r.grid[r.nearest_to_conjecture].sep_prob - kConjecturedProbability))
      r.nearest_to_conjecture = i;
  return r;
}

SweepResult shifted_variant_scan(const std::vector<double>& a_grid, const SimulationConfig& base) {
  SimulationConfig cfg = base;
  cfg.gamma_variant = GammaVariant::shifted;
  for (double a : a_grid)
    if (!(a > -1.0)) throw InvalidShape("shifted variant requires a > -1");
  return sweep(a_grid, cfg);
}

CalibrationMap fit_a_of_k(const std::vector<long>& ks, const SweepResult& sw) {
  if (sw.interpolant.empty()) throw InvalidConfig("fit_a_of_k: sweep has no interpolant");
  const auto& knots = sw.interpolant.knots();
  const double lo = knots.front(), hi = knots.back();
  const double span = std::max(hi - lo, 1e-9);

  CalibrationMap map;
  std::vector<std::pair<double, double>> fitted;
  for (long k : ks) {
    KPoint p;
    p.k = k;
    p.target = static_cast<double>(formulas::p_k4(k));
    p.a_hat = sw.interpolant.solve(p.target, lo, hi);
    if (!p.a_hat) {
      p.extrapolated = true;
      p.a_hat = sw.interpolant.solve(p.target, lo - span, lo);
      if (!p.a_hat) p.a_hat = sw.interpolant.solve(p.target, hi, hi + span);
    }
    if (p.a_hat) {
      p.residual = std::abs(sw.interpolant(*p.a_hat) - p.target);
      fitted.emplace_back(static_cast<double>(k), *p.a_hat);
    }
    map.points.push_back(p);
  }
  std::sort(fitted.begin(), fitted.end());
  fitted.erase(std::unique(fitted.begin(), fitted.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first; }),
               fitted.end());
  if (!fitted.empty()) {
    std::vector<double> xs, ys;
    for (const auto& [k, a] : fitted) {
      xs.push_back(k);
      ys.push_back(a);
    }
    map.fit = MonotoneCubic(xs, ys);
    map.f_at_zero = map.fit(0.0);
    map.f_at_zero_extrapolated = !map.fit.in_range(0.0);
  }
  return map;
}

}  // namespace octosep

// Independent reference computations used by the tests. Nothing here calls into the
// octosep determinant or series code.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "octosep/octomatrix.hpp"

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

/// Octonion with components outside {e0, e1} dropped, read as a + b i.
inline cplx as_complex(const octosep::Octonion& x) { return {x[0], x[1]}; }

/// Ordinary determinant of the complex matrix carried by the {e0, e1} components.
inline cplx complex_det(const octosep::OctoMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  CMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = as_complex(m(i, j));
  return c.determinant();
}

/// 2x2 complex image of the quaternion a + b e1 + c e2 + d e3 (e1 e2 = e3).
inline Eigen::Matrix2cd quaternion_block(const octosep::Octonion& x) {
  const cplx z(x[0], x[1]);
  const cplx w(x[2], x[3]);
  Eigen::Matrix2cd b;
  b << z, w, -std::conj(w), std::conj(z);
  return b;
}

/// Complex adjoint of the quaternion matrix carried by {e0..e3}.
inline CMatrix quaternion_adjoint(const octosep::OctoMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  CMatrix c(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.block<2, 2>(2 * i, 2 * j) = quaternion_block(m(i, j));
  return c;
}

/// Moore determinant of a Hermitian quaternion matrix: the product of its real
/// eigenvalues. The complex adjoint repeats each one twice, so every other sorted
/// eigenvalue of the adjoint is taken.
inline double moore_det(const octosep::OctoMatrix& m) {
  const CMatrix c = quaternion_adjoint(m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(c, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double prod = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); i += 2) prod *= ev(i);
  return prod;
}

/// Gamma(twice_arg / 2) as coef * sqrt(pi)^power built from Gamma(1/2) = sqrt(pi),
/// Gamma(1) = 1 and Gamma(x + 1) = x Gamma(x).
struct HalfGammaValue {
  boost::multiprecision::mpq_rational coef;
  int sqrt_pi_power;
};
inline HalfGammaValue half_gamma(long twice_arg) {
  using Q = boost::multiprecision::mpq_rational;
  const bool half = (twice_arg % 2) != 0;
  Q coef = 1;
  for (long t = half ? 1 : 2; t < twice_arg; t += 2) coef *= Q(t, 2);
  return {coef, half ? 1 : 0};
}

/// Numerical integral of (l1 l2)^a e^{-c(l1+l2)} (l2-l1)^8 over 0 <= l1 <= l2, using
/// l2 = l1 + d and two nested half-line quadratures.
inline double pdf_norm_quadrature(double a, double c) {
  boost::math::quadrature::exp_sinh<double> outer;
  auto inner_value = [&](double d) {
    boost::math::quadrature::exp_sinh<double> inner;
    auto f = [&](double l1) {
      const double l2 = l1 + d;
      return std::exp(a * std::log(l1 * l2) - c * (l1 + l2) + 8.0 * std::log(d));
    };
    return inner.integrate(f, 1e-12);
  };
  return outer.integrate(inner_value, 1e-10);
}

/// Rejection sampler for the ordered pair density above. Proposal: two independent
/// Gamma(a + 1, rate c/2) draws; acceptance ratio e^{-c s/2} |l2 - l1|^8 bounded by
/// (16/c)^8 e^{-8}, since |l2 - l1| <= s = l1 + l2.
inline std::vector<std::pair<double, double>> rejection_pairs(double a, double c,
                                                              std::size_t count,
                                                              std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  boost::random::gamma_distribution<double> g(a + 1.0, 2.0 / c);
  boost::random::uniform_01<double> u;
  const double log_bound = 8.0 * std::log(16.0 / c) - 8.0;
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  while (out.size() < count) {
    double x = g(eng);
    double y = g(eng);
    const double d = std::abs(y - x);
    if (d == 0.0) continue;
    const double log_ratio = -0.5 * c * (x + y) + 8.0 * std::log(d) - log_bound;
    if (std::log(u(eng)) < log_ratio) out.emplace_back(std::min(x, y), std::max(x, y));
  }
  return out;
}

/// Deterministic pseudo-random octonion with standard normal components.
template <class Engine>
octosep::Octonion gaussian_octonion(Engine& eng, std::size_t components = 8) {
  std::normal_distribution<double> n01;
  octosep::Octonion x;
  for (std::size_t i = 0; i < components; ++i) x[i] = n01(eng);
  return x;
}

/// Random Hermitian positive-definite matrix T^dagger T whose entries use only the first
/// `components` octonion units. components = 2 gives complex, 4 gives quaternion entries.
template <class Engine>
octosep::OctoMatrix structured_wishart(Engine& eng, std::size_t n, std::size_t components) {
  octosep::OctoMatrix t(n);
  std::gamma_distribution<double> chi(2.0, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = octosep::Octonion(std::sqrt(chi(eng)));
    for (std::size_t j = i + 1; j < n; ++j) t(i, j) = gaussian_octonion(eng, components);
  }
  return octosep::gram(t);
}

/// Random Hermitian matrix with full octonion off-diagonal entries.
template <class Engine>
octosep::OctoMatrix random_hermitian(Engine& eng, std::size_t n) {
  std::normal_distribution<double> n01;
  octosep::OctoMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = octosep::Octonion(n01(eng));
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = gaussian_octonion(eng);
      m(j, i) = octosep::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace oracle

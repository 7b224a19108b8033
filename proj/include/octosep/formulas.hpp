#pragma once

#include <array>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace octosep::formulas {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

/// Sets the default MPFR precision (decimal digits) for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Accepts "p/q", integers, and plain decimals ("0.125" -> 1/8 exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_decimal(const Real& x, unsigned digits);
std::string to_decimal(const Rational& x, unsigned digits);
Real to_real(const Rational& r);
/// Exact value of a binary floating-point number.
Rational to_rational(const Real& x);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_rational_between(Rational lo, Rational hi);

/// Closed-form coefficient tables, highest degree first.
inline constexpr std::array<long, 6> kQCoefficients = {185000, 779750, 1289125,
                                                       1042015, 410694, 63000};
inline constexpr std::array<long long, 11> kSCoefficients = {
    8,           736,          30908,        785888,         13511051,    165605534,
    1478827827LL, 9572954872LL, 43203702816LL, 122897189520LL, 166878079200LL};

Rational q_poly(const Rational& alpha);
BigInt s_poly(long k);

/// Gamma at a positive half-integer n/2, as coef * sqrt(pi)^sqrt_pi_power.
struct HalfGamma {
  Rational coef;
  int sqrt_pi_power = 0;
};
HalfGamma gamma_half(long twice_arg);
HalfGamma operator*(const HalfGamma& x, const HalfGamma& y);
HalfGamma operator/(const HalfGamma& x, const HalfGamma& y);

enum class Form { exact, truncated_series };
std::string_view to_string(Form f) noexcept;

struct ExactProb {
  Form form = Form::exact;
  /// Set iff form == Form::exact.
  std::optional<Rational> exact;
  Real value;
  /// Zero for exact values. For P1 a certified truncation bound on [value, value + bound];
  /// for P2 the extrapolation error estimate (symmetric).
  Real error_bound;
  /// Simplest rational inside the error interval, kept only when its denominator is at
  /// most 10^(digits/2 - 2) so that it is unlikely to be a coincidence.
  std::optional<Rational> recognized;
  unsigned digits = 0;
  std::uint64_t terms = 0;
};

ExactProb make_exact(const Rational& r, unsigned digits = 30);

/// q(a) 2^(-4a-6) G(3a+5/2) G(5a+2) / (3 G(a+1) G(2a+3) G(5a+13/2)).
Real f_term(const Rational& alpha, unsigned digits);
/// Same quantity as an exact rational; alpha must be a positive multiple of 1/2.
Rational f_term_exact(const Rational& alpha);

/// Sum over i >= 0 of f_term(alpha + i), truncated once 50 consecutive terms and a
/// geometric tail bound are below 10^-digits.
ExactProb p1(const Rational& alpha, unsigned digits);

/// 1 - prefactor * 6F5(...; 1). The 6F5 converges algebraically at unit argument, so
/// partial sums on a doubling ladder are Richardson-extrapolated in powers of N^(-1/2).
ExactProb p2(const Rational& alpha, long k, unsigned digits);

/// The alpha = 4 family in the random-induced-measure index k, exact.
Rational p_k4(long k);
Rational q_k4(long k);

/// Unnormalized eigenvalue density (l1 l2)^a exp(-c (l1 + l2)) (l2 - l1)^8 on 0 <= l1 <= l2.
double forrester_pdf(double lambda1, double lambda2, double a, double c);
/// Integral of forrester_pdf over the ordered region, in closed form.
Real forrester_pdf_norm(const Real& a, const Real& c, unsigned digits);
/// w_j with sum_j w_j P(a+j+1, c x) P(a+9-j, c y) the probability, for the unordered
/// pair, that l1 <= x and l2 <= y. The w_j sum to one.
std::array<double, 9> forrester_cdf_weights(double a);

}  // namespace octosep::formulas

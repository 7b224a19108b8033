#include "octosep/formulas.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <sstream>
#include <vector>

#include "octosep/errors.hpp"

namespace octosep::formulas {

namespace {

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational pow2(long e) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(std::abs(e));
  return e >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

bool is_half_integer_multiple(const Rational& x) {
  const BigInt den = boost::multiprecision::denominator(x);
  return den == 1 || den == 2;
}

long to_long(const BigInt& v) { return v.convert_to<long>(); }

Real sqrt_pi() { return sqrt(boost::math::constants::pi<Real>()); }

unsigned working_digits(unsigned digits) { return digits + 20; }

void fill_recognized(ExactProb& out, const Rational& lo, const Rational& hi) {
  const Rational r = simplest_rational_between(lo, hi);
  const int exponent = static_cast<int>(out.digits) / 2 - 2;
  if (exponent > 0 && boost::multiprecision::denominator(r) <= pow10(exponent)) out.recognized = r;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  if (s.empty()) throw DomainError("empty rational");
  auto parse_int = [&](const std::string& t) {
    if (t.empty()) throw DomainError("malformed rational '" + s + "'");
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) throw DomainError("malformed rational '" + s + "'");
    for (std::size_t i = start; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw DomainError("malformed rational '" + s + "'");
    // Strip leading zeros: the BigInt string constructor reads "0125" as octal.
    std::size_t first = start;
    while (first + 1 < t.size() && t[first] == '0') ++first;
    const BigInt mag(t.substr(first));
    return t[0] == '-' ? BigInt(-mag) : mag;
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt num = parse_int(s.substr(0, slash));
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  // Decimal with optional exponent, parsed exactly.
  std::string mantissa = s;
  long exp10 = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    exp10 = to_long(parse_int(s.substr(e + 1)));
  }
  std::string digits = mantissa;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
  }
  Rational r(parse_int(digits));
  const BigInt scale = pow10(static_cast<unsigned>(std::abs(exp10)));
  return exp10 >= 0 ? Rational(r * scale) : Rational(r / scale);
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

std::string to_decimal(const Real& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::fixed);
}

std::string to_decimal(const Rational& x, unsigned digits) {
  PrecisionScope scope(digits + 20);
  return to_decimal(to_real(x), digits);
}

Real to_real(const Rational& r) {
  return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
}

Rational to_rational(const Real& x) {
  mpz_t z;
  mpz_init(z);
  const mpfr_exp_t e = mpfr_get_z_2exp(z, x.backend().data());
  BigInt m(z);
  mpz_clear(z);
  return Rational(m) * pow2(e);
}

Rational simplest_rational_between(Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  // Continued-fraction descent; negative intervals are mirrored.
  if (hi < 0) return -simplest_rational_between(-hi, -lo);
  if (lo <= 0) return Rational(0);
  std::vector<BigInt> terms;
  for (int guard = 0; guard < 100000; ++guard) {
    BigInt fl = boost::multiprecision::numerator(lo) / boost::multiprecision::denominator(lo);
    if (Rational(fl) == lo) {
      terms.push_back(fl);
      break;
    }
    if (Rational(fl + 1) <= hi) {
      terms.push_back(fl + 1);
      break;
    }
    terms.push_back(fl);
    const Rational new_lo = 1 / (hi - Rational(fl));
    const Rational new_hi = 1 / (lo - Rational(fl));
    lo = new_lo;
    hi = new_hi;
  }
  Rational r(terms.back());
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) r = Rational(*it) + 1 / r;
  return r;
}

Rational q_poly(const Rational& alpha) {
  Rational acc = 0;
  for (long c : kQCoefficients) acc = acc * alpha + c;
  return acc;
}

BigInt s_poly(long k) {
  BigInt acc = 0;
  for (long long c : kSCoefficients) acc = acc * k + c;
  return acc;
}

HalfGamma gamma_half(long twice_arg) {
  if (twice_arg <= 0) throw DomainError("gamma_half: argument must be positive");
  if (twice_arg % 2 == 0) return {Rational(factorial(twice_arg / 2 - 1)), 0};
  const long n = (twice_arg - 1) / 2;
  BigInt four_n = 1;
  four_n <<= static_cast<unsigned>(2 * n);
  return {Rational(factorial(2 * n), four_n * factorial(n)), 1};
}

HalfGamma operator*(const HalfGamma& x, const HalfGamma& y) {
  return {x.coef * y.coef, x.sqrt_pi_power + y.sqrt_pi_power};
}

HalfGamma operator/(const HalfGamma& x, const HalfGamma& y) {
  return {x.coef / y.coef, x.sqrt_pi_power - y.sqrt_pi_power};
}

std::string_view to_string(Form f) noexcept {
  return f == Form::exact ? "exact" : "truncated-series";
}

ExactProb make_exact(const Rational& r, unsigned digits) {
  PrecisionScope scope(working_digits(digits));
  ExactProb out;
  out.form = Form::exact;
  out.exact = r;
  out.value = to_real(r);
  out.error_bound = 0;
  out.digits = digits;
  return out;
}

Real f_term(const Rational& alpha, unsigned digits) {
  if (alpha <= 0) throw DomainError("f_term: alpha must be positive");
  PrecisionScope scope(working_digits(digits));
  const Real a = to_real(alpha);
  return to_real(q_poly(alpha)) * pow(Real(2), -4 * a - 6) * tgamma(3 * a + Real(5) / 2) *
         tgamma(5 * a + 2) / (3 * tgamma(a + 1) * tgamma(2 * a + 3) * tgamma(5 * a + Real(13) / 2));
}

Rational f_term_exact(const Rational& alpha) {
  if (alpha <= 0 || !is_half_integer_multiple(alpha))
    throw DomainError("f_term_exact: alpha must be a positive multiple of 1/2");
  const long m = to_long(boost::multiprecision::numerator(Rational(alpha * 2)));
  const HalfGamma g = gamma_half(3 * m + 5) * gamma_half(5 * m + 4) /
                      (gamma_half(m + 2) * gamma_half(2 * m + 6) * gamma_half(5 * m + 13));
  if (g.sqrt_pi_power != 0) throw DomainError("f_term_exact: sqrt(pi) did not cancel");
  return q_poly(alpha) * pow2(-(2 * m + 6)) * g.coef / 3;
}

ExactProb p1(const Rational& alpha, unsigned digits) {
  if (alpha <= 0) throw DomainError("P1: alpha must be positive");
  if (digits == 0) throw DomainError("P1: digits must be positive");
  PrecisionScope scope(working_digits(digits));

  constexpr int kBelowRun = 50;
  constexpr int kRatioWindow = 10;
  constexpr std::uint64_t kMaxTerms = 1000000;
  // Limit of f(a+1)/f(a): 3^3 / (2^2 * 2^4) from the Gamma growth rates and 2^(-4a).
  constexpr double kLimitRatio = 27.0 / 64.0;

  const bool exact_terms = is_half_integer_multiple(alpha);
  const Rational threshold(BigInt(1), pow10(digits));
  Rational exact_sum = 0;
  Real real_sum = 0;
  Rational prev_exact;
  Real prev_real;
  std::deque<double> ratios;
  int below = 0;

  for (std::uint64_t i = 0; i < kMaxTerms; ++i) {
    const Rational a_i = alpha + Rational(static_cast<long>(i));
    Rational term_q;
    Real term_r;
    double ratio = 0.0;
    if (exact_terms) {
      term_q = f_term_exact(a_i);
      exact_sum += term_q;
      if (i > 0) ratio = static_cast<double>(term_q / prev_exact);
      prev_exact = term_q;
    } else {
      term_r = f_term(a_i, digits);
      real_sum += term_r;
      if (i > 0) ratio = static_cast<double>(term_r / prev_real);
      prev_real = term_r;
    }
    if (i > 0) {
      ratios.push_back(ratio);
      if (ratios.size() > kRatioWindow) ratios.pop_front();
    }
    const bool small = exact_terms ? term_q < threshold : to_rational(term_r) < threshold;
    below = small ? below + 1 : 0;
    if (below < kBelowRun || ratios.size() < kRatioWindow) continue;

    const double r = std::max(*std::max_element(ratios.begin(), ratios.end()), kLimitRatio);
    if (r >= 1.0) continue;
    const Rational rq(r);
    const Rational last = exact_terms ? term_q : to_rational(term_r);
    const Rational tail = last * rq / (1 - rq);
    if (tail >= threshold) continue;

    ExactProb out;
    out.form = Form::truncated_series;
    out.digits = digits;
    out.terms = i + 1;
    const Rational lo = exact_terms ? exact_sum : to_rational(real_sum);
    out.value = exact_terms ? to_real(exact_sum) : real_sum;
    out.error_bound = to_real(tail);
    fill_recognized(out, lo, lo + tail);
    return out;
  }
  throw NonConvergence("P1: term ratio did not settle below 1 within 10^6 terms");
}

ExactProb p2(const Rational& alpha, long k, unsigned digits) {
  if (alpha <= 0) throw DomainError("P2: alpha must be positive");
  if (k < 0) throw DomainError("P2: k must be nonnegative");
  if (digits == 0) throw DomainError("P2: digits must be positive");
  PrecisionScope scope(working_digits(digits) + digits / 2);

  const Rational a = alpha;
  const Rational kk(k);
  const Rational half(1, 2);
  const Rational five_halves_a = a * 5 / 2;
  // Numerator parameters other than the unit one (which cancels n!).
  const std::array<Rational, 5> upper = {
      five_halves_a + kk + 1,          five_halves_a + kk + Rational(3, 2),
      2 * a + kk + Rational(3, 2),     3 * a + kk + Rational(3, 2),
      five_halves_a + kk + Rational(19, 8)};
  const std::array<Rational, 5> lower = {
      a + kk + 2, 4 * a + kk + 2, five_halves_a + kk + Rational(7, 4),
      five_halves_a + kk + Rational(9, 4), five_halves_a + kk + Rational(11, 8)};

  Rational excess = 0;
  Rational largest = 1;
  for (const auto& b : lower) {
    excess += b;
    largest = std::max(largest, b);
  }
  for (const auto& u : upper) {
    excess -= u;
    largest = std::max(largest, u);
  }
  if (excess <= 1) throw NonConvergence("P2: 6F5 at unit argument diverges");

  const Real ar = to_real(a);
  const Real kr(k);
  const Real prefactor = ar * (20 * ar + 8 * kr + 11) * tgamma(5 * ar + 2 * kr + 2) *
                         tgamma(3 * ar + kr + Real(3) / 2) * tgamma(2 * ar + kr + Real(3) / 2) /
                         (2 * sqrt_pi() * tgamma(5 * ar + 2 * kr + Real(7) / 2) *
                          tgamma(ar + kr + 2) * tgamma(4 * ar + kr + 2));

  std::array<Real, 5> up, lo;
  for (std::size_t i = 0; i < 5; ++i) {
    up[i] = to_real(upper[i]);
    lo[i] = to_real(lower[i]);
  }

  // Tail of the partial sums: N^(1-excess) * (e0 + e1/N + ...).
  const Real lead = to_real(excess) - 1;
  std::uint64_t n0 = 16;
  while (Rational(static_cast<long>(n0)) < 4 * largest) n0 *= 2;
  constexpr std::uint64_t kMaxTerms = std::uint64_t{1} << 26;
  const Real tolerance = pow(Real(10), -static_cast<int>(digits) - 2);

  std::vector<Real> sums;
  Real term = 1;
  Real partial = 0;
  std::uint64_t n = 0;
  std::uint64_t target = n0;
  Real best, err;
  while (target <= kMaxTerms) {
    for (; n < target; ++n) {
      partial += term;
      Real num = up[0] + n, den = lo[0] + n;
      for (std::size_t i = 1; i < 5; ++i) {
        num *= up[i] + n;
        den *= lo[i] + n;
      }
      term *= num / den;
    }
    sums.push_back(partial);
    target *= 2;
    if (sums.size() < 4) continue;

    // Richardson table on the doubling ladder; row m removes the N^-(lead + m) term.
    std::vector<Real> prev = sums;
    std::vector<Real> prev_row;
    for (std::size_t m = 0; m + 1 < sums.size(); ++m) {
      const Real f = pow(Real(2), lead + m);
      std::vector<Real> next(prev.size() - 1);
      for (std::size_t i = 0; i + 1 < prev.size(); ++i) next[i] = (f * prev[i + 1] - prev[i]) / (f - 1);
      prev_row = std::move(prev);
      prev = std::move(next);
    }
    best = prev[0];
    err = max(abs(best - prev_row[0]), abs(best - prev_row[1]));
    if (err < tolerance) {
      ExactProb out;
      out.form = Form::truncated_series;
      out.digits = digits;
      out.terms = n;
      out.value = 1 - prefactor * best;
      out.error_bound = prefactor * err;
      const Rational v = to_rational(out.value);
      const Rational e = to_rational(out.error_bound);
      fill_recognized(out, v - e, v + e);
      return out;
    }
  }
  throw NonConvergence("P2: Richardson extrapolation did not reach the requested precision");
}

Rational p_k4(long k) {
  if (k < 0) throw DomainError("P(k,4): k must be nonnegative");
  // G(k+27/2) G(2k+23) / (sqrt(pi) G(3k+42)); the sqrt(pi) cancels.
  const HalfGamma g = gamma_half(2 * k + 27) * gamma_half(4 * k + 46) / gamma_half(6 * k + 84);
  if (g.sqrt_pi_power != 1) throw DomainError("P(k,4): unexpected sqrt(pi) power");
  const Rational frac = pow2(2 * k + 25) * Rational((k + 11) * (k + 12) * (k + 13)) *
                        Rational(s_poly(k)) * g.coef / 315;
  return 1 - frac;
}

Rational q_k4(long k) {
  if (k < 0) throw DomainError("Q(k,4): k must be nonnegative");
  // G(k+19/2) G(k+23/2) G(k+27/2) / (pi G(k+17) G(2k+43/2)); pi^(3/2) / pi^(3/2).
  const HalfGamma g = gamma_half(2 * k + 19) * gamma_half(2 * k + 23) * gamma_half(2 * k + 27) /
                      (gamma_half(2 * k + 34) * gamma_half(4 * k + 43));
  if (g.sqrt_pi_power != 2) throw DomainError("Q(k,4): unexpected sqrt(pi) power");
  const BigInt cubic = BigInt(k) * k * k + 34 * BigInt(k) * k + 402 * BigInt(k) + 1608;
  const Rational frac = pow2(2 * k + 23) * Rational(k + 11) * Rational(cubic) * g.coef;
  return Rational(1, 2) - frac;
}

double forrester_pdf(double lambda1, double lambda2, double a, double c) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= lambda1))
    throw DomainError("forrester_pdf: requires 0 <= lambda1 <= lambda2");
  if (!(a > -1.0)) throw DomainError("forrester_pdf: requires a > -1");
  if (!(c > 0.0)) throw DomainError("forrester_pdf: requires c > 0");
  const double gap = lambda2 - lambda1;
  return std::pow(lambda1 * lambda2, a) * std::exp(-c * (lambda1 + lambda2)) * std::pow(gap, 8);
}

namespace {

std::array<Real, 9> binomial_gamma_terms(const Real& a) {
  static constexpr std::array<int, 9> kBinom = {1, 8, 28, 56, 70, 56, 28, 8, 1};
  std::array<Real, 9> t;
  for (int j = 0; j <= 8; ++j) {
    t[j] = kBinom[j] * tgamma(a + j + 1) * tgamma(a + 9 - j);
    if (j % 2 == 1) t[j] = -t[j];
  }
  return t;
}

}  // namespace

Real forrester_pdf_norm(const Real& a, const Real& c, unsigned digits) {
  if (!(a > -1)) throw DomainError("forrester_pdf_norm: requires a > -1");
  if (!(c > 0)) throw DomainError("forrester_pdf_norm: requires c > 0");
  // Extra digits absorb the cancellation in the alternating binomial sum.
  PrecisionScope scope(working_digits(digits) + 20);
  Real sum = 0;
  for (const auto& t : binomial_gamma_terms(a)) sum += t;
  // Symmetric integrand: the ordered region carries half of the full quadrant.
  return sum / (2 * pow(c, 2 * a + 10));
}

std::array<double, 9> forrester_cdf_weights(double a) {
  if (!(a > -1.0)) throw DomainError("forrester_cdf_weights: requires a > -1");
  PrecisionScope scope(60);
  const auto terms = binomial_gamma_terms(Real(a));
  Real total = 0;
  for (const auto& t : terms) total += t;
  std::array<double, 9> w{};
  for (std::size_t j = 0; j < 9; ++j) w[j] = static_cast<double>(terms[j] / total);
  return w;
}

}  // namespace octosep::formulas

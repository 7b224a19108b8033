#include "octosep/octomatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "octosep/errors.hpp"

namespace octosep {

namespace {

void require_dim(const OctoMatrix& m, std::size_t n, const char* what) {
  if (m.dim() != n) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(n) + "x" +
                            std::to_string(n) + ", got " + std::to_string(m.dim()));
  }
}

double max_entry_norm(const OctoMatrix& a) noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::sqrt(norm2(a(i, j))));
  return m;
}

}  // namespace

OctoMatrix::OctoMatrix(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxDim) throw DimensionMismatch("matrix dimension must be 1..4");
}

OctoMatrix::OctoMatrix(std::initializer_list<std::initializer_list<Octonion>> rows)
    : OctoMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionMismatch("ragged initializer for OctoMatrix");
    std::size_t j = 0;
    for (const auto& x : row) (*this)(i, j++) = x;
    ++i;
  }
}

OctoMatrix OctoMatrix::identity(std::size_t n) {
  OctoMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Octonion(1.0);
  return m;
}

OctoMatrix& OctoMatrix::operator*=(double s) noexcept {
  for (auto& x : e_) x *= s;
  return *this;
}

bool operator==(const OctoMatrix& a, const OctoMatrix& b) noexcept {
  if (a.n_ != b.n_) return false;
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

OctoMatrix mmult(const OctoMatrix& a, const OctoMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("mmult: operand dimensions differ");
  const auto n = a.dim();
  OctoMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Octonion acc;
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

OctoMatrix ctranspose(const OctoMatrix& a) {
  const auto n = a.dim();
  OctoMatrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = conj(a(j, i));
  return t;
}

OctoMatrix gram(const OctoMatrix& t) {
  const auto n = t.dim();
  OctoMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Octonion acc;
      for (std::size_t k = 0; k < n; ++k) acc += conj(t(k, i)) * t(k, j);
      w(i, j) = acc;
      if (i != j) w(j, i) = conj(acc);
    }
    // Diagonal of a Gram matrix is sum |t_ki|^2 exactly.
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) d += norm2(t(k, i));
    w(i, i) = Octonion(d);
  }
  return w;
}

OctoMatrix partial_transpose(const OctoMatrix& a) {
  require_dim(a, 4, "partial_transpose");
  OctoMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + l, 2 * k + j) = a(2 * i + j, 2 * k + l);
  return out;
}

bool is_hermitian(const OctoMatrix& a, double rel_tol) noexcept {
  const double scale = std::max(1.0, max_entry_norm(a));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      if (max_abs_diff(a(i, j), conj(a(j, i))) > rel_tol * scale) return false;
  return true;
}

Octonion odet2(const Octonion& p, const Octonion& q, const Octonion& r,
               const Octonion& s) noexcept {
  return (p * s + s * p - q * r - r * q) * 0.5;
}

Octonion odet2(const OctoMatrix& m) {
  require_dim(m, 2, "odet2");
  return odet2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

Det4 laplace_det4(const OctoMatrix& m, MinorMode mode, std::pair<std::size_t, std::size_t> rows) {
  require_dim(m, 4, "laplace_det4");
  auto [r0, r1] = rows;
  if (r0 > r1) std::swap(r0, r1);
  if (r0 == r1 || r1 > 3) throw DimensionMismatch("laplace_det4: invalid row pair");
  std::array<std::size_t, 2> rc{};
  for (std::size_t r = 0, k = 0; r < 4; ++r)
    if (r != r0 && r != r1) rc[k++] = r;

  Octonion sum;
  double real_sum = 0.0;
  for (std::size_t s0 = 0; s0 < 4; ++s0) {
    for (std::size_t s1 = s0 + 1; s1 < 4; ++s1) {
      std::array<std::size_t, 2> sc{};
      for (std::size_t c = 0, k = 0; c < 4; ++c)
        if (c != s0 && c != s1) sc[k++] = c;
      const double sign = ((r0 + r1 + s0 + s1) % 2 == 0) ? 1.0 : -1.0;
      if (mode == MinorMode::real) {
        const double top = real_of_product(m(r0, s0), m(r1, s1)) -
                           real_of_product(m(r0, s1), m(r1, s0));
        const double bottom = real_of_product(m(rc[0], sc[0]), m(rc[1], sc[1])) -
                              real_of_product(m(rc[0], sc[1]), m(rc[1], sc[0]));
        real_sum += sign * top * bottom;
      } else {
        const Octonion top = odet2(m(r0, s0), m(r0, s1), m(r1, s0), m(r1, s1));
        const Octonion bottom = odet2(m(rc[0], sc[0]), m(rc[0], sc[1]), m(rc[1], sc[0]),
                                      m(rc[1], sc[1]));
        sum += sign * (top * bottom);
      }
    }
  }
  if (mode == MinorMode::real) return {real_sum, 0.0};

  Det4 d{sum.real(), imag_norm(sum)};
  if (d.residual > kResidualTolerance * (1.0 + std::abs(d.value)))
    throw ImaginaryResidualExceeded(d.residual, d.value);
  return d;
}

Det4Spread laplace_det4_all_pairs(const OctoMatrix& m, MinorMode mode) {
  Det4Spread out;
  for (std::size_t k = 0; k < 3; ++k) out.expansions[k] = laplace_det4(m, mode, {0, k + 1});
  const auto [lo, hi] = std::minmax_element(
      out.expansions.begin(), out.expansions.end(),
      [](const Det4& a, const Det4& b) { return a.value < b.value; });
  out.spread = hi->value - lo->value;
  return out;
}

double principal_minor_residual(const OctoMatrix& m) noexcept {
  double worst = 0.0;
  for (std::size_t b = 0; b + 1 < m.dim(); b += 2) {
    const Octonion d = odet2(m(b, b), m(b, b + 1), m(b + 1, b), m(b + 1, b + 1));
    worst = std::max(worst, imag_norm(d) / (1.0 + std::abs(d.real())));
  }
  return worst;
}

double det3_hermitian(const OctoMatrix& m) {
  require_dim(m, 3, "det3_hermitian");
  if (!is_hermitian(m)) throw NotHermitian("det3_hermitian: matrix is not Hermitian");
  const double a = m(0, 0).real(), b = m(1, 1).real(), c = m(2, 2).real();
  const Octonion& x = m(1, 2);
  const Octonion& y = m(0, 2);
  const Octonion& z = m(0, 1);
  return a * b * c - a * norm2(x) - b * norm2(y) - c * norm2(z) +
         2.0 * real((conj(y) * z) * x);
}

std::pair<double, double> eig2_hermitian(const OctoMatrix& m) {
  require_dim(m, 2, "eig2_hermitian");
  if (!is_hermitian(m)) throw NotHermitian("eig2_hermitian: matrix is not Hermitian");
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double b2 = norm2(m(0, 1));
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b2);
  const double tr = a + d;
  // Larger-magnitude root directly, the other from the product to avoid cancellation.
  const double r1 = 0.5 * (tr + (tr >= 0 ? disc : -disc));
  const double r2 = (r1 != 0.0) ? (a * d - b2) / r1 : 0.0;
  return r1 <= r2 ? std::pair{r1, r2} : std::pair{r2, r1};
}

}  // namespace octosep

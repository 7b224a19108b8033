#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>

namespace octosep {

/// Octonion with real coefficients over the basis e0..e7 (e0 is the identity).
///
/// Multiplication follows Cayley-Dickson doubling at every level:
///   (p, q)(r, s) = (p r - conj(s) q, s p + q conj(r))
/// An octonion is a pair of quaternions (c0..c3, c4..c7), a quaternion a pair
/// of complex numbers, a complex number a pair of reals. Under this labelling
/// e1 e2 = e3, e1 e4 = e5, e2 e4 = e6, e3 e4 = e7.
class Octonion {
 public:
  static constexpr std::size_t kDim = 8;

  constexpr Octonion() noexcept = default;
  constexpr explicit Octonion(double re) noexcept : c_{re, 0, 0, 0, 0, 0, 0, 0} {}
  constexpr explicit Octonion(const std::array<double, kDim>& c) noexcept : c_(c) {}

  static constexpr Octonion unit(std::size_t i) noexcept {
    Octonion x;
    x.c_[i] = 1.0;
    return x;
  }

  constexpr double operator[](std::size_t i) const noexcept { return c_[i]; }
  constexpr double& operator[](std::size_t i) noexcept { return c_[i]; }
  constexpr const std::array<double, kDim>& coeffs() const noexcept { return c_; }

  constexpr double real() const noexcept { return c_[0]; }

  constexpr Octonion& operator+=(const Octonion& o) noexcept {
    for (std::size_t i = 0; i < kDim; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Octonion& operator-=(const Octonion& o) noexcept {
    for (std::size_t i = 0; i < kDim; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Octonion& operator*=(double s) noexcept {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

 private:
  std::array<double, kDim> c_{};
};

namespace detail {

/// Recursive Cayley-Dickson product on length-N coefficient blocks.
template <std::size_t N>
constexpr std::array<double, N> cd_conj(const std::array<double, N>& x) {
  std::array<double, N> y{};
  y[0] = x[0];
  for (std::size_t i = 1; i < N; ++i) y[i] = -x[i];
  return y;
}

template <std::size_t N>
constexpr std::array<double, N> cd_product(const std::array<double, N>& x,
                                           const std::array<double, N>& y) {
  if constexpr (N == 1) {
    return {x[0] * y[0]};
  } else {
    constexpr std::size_t H = N / 2;
    std::array<double, H> p{}, q{}, r{}, s{};
    for (std::size_t i = 0; i < H; ++i) {
      p[i] = x[i];
      q[i] = x[i + H];
      r[i] = y[i];
      s[i] = y[i + H];
    }
    const auto pr = cd_product<H>(p, r);
    const auto sq = cd_product<H>(cd_conj<H>(s), q);
    const auto sp = cd_product<H>(s, p);
    const auto qr = cd_product<H>(q, cd_conj<H>(r));
    std::array<double, N> out{};
    for (std::size_t i = 0; i < H; ++i) {
      out[i] = pr[i] - sq[i];
      out[i + H] = sp[i] + qr[i];
    }
    return out;
  }
}

struct BasisProduct {
  std::array<std::array<int, 8>, 8> index{};
  std::array<std::array<double, 8>, 8> sign{};
};

/// e_i e_j = sign[i][j] * e_{index[i][j]}, derived from cd_product on basis vectors.
constexpr BasisProduct make_basis_table() {
  BasisProduct t{};
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      std::array<double, 8> ei{}, ej{};
      ei[i] = 1.0;
      ej[j] = 1.0;
      const auto prod = cd_product<8>(ei, ej);
      for (std::size_t k = 0; k < 8; ++k) {
        if (prod[k] != 0.0) {
          t.index[i][j] = static_cast<int>(k);
          t.sign[i][j] = prod[k];
        }
      }
    }
  }
  return t;
}

inline constexpr BasisProduct kBasisTable = make_basis_table();

}  // namespace detail

constexpr Octonion operator+(Octonion x, const Octonion& y) noexcept { return x += y; }
constexpr Octonion operator-(Octonion x, const Octonion& y) noexcept { return x -= y; }
constexpr Octonion operator*(Octonion x, double s) noexcept { return x *= s; }
constexpr Octonion operator*(double s, Octonion x) noexcept { return x *= s; }
constexpr Octonion operator-(Octonion x) noexcept { return x *= -1.0; }

/// Octonion product; bilinear, norm-multiplicative, alternative, not associative.
constexpr Octonion operator*(const Octonion& x, const Octonion& y) noexcept {
  Octonion out;
  for (std::size_t i = 0; i < 8; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < 8; ++j) {
      const auto k = static_cast<std::size_t>(detail::kBasisTable.index[i][j]);
      out[k] += detail::kBasisTable.sign[i][j] * x[i] * y[j];
    }
  }
  return out;
}

constexpr Octonion conj(const Octonion& x) noexcept {
  Octonion y = -x;
  y[0] = x[0];
  return y;
}

constexpr double norm2(const Octonion& x) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < 8; ++i) s += x[i] * x[i];
  return s;
}

constexpr double real(const Octonion& x) noexcept { return x[0]; }

/// Euclidean norm of the imaginary part.
double imag_norm(const Octonion& x) noexcept;

/// Re(x y) without forming the full product.
constexpr double real_of_product(const Octonion& x, const Octonion& y) noexcept {
  double s = x[0] * y[0];
  for (std::size_t i = 1; i < 8; ++i) s -= x[i] * y[i];
  return s;
}

/// Associator (x y) z - x (y z).
constexpr Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z) noexcept {
  return (x * y) * z - x * (y * z);
}

double max_abs_diff(const Octonion& x, const Octonion& y) noexcept;

std::ostream& operator<<(std::ostream& os, const Octonion& x);

}  // namespace octosep

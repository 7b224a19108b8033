#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <utility>

#include "octosep/octonion.hpp"

namespace octosep {

/// Dense n x n octonionic matrix, n in {1,..,4}. Entries stored row-major in a fixed buffer.
class OctoMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  OctoMatrix() = default;
  explicit OctoMatrix(std::size_t n);
  OctoMatrix(std::initializer_list<std::initializer_list<Octonion>> rows);

  static OctoMatrix identity(std::size_t n);
  static OctoMatrix zero(std::size_t n) { return OctoMatrix(n); }

  std::size_t dim() const noexcept { return n_; }

  const Octonion& operator()(std::size_t i, std::size_t j) const noexcept {
    return e_[i * kMaxDim + j];
  }
  Octonion& operator()(std::size_t i, std::size_t j) noexcept { return e_[i * kMaxDim + j]; }

  OctoMatrix& operator*=(double s) noexcept;

  friend bool operator==(const OctoMatrix& a, const OctoMatrix& b) noexcept;

 private:
  std::size_t n_ = 0;
  std::array<Octonion, kMaxDim * kMaxDim> e_{};
};

/// Matrix product; each entry is a sum of binary products, so association never matters.
OctoMatrix mmult(const OctoMatrix& a, const OctoMatrix& b);

/// Conjugate transpose.
OctoMatrix ctranspose(const OctoMatrix& a);

/// T^dagger T for any square T, exploiting nothing but Hermitian symmetry of the result.
OctoMatrix gram(const OctoMatrix& t);

/// Transpose on the second tensor factor of a 2 (x) 2 index, without conjugation:
/// out((i,l),(k,j)) = in((i,j),(k,l)) with row index 2*i + j.
OctoMatrix partial_transpose(const OctoMatrix& a);

/// Hermitian test with tolerance relative to the largest entry magnitude.
bool is_hermitian(const OctoMatrix& a, double rel_tol = 1e-10) noexcept;

/// Symmetrized 2x2 determinant (ps + sp - qr - rq) / 2 of [[p, q], [r, s]].
Octonion odet2(const Octonion& p, const Octonion& q, const Octonion& r, const Octonion& s) noexcept;
Octonion odet2(const OctoMatrix& m);

/// How the 2x2 complementary minors enter the Laplace expansion.
enum class MinorMode {
  /// Minors are reduced to their real parts Re(ps) - Re(qr) before multiplying.
  /// Real by construction; this is the Monte Carlo default.
  real,
  /// Full octonion-valued symmetrized minors multiplied as (top)(bottom); the real part
  /// of the sum is the determinant and its imaginary part is reported as a residual.
  octonion,
};

struct Det4 {
  double value = 0.0;
  /// |Im(sum)| of the expansion; identically zero in MinorMode::real.
  double residual = 0.0;
};

/// Residual tolerance for MinorMode::octonion: residual <= 1e-8 * (1 + |value|).
inline constexpr double kResidualTolerance = 1e-8;

/// Laplace expansion along rows {r0, r1} (0-based) by complementary 2x2 minors.
/// Throws ImaginaryResidualExceeded in MinorMode::octonion when the residual exceeds
/// kResidualTolerance * (1 + |value|).
Det4 laplace_det4(const OctoMatrix& m, MinorMode mode = MinorMode::real,
                  std::pair<std::size_t, std::size_t> rows = {0, 1});

/// The three distinct row-pair expansions {0,1}, {0,2}, {0,3} and their spread.
struct Det4Spread {
  std::array<Det4, 3> expansions{};
  double spread = 0.0;
};
Det4Spread laplace_det4_all_pairs(const OctoMatrix& m, MinorMode mode = MinorMode::real);

/// Largest imaginary residual of odet2 over the two diagonal 2x2 blocks, relative to
/// 1 + |real part|. These principal minors of a Hermitian matrix are real.
double principal_minor_residual(const OctoMatrix& m) noexcept;

/// abc - a|x|^2 - b|y|^2 - c|z|^2 + 2 Re((conj(y) z) x) with x = m(1,2), y = m(0,2), z = m(0,1).
double det3_hermitian(const OctoMatrix& m);

/// Ascending eigenvalue pair of a 2x2 Hermitian octonionic matrix.
std::pair<double, double> eig2_hermitian(const OctoMatrix& m);

}  // namespace octosep

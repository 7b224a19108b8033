#include "octosep/octonion.hpp"

#include <cmath>
#include <ostream>

namespace octosep {

double imag_norm(const Octonion& x) noexcept {
  double s = 0.0;
  for (std::size_t i = 1; i < 8; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

double max_abs_diff(const Octonion& x, const Octonion& y) noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < 8; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

std::ostream& operator<<(std::ostream& os, const Octonion& x) {
  os << '(';
  for (std::size_t i = 0; i < 8; ++i) os << (i ? ", " : "") << x[i];
  return os << ')';
}

}  // namespace octosep

#include "qwalk/types.hpp"

#include <stdexcept>
#include <string>

namespace qwalk {

std::string_view to_string(Polarization p) { return p == Polarization::R ? "R" : "L"; }

Polarization polarization_from_string(std::string_view s) {
  if (s == "R" || s == "r") return Polarization::R;
  if (s == "L" || s == "l") return Polarization::L;
  throw std::invalid_argument("unknown polarization '" + std::string(s) + "' (expected R or L)");
}

Mat2 Mat2::identity() { return from_rows(1.0, 0.0, 0.0, 1.0); }

Mat2 Mat2::from_rows(Complex a00, Complex a01, Complex a10, Complex a11) {
  Mat2 r;
  r.m = {a00, a01, a10, a11};
  return r;
}

Mat2 Mat2::adjoint() const {
  return from_rows(std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3]));
}

double Mat2::max_abs_diff(const Mat2& other) const {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - other.m[i]));
  return d;
}

bool Mat2::is_unitary(double tol) const { return ((*this).adjoint() * (*this)).max_abs_diff(identity()) < tol; }

bool Mat2::is_finite() const {
  for (const auto& z : m) {
    if (!qwalk::is_finite(z)) return false;
  }
  return true;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  }
  return r;
}

Mat2 operator*(Complex s, const Mat2& a) {
  Mat2 r = a;
  for (auto& z : r.m) z *= s;
  return r;
}

Mat2 pauli_x() { return Mat2::from_rows(0.0, 1.0, 1.0, 0.0); }

Charge Charge::from_q(double q) {
  const double twice = 2.0 * q;
  if (!std::isfinite(twice) || std::abs(twice - std::round(twice)) > 1e-9) {
    throw std::invalid_argument("q-plate charge q=" + std::to_string(q) + " is not a half-integer");
  }
  return from_shift(static_cast<int>(std::lround(twice)));
}

Charge Charge::from_shift(int two_q) {
  if (two_q == 0) throw std::invalid_argument("q-plate charge must be nonzero");
  return Charge(two_q);
}

}  // namespace qwalk

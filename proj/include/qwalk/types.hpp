#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <complex>
#include <string_view>

namespace qwalk {

using Complex = std::complex<double>;

// Shared numerical budget: single operations vs. long accumulated runs.
inline constexpr double kOperationTolerance = 1e-12;
inline constexpr double kAccumulatedTolerance = 1e-10;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kPi = 3.14159265358979323846;

/// Circular polarization basis (e_R, e_L).
///
/// The walk coin is identified with polarization as up <-> R, down <-> L.
/// This is the identification under which a q-plate followed by a quarter-wave
/// plate at 45 degrees reproduces the shift-then-Hadamard walk operator exactly.
enum class Polarization : int { R = 0, L = 1 };

constexpr int index_of(Polarization p) { return static_cast<int>(p); }
constexpr Polarization polarization_at(int i) { return i == 0 ? Polarization::R : Polarization::L; }
constexpr Polarization flipped(Polarization p) {
  return p == Polarization::R ? Polarization::L : Polarization::R;
}
std::string_view to_string(Polarization p);
Polarization polarization_from_string(std::string_view s);

/// One optical mode: OAM index ell (units of hbar per photon) and polarization.
struct Mode {
  int ell = 0;
  Polarization pol = Polarization::R;

  friend constexpr auto operator<=>(const Mode&, const Mode&) = default;
};

/// 2x2 complex matrix in the (R, L) circular basis, row-major.
struct Mat2 {
  std::array<Complex, 4> m{};

  constexpr Complex& operator()(int row, int col) { return m[row * 2 + col]; }
  constexpr const Complex& operator()(int row, int col) const { return m[row * 2 + col]; }

  static Mat2 identity();
  static Mat2 from_rows(Complex a00, Complex a01, Complex a10, Complex a11);

  Mat2 adjoint() const;
  double max_abs_diff(const Mat2& other) const;
  bool is_unitary(double tol = kOperationTolerance) const;
  bool is_finite() const;

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(Complex s, const Mat2& a);
};

Mat2 pauli_x();

/// q-plate charge. Stored as the integer 2q, which is also the OAM shift per pass.
class Charge {
 public:
  /// Throws std::invalid_argument unless 2q is a nonzero integer.
  static Charge from_q(double q);
  static Charge from_shift(int two_q);
  static constexpr Charge half() { return Charge(1); }

  constexpr int shift() const { return two_q_; }
  constexpr double q() const { return two_q_ / 2.0; }
  constexpr Charge reversed() const { return Charge(-two_q_); }

  friend constexpr bool operator==(Charge, Charge) = default;

 private:
  explicit constexpr Charge(int two_q) : two_q_(two_q) {}
  int two_q_;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace qwalk

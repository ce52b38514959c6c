#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct JonesAmplitude {
  Complex r{};
  Complex l{};

  Complex& operator[](Polarization p) { return p == Polarization::R ? r : l; }
  const Complex& operator[](Polarization p) const { return p == Polarization::R ? r : l; }
};

/// Transverse field at z = 0 expanded over OAM: sum_ell (c_R e_R + c_L e_L) e^{i ell phi}.
/// Radial profiles are collapsed into one weight per ell; overall_scale carries E0.
struct JonesField {
  std::map<int, JonesAmplitude> amplitudes;
  Complex overall_scale{1.0, 0.0};

  static JonesField single_mode(int ell, Complex c_r, Complex c_l);

  Complex at(Mode mode) const;
  double norm2() const;
};

JonesField to_jones(const WalkState& state);
WalkState to_walk(const JonesField& field);

/// Retarder with the given retardance and optic-axis angle, circular basis:
/// cos(G/2) I + i sin(G/2) [[0, e^{-2i theta}], [e^{2i theta}, 0]].
Mat2 retarder_matrix(double retardance, double axis_angle);
Mat2 qwp_matrix(double axis_angle);
/// Polarization rotation diag(e^{i angle}, e^{-i angle}).
Mat2 rotation_matrix(double angle);
Mat2 qplate_matrix(double q, double phi);

/// Walk coin realized by a quarter-wave plate after a q-plate: qwp(angle) * sigma_x.
/// Equals the Hadamard coin at angle = pi/4.
Mat2 coin_for_qwp(double axis_angle);

class NonCompilableElement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Optical element with a Jones matrix whose entries are each coefficient * e^{i harmonic phi}.
class JonesElement {
 public:
  struct Entry {
    Complex coefficient{};
    double harmonic = 0.0;
  };

  static JonesElement wave_plate(double retardance, double axis_angle);
  static JonesElement quarter_wave_plate(double axis_angle);
  static JonesElement half_wave_plate(double axis_angle);
  /// Azimuthally varying half-wave plate with axis angle q*phi.
  static JonesElement q_plate(double q);
  static JonesElement free_rotation(double angle);
  static JonesElement fixed(const Mat2& matrix);

  Mat2 matrix(double phi) const;
  JonesElement inverse() const;
  const Entry& entry(int row, int col) const { return entries_[row * 2 + col]; }

 private:
  std::array<Entry, 4> entries_{};
};

/// A translation-invariant linear map on (polarization, ell) modes:
/// input polarization p at ell goes to sum of amplitude * (to, ell + ell_shift).
class ModeOperator {
 public:
  struct Term {
    Polarization to = Polarization::R;
    int ell_shift = 0;
    Complex amplitude{};
  };

  static ModeOperator identity();
  /// Constant Jones matrix: acts on polarization only.
  static ModeOperator polarization(const Mat2& matrix);

  void add(Polarization from, Term term);
  const std::vector<Term>& terms(Polarization from) const { return terms_[index_of(from)]; }
  std::vector<std::pair<Mode, Complex>> image(Mode mode) const;

  /// `next` applied after this operator.
  ModeOperator then(const ModeOperator& next) const;
  ModeOperator adjoint() const;

  bool is_isometry(double tol = kOperationTolerance) const;

  /// Matrix restricted to ell in [ell_min, ell_max]; basis index (ell - ell_min) * 2 + pol.
  Eigen::MatrixXcd dense(int ell_min, int ell_max) const;

 private:
  std::array<std::vector<Term>, 2> terms_;
};

/// Throws NonCompilableElement when an entry's phi-dependence is not e^{i m phi} with integer m.
ModeOperator compile_to_modes(const JonesElement& element);

JonesField apply(const ModeOperator& op, const JonesField& field);

/// One round trip: q-plate then quarter-wave plate at `qwp_angle`.
ModeOperator walk_step_operator(Charge q, double qwp_angle = kPi / 4);
/// q-plate followed by the constant element coin * sigma_x, i.e. the walk step for `params`.
ModeOperator walk_step_operator(const StepParams& params);

enum class OperatorOrder { ShiftThenCoin, CoinThenShift };
enum class CoinIdentification { UpIsR, UpIsL };

/// Max elementwise |compiled(QWP(pi/4)) * compiled(q-plate) - (coin (x) I) * S| on a
/// truncated lattice of `sites` OAM values centred on 0.
double factorization_check(Charge q, int sites = 41, OperatorOrder order = OperatorOrder::ShiftThenCoin,
                           CoinIdentification identification = CoinIdentification::UpIsR);

}  // namespace qwalk

#include "qwalk/jones.hpp"

#include <string>

namespace qwalk {

JonesField JonesField::single_mode(int ell, Complex c_r, Complex c_l) {
  JonesField f;
  f.amplitudes.emplace(ell, JonesAmplitude{c_r, c_l});
  return f;
}

Complex JonesField::at(Mode mode) const {
  auto it = amplitudes.find(mode.ell);
  return it == amplitudes.end() ? Complex{} : it->second[mode.pol];
}

double JonesField::norm2() const {
  double n = 0.0;
  for (const auto& [ell, a] : amplitudes) n += std::norm(a.r) + std::norm(a.l);
  return n;
}

JonesField to_jones(const WalkState& state) {
  JonesField f;
  for (const auto& [ell, c] : state.amplitudes) f.amplitudes.emplace_hint(f.amplitudes.end(), ell, JonesAmplitude{c.up, c.down});
  return f;
}

WalkState to_walk(const JonesField& field) {
  WalkState s;
  for (const auto& [ell, a] : field.amplitudes) s.amplitudes.emplace_hint(s.amplitudes.end(), ell, CoinVector{a.r, a.l});
  return s;
}

Mat2 retarder_matrix(double retardance, double axis_angle) {
  const double c = std::cos(retardance / 2);
  const Complex is(0.0, std::sin(retardance / 2));
  return Mat2::from_rows(c, is * std::polar(1.0, -2 * axis_angle), is * std::polar(1.0, 2 * axis_angle), c);
}

Mat2 qwp_matrix(double axis_angle) { return retarder_matrix(kPi / 2, axis_angle); }

Mat2 rotation_matrix(double angle) {
  return Mat2::from_rows(std::polar(1.0, angle), 0.0, 0.0, std::polar(1.0, -angle));
}

Mat2 qplate_matrix(double q, double phi) {
  return Mat2::from_rows(0.0, std::polar(1.0, -2 * q * phi), std::polar(1.0, 2 * q * phi), 0.0);
}

Mat2 coin_for_qwp(double axis_angle) { return qwp_matrix(axis_angle) * pauli_x(); }

JonesElement JonesElement::wave_plate(double retardance, double axis_angle) {
  return fixed(retarder_matrix(retardance, axis_angle));
}

JonesElement JonesElement::quarter_wave_plate(double axis_angle) { return wave_plate(kPi / 2, axis_angle); }

JonesElement JonesElement::half_wave_plate(double axis_angle) { return wave_plate(kPi, axis_angle); }

JonesElement JonesElement::q_plate(double q) {
  JonesElement e;
  e.entries_[1] = {1.0, -2 * q};
  e.entries_[2] = {1.0, 2 * q};
  return e;
}

JonesElement JonesElement::free_rotation(double angle) { return fixed(rotation_matrix(angle)); }

JonesElement JonesElement::fixed(const Mat2& matrix) {
  JonesElement e;
  for (int i = 0; i < 4; ++i) e.entries_[i] = {matrix.m[i], 0.0};
  return e;
}

Mat2 JonesElement::matrix(double phi) const {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.m[i] = entries_[i].coefficient * std::polar(1.0, entries_[i].harmonic * phi);
  return out;
}

JonesElement JonesElement::inverse() const {
  // Unitary for every phi, so the inverse is the entrywise conjugate transpose.
  JonesElement e;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Entry& src = entry(c, r);
      e.entries_[r * 2 + c] = {std::conj(src.coefficient), -src.harmonic};
    }
  }
  return e;
}

ModeOperator ModeOperator::identity() { return polarization(Mat2::identity()); }

ModeOperator ModeOperator::polarization(const Mat2& matrix) {
  ModeOperator op;
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < 2; ++r) {
      if (matrix(r, c) != Complex{}) op.add(polarization_at(c), {polarization_at(r), 0, matrix(r, c)});
    }
  }
  return op;
}

void ModeOperator::add(Polarization from, Term term) {
  auto& list = terms_[index_of(from)];
  for (auto& t : list) {
    if (t.to == term.to && t.ell_shift == term.ell_shift) {
      t.amplitude += term.amplitude;
      return;
    }
  }
  list.push_back(term);
}

std::vector<std::pair<Mode, Complex>> ModeOperator::image(Mode mode) const {
  std::vector<std::pair<Mode, Complex>> out;
  for (const auto& t : terms(mode.pol)) out.push_back({Mode{mode.ell + t.ell_shift, t.to}, t.amplitude});
  return out;
}

ModeOperator ModeOperator::then(const ModeOperator& next) const {
  ModeOperator out;
  for (int p = 0; p < 2; ++p) {
    for (const auto& first : terms_[p]) {
      for (const auto& second : next.terms(first.to)) {
        out.add(polarization_at(p), {second.to, first.ell_shift + second.ell_shift, first.amplitude * second.amplitude});
      }
    }
  }
  for (auto& list : out.terms_) std::erase_if(list, [](const Term& t) { return t.amplitude == Complex{}; });
  return out;
}

ModeOperator ModeOperator::adjoint() const {
  ModeOperator out;
  for (int p = 0; p < 2; ++p) {
    for (const auto& t : terms_[p]) out.add(t.to, {polarization_at(p), -t.ell_shift, std::conj(t.amplitude)});
  }
  return out;
}

bool ModeOperator::is_isometry(double tol) const {
  // Translation invariance reduces column orthonormality to the two input polarizations.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Complex overlap{};
      for (const auto& ta : terms_[a]) {
        for (const auto& tb : terms_[b]) {
          if (ta.to == tb.to && ta.ell_shift == tb.ell_shift) overlap += std::conj(ta.amplitude) * tb.amplitude;
        }
      }
      if (std::abs(overlap - (a == b ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

Eigen::MatrixXcd ModeOperator::dense(int ell_min, int ell_max) const {
  const int n = 2 * (ell_max - ell_min + 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int ell = ell_min; ell <= ell_max; ++ell) {
    for (int p = 0; p < 2; ++p) {
      for (const auto& t : terms_[p]) {
        const int target = ell + t.ell_shift;
        if (target < ell_min || target > ell_max) continue;
        m((target - ell_min) * 2 + index_of(t.to), (ell - ell_min) * 2 + p) += t.amplitude;
      }
    }
  }
  return m;
}

ModeOperator compile_to_modes(const JonesElement& element) {
  ModeOperator op;
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < 2; ++r) {
      const auto& e = element.entry(r, c);
      if (e.coefficient == Complex{}) continue;
      const double m = std::round(e.harmonic);
      if (!std::isfinite(e.harmonic) || std::abs(e.harmonic - m) > 1e-12) {
        throw NonCompilableElement("Jones entry (" + std::to_string(r) + "," + std::to_string(c) +
                                   ") has azimuthal dependence e^{i " + std::to_string(e.harmonic) +
                                   " phi}, which is not an integer OAM shift");
      }
      op.add(polarization_at(c), {polarization_at(r), static_cast<int>(m), e.coefficient});
    }
  }
  return op;
}

JonesField apply(const ModeOperator& op, const JonesField& field) {
  JonesField out;
  out.overall_scale = field.overall_scale;
  for (const auto& [ell, a] : field.amplitudes) {
    for (int p = 0; p < 2; ++p) {
      const Polarization from = polarization_at(p);
      const Complex amp = a[from];
      if (amp == Complex{}) continue;
      for (const auto& t : op.terms(from)) out.amplitudes[ell + t.ell_shift][t.to] += t.amplitude * amp;
    }
  }
  return out;
}

ModeOperator walk_step_operator(Charge q, double qwp_angle) {
  return compile_to_modes(JonesElement::q_plate(q.q())).then(compile_to_modes(JonesElement::quarter_wave_plate(qwp_angle)));
}

ModeOperator walk_step_operator(const StepParams& params) {
  return compile_to_modes(JonesElement::q_plate(params.q.q()))
      .then(ModeOperator::polarization(params.coin * pauli_x()));
}

namespace {

// (coin (x) I) S or S (coin (x) I), written out from the walk's defining sums.
Eigen::MatrixXcd direct_walk_matrix(Charge q, int half_width, OperatorOrder order, CoinIdentification id) {
  const Mat2 coin = hadamard();
  const int n = 2 * (2 * half_width + 1);
  const int d = q.shift();
  auto pol_index = [id](int coin_index) { return id == CoinIdentification::UpIsR ? coin_index : 1 - coin_index; };
  auto index = [&](int ell, int coin_index) { return (ell + half_width) * 2 + pol_index(coin_index); };
  auto inside = [&](int ell) { return ell >= -half_width && ell <= half_width; };
  auto displacement = [d](int coin_index) { return coin_index == 0 ? d : -d; };

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = -half_width; j <= half_width; ++j) {
    for (int c = 0; c < 2; ++c) {
      for (int r = 0; r < 2; ++r) {
        const int target = order == OperatorOrder::ShiftThenCoin ? j + displacement(c) : j + displacement(r);
        if (inside(target)) m(index(target, r), index(j, c)) += coin(r, c);
      }
    }
  }
  return m;
}

}  // namespace

double factorization_check(Charge q, int sites, OperatorOrder order, CoinIdentification identification) {
  if (sites < 1 || sites % 2 == 0) throw std::invalid_argument("factorization_check needs an odd, positive site count");
  const int half_width = (sites - 1) / 2;
  const Eigen::MatrixXcd qplate = compile_to_modes(JonesElement::q_plate(q.q())).dense(-half_width, half_width);
  const Eigen::MatrixXcd qwp = compile_to_modes(JonesElement::quarter_wave_plate(kPi / 4)).dense(-half_width, half_width);
  const Eigen::MatrixXcd optical = qwp * qplate;
  const Eigen::MatrixXcd walk = direct_walk_matrix(q, half_width, order, identification);
  return (optical - walk).cwiseAbs().maxCoeff();
}

}  // namespace qwalk

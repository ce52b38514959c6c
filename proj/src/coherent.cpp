#include "qwalk/coherent.hpp"

namespace qwalk {

CreationMap CreationMap::q_plate(Charge q) {
  CreationMap m;
  const int d = q.shift();
  m.stages_.push_back([d](Mode in) -> CreationImage {
    if (in.pol == Polarization::R) return {{Mode{in.ell + d, Polarization::L}, 1.0}};
    return {{Mode{in.ell - d, Polarization::R}, 1.0}};
  });
  return m;
}

CreationMap CreationMap::wave_plate(const Mat2& matrix) {
  CreationMap m;
  m.stages_.push_back([matrix](Mode in) {
    CreationImage out;
    const int col = index_of(in.pol);
    for (int row = 0; row < 2; ++row) {
      if (matrix(row, col) != Complex{}) out.push_back({Mode{in.ell, polarization_at(row)}, matrix(row, col)});
    }
    return out;
  });
  return m;
}

CreationMap CreationMap::walk_step(const StepParams& params) {
  return q_plate(params.q).then(wave_plate(params.coin * pauli_x()));
}

CreationMap CreationMap::then(const CreationMap& next) const {
  CreationMap m = *this;
  m.stages_.insert(m.stages_.end(), next.stages_.begin(), next.stages_.end());
  return m;
}

CreationImage CreationMap::image(Mode mode) const {
  std::map<Mode, Complex> current{{mode, 1.0}};
  for (const auto& stage : stages_) {
    std::map<Mode, Complex> next;
    for (const auto& [m, c] : current) {
      for (const auto& [target, amp] : stage(m)) next[target] += c * amp;
    }
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

double CoherentField::mean_photon_number() const {
  double n = 0.0;
  for (const auto& [mode, a] : alphas) n += std::norm(a);
  return n;
}

CoherentField evolve_coherent(const CoherentField& field, const CreationMap& map) {
  // D(alpha a+_m) with a+_m -> sum_k c_k a+_k becomes prod_k D(alpha c_k a+_k).
  CoherentField out;
  for (const auto& [mode, alpha] : field.alphas) {
    if (alpha == Complex{}) continue;
    for (const auto& [target, c] : map.image(mode)) out.alphas[target] += alpha * c;
  }
  return out;
}

CoherentField evolve_coherent(const CoherentField& field, const StepParams& params) {
  return evolve_coherent(field, CreationMap::walk_step(params));
}

std::map<int, double> mean_photon_spectrum(const CoherentField& field) {
  std::map<int, double> spectrum;
  for (const auto& [mode, a] : field.alphas) spectrum[mode.ell] += std::norm(a);
  return spectrum;
}

SeparabilityReport separability_certificate(const CoherentField& field) {
  SeparabilityReport r;
  r.factors.assign(field.alphas.begin(), field.alphas.end());
  r.representation_size = r.factors.size();
  r.valid = true;
  for (const auto& [mode, a] : r.factors) {
    if (!is_finite(a)) r.valid = false;
    if (a != Complex{}) ++r.populated_modes;
  }
  return r;
}

CoherentField coherent_input(Complex alpha, int ell, CoinVector coin) {
  CoherentField f;
  if (coin.up != Complex{}) f.alphas[{ell, Polarization::R}] = alpha * coin.up;
  if (coin.down != Complex{}) f.alphas[{ell, Polarization::L}] = alpha * coin.down;
  return f;
}

}  // namespace qwalk

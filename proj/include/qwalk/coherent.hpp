#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

using CreationImage = std::vector<std::pair<Mode, Complex>>;

/// Linear substitution a+_m -> sum_k c_k a+_{m_k}, built as a chain of optical stages.
class CreationMap {
 public:
  using Stage = std::function<CreationImage(Mode)>;

  /// a+_{R,ell} -> a+_{L,ell+2q},  a+_{L,ell} -> a+_{R,ell-2q}.
  static CreationMap q_plate(Charge q);
  /// a+_{s,ell} -> sum_s' M(s', s) a+_{s',ell}.
  static CreationMap wave_plate(const Mat2& matrix);
  /// One walk step: q-plate, then the wave plate coin * sigma_x
  /// (the 45 degree quarter-wave plate for the Hadamard coin).
  static CreationMap walk_step(const StepParams& params);

  CreationMap then(const CreationMap& next) const;
  CreationImage image(Mode mode) const;

 private:
  std::vector<Stage> stages_;
};

/// Product of coherent states, one complex amplitude per populated mode.
struct CoherentField {
  std::map<Mode, Complex> alphas;

  double mean_photon_number() const;
};

CoherentField evolve_coherent(const CoherentField& field, const CreationMap& map);
CoherentField evolve_coherent(const CoherentField& field, const StepParams& params);

std::map<int, double> mean_photon_spectrum(const CoherentField& field);

struct SeparabilityReport {
  bool valid = false;
  std::vector<std::pair<Mode, Complex>> factors;
  std::size_t populated_modes = 0;
  /// Complex numbers stored for the whole state. Equal to populated_modes for a
  /// product of coherent states; an entangled state has no such per-mode form.
  std::size_t representation_size = 0;
};

SeparabilityReport separability_certificate(const CoherentField& field);

/// alpha times the coin, placed on ell (R <- coin.up, L <- coin.down).
CoherentField coherent_input(Complex alpha, int ell, CoinVector coin);

}  // namespace qwalk

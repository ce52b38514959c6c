#pragma once

#include <map>
#include <vector>

#include "qwalk/coherent.hpp"
#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline constexpr int kMaxPhotons = 2;

/// Occupation configuration as a sorted multiset of modes (repeats = multiple occupancy).
using Configuration = std::vector<Mode>;

/// Superposition of normalized occupation states prod_m (a+_m)^{n_m} / sqrt(n_m!) |0>.
struct FockState {
  std::map<Configuration, Complex> terms;

  static FockState vacuum();
  static FockState single(Mode mode, Complex amplitude = 1.0);
  /// Normalized a+_a a+_b |0>; for a == b this is the doubly occupied state.
  static FockState pair(Mode a, Mode b);

  /// Throws std::logic_error if terms mix photon numbers.
  int photon_number() const;
  double norm2() const;
  Complex amplitude(Configuration config) const;
};

/// Substitutes every creation operator by its image and re-expands.
FockState apply_mode_map(const FockState& state, const CreationMap& map);
FockState apply_mode_map(const FockState& state, const StepParams& params);

/// a+_{R,ell} a+_{L,ell+2} |0> after two round trips with q = 1/2 and the Hadamard coin.
FockState hom_two_roundtrips(int ell);

/// Norm of the sector with exactly one photon at OAM ell_a and one at ell_b.
double coincidence_amplitude(const FockState& state, int ell_a, int ell_b);

/// Same input pair treated as labeled, distinguishable particles evolved independently:
/// probability of finding one at ell and the other at ell + 2 after two round trips.
double distinguishable_coincidence_probability(int ell);

/// Max |single-photon Fock amplitude - walk amplitude| after n steps from coin at ell = 0.
double single_photon_equivalence(int n, CoinVector coin = coin_preset("symmetric"), const StepParams& params = {});

}  // namespace qwalk

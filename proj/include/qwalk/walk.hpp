#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Coin amplitudes. up <-> R, down <-> L (see Polarization).
struct CoinVector {
  Complex up{};
  Complex down{};

  double norm2() const { return std::norm(up) + std::norm(down); }
  bool is_finite() const { return qwalk::is_finite(up) && qwalk::is_finite(down); }
  bool is_zero() const { return up == Complex{} && down == Complex{}; }
};

CoinVector operator*(const Mat2& u, const CoinVector& c);

/// Named initial coins: "symmetric" = (up + i down)/sqrt2, "up", "down".
CoinVector coin_preset(std::string_view name);

/// Joint lattice (x) coin state. Sparse: only populated sites are stored.
struct WalkState {
  std::map<int, CoinVector> amplitudes;
  int step_count = 0;

  static WalkState localized(int ell, CoinVector coin);

  CoinVector at(int ell) const;
  double norm2() const;
};

Mat2 hadamard();

struct StepParams {
  Charge q = Charge::half();
  Mat2 coin = hadamard();

  /// Throws std::invalid_argument if the coin is not unitary.
  void validate() const;
};

/// Conditional shift: up moves by +2q, down by -2q. Exact relabeling.
WalkState shift(const WalkState& state, Charge q);

/// One walk step (I (x) coin) * S_q. Shift acts first.
WalkState step(const WalkState& state, const StepParams& params);

/// Exact inverse of step(): coin^dagger, then S_{-q}.
WalkState step_inverse(const WalkState& state, const StepParams& params);

/// Returns [initial, step^1(initial), ..., step^n(initial)].
std::vector<WalkState> run(const WalkState& initial, const StepParams& params, int n_steps);

using Distribution = std::map<int, double>;

Distribution distribution(const WalkState& state);

struct SpreadStats {
  double mean = 0.0;
  double variance = 0.0;
};

SpreadStats spread_stats(const Distribution& dist);

// Structural invariants of a walk started on a single site `origin`.
bool support_within_light_cone(const WalkState& state, Charge q, int origin);
bool parity_holds(const WalkState& state, Charge q, int origin);

}  // namespace qwalk

#pragma once

#include <cstdint>
#include <vector>

#include "qwalk/ring.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Cross-layer agreement for one random initial coin after `steps` round trips.
struct EquivalenceTrial {
  int index = 0;
  CoinVector coin;
  double walk_vs_jones = 0.0;
  double walk_vs_fock = 0.0;
  double jones_vs_fock = 0.0;
  double coherent_vs_jones = 0.0;  // after dividing the coherent amplitudes by alpha

  double max_residual() const;
};

struct SweepConfig {
  int trials = 20;
  int steps = 50;
  std::uint64_t seed = 0;
  StepParams params;
  Complex alpha{3.0, 0.0};
};

/// Uniform random unit coin; depends only on (seed, index), never on thread scheduling.
CoinVector random_coin(std::uint64_t seed, int index);

EquivalenceTrial equivalence_trial(const SweepConfig& config, int index);

/// Trials evaluated concurrently with OpenMP; results in index order.
std::vector<EquivalenceTrial> equivalence_sweep(const SweepConfig& config);
/// Serial reference; must match equivalence_sweep bit for bit.
std::vector<EquivalenceTrial> equivalence_sweep_serial(const SweepConfig& config);

/// Independent ring runs, one per mu, evaluated concurrently; results in input order.
std::vector<RingResult> ring_sweep(const JonesField& initial, const RingConfig& base, const std::vector<double>& mus);
std::vector<RingResult> ring_sweep_serial(const JonesField& initial, const RingConfig& base, const std::vector<double>& mus);

int max_threads();

}  // namespace qwalk

#include "qwalk/sweep.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "qwalk/coherent.hpp"
#include "qwalk/fock.hpp"
#include "qwalk/jones.hpp"

namespace qwalk {

double EquivalenceTrial::max_residual() const {
  return std::max({walk_vs_jones, walk_vs_fock, jones_vs_fock, coherent_vs_jones});
}

CoinVector random_coin(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  double v[4];
  double n = 0.0;
  do {
    n = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      n += x * x;
    }
  } while (n < 1e-12);
  n = std::sqrt(n);
  return {Complex(v[0] / n, v[1] / n), Complex(v[2] / n, v[3] / n)};
}

EquivalenceTrial equivalence_trial(const SweepConfig& config, int index) {
  EquivalenceTrial t;
  t.index = index;
  t.coin = random_coin(config.seed, index);

  const ModeOperator jones_step = walk_step_operator(config.params);
  const CreationMap creation_step = CreationMap::walk_step(config.params);

  WalkState walker = WalkState::localized(0, t.coin);
  JonesField field = JonesField::single_mode(0, t.coin.up, t.coin.down);
  CoherentField beam = coherent_input(config.alpha, 0, t.coin);
  FockState photon;
  photon.terms[{Mode{0, Polarization::R}}] = t.coin.up;
  photon.terms[{Mode{0, Polarization::L}}] = t.coin.down;

  for (int k = 0; k < config.steps; ++k) {
    walker = step(walker, config.params);
    field = apply(jones_step, field);
    beam = evolve_coherent(beam, creation_step);
    photon = apply_mode_map(photon, creation_step);
  }

  int lo = 0;
  int hi = 0;
  auto widen = [&](int ell) {
    lo = std::min(lo, ell);
    hi = std::max(hi, ell);
  };
  for (const auto& [ell, c] : walker.amplitudes) widen(ell);
  for (const auto& [ell, a] : field.amplitudes) widen(ell);
  for (const auto& [m, a] : beam.alphas) widen(m.ell);
  for (const auto& [config_modes, a] : photon.terms) widen(config_modes.front().ell);

  auto coherent_at = [&](Mode m) {
    auto it = beam.alphas.find(m);
    return it == beam.alphas.end() ? Complex{} : it->second / config.alpha;
  };
  for (int ell = lo; ell <= hi; ++ell) {
    const CoinVector w = walker.at(ell);
    for (int p = 0; p < 2; ++p) {
      const Mode m{ell, polarization_at(p)};
      const Complex a_walk = p == 0 ? w.up : w.down;
      const Complex a_jones = field.at(m);
      const Complex a_fock = photon.amplitude({m});
      t.walk_vs_jones = std::max(t.walk_vs_jones, std::abs(a_walk - a_jones));
      t.walk_vs_fock = std::max(t.walk_vs_fock, std::abs(a_walk - a_fock));
      t.jones_vs_fock = std::max(t.jones_vs_fock, std::abs(a_jones - a_fock));
      t.coherent_vs_jones = std::max(t.coherent_vs_jones, std::abs(coherent_at(m) - a_jones));
    }
  }
  return t;
}

std::vector<EquivalenceTrial> equivalence_sweep(const SweepConfig& config) {
  config.params.validate();
  std::vector<EquivalenceTrial> out(static_cast<std::size_t>(std::max(config.trials, 0)));
  const int n = static_cast<int>(out.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) out[i] = equivalence_trial(config, i);
  return out;
}

std::vector<EquivalenceTrial> equivalence_sweep_serial(const SweepConfig& config) {
  std::vector<EquivalenceTrial> out;
  for (int i = 0; i < config.trials; ++i) out.push_back(equivalence_trial(config, i));
  return out;
}

std::vector<RingResult> ring_sweep(const JonesField& initial, const RingConfig& base, const std::vector<double>& mus) {
  // Exceptions cannot leave an OpenMP region, so reject bad inputs up front.
  std::vector<RingConfig> configs;
  for (double mu : mus) {
    configs.push_back(base);
    configs.back().mu = mu;
    configs.back().validate();
  }
  if (std::abs(initial.norm2() - 1.0) > kAccumulatedTolerance) throw std::invalid_argument("initial field is not normalized");

  std::vector<RingResult> out(mus.size());
  const int n = static_cast<int>(mus.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) out[i] = run_ring(initial, configs[i]);
  return out;
}

std::vector<RingResult> ring_sweep_serial(const JonesField& initial, const RingConfig& base,
                                          const std::vector<double>& mus) {
  std::vector<RingResult> out;
  for (double mu : mus) {
    RingConfig cfg = base;
    cfg.mu = mu;
    out.push_back(run_ring(initial, cfg));
  }
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace qwalk

#include "qwalk/fock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

// sqrt(prod_m n_m!) for a sorted configuration.
double occupation_weight(const Configuration& config) {
  double w = 1.0;
  std::size_t i = 0;
  while (i < config.size()) {
    std::size_t j = i;
    while (j < config.size() && config[j] == config[i]) ++j;
    for (std::size_t k = 2; k <= j - i; ++k) w *= static_cast<double>(k);
    i = j;
  }
  return std::sqrt(w);
}

}  // namespace

FockState FockState::vacuum() {
  FockState s;
  s.terms.emplace(Configuration{}, 1.0);
  return s;
}

FockState FockState::single(Mode mode, Complex amplitude) {
  FockState s;
  s.terms.emplace(Configuration{mode}, amplitude);
  return s;
}

FockState FockState::pair(Mode a, Mode b) {
  Configuration c{a, b};
  std::sort(c.begin(), c.end());
  FockState s;
  s.terms.emplace(std::move(c), 1.0);
  return s;
}

int FockState::photon_number() const {
  if (terms.empty()) return 0;
  const auto n = terms.begin()->first.size();
  for (const auto& [config, amp] : terms) {
    if (config.size() != n) throw std::logic_error("Fock state mixes photon-number sectors");
  }
  return static_cast<int>(n);
}

double FockState::norm2() const {
  double n = 0.0;
  for (const auto& [config, amp] : terms) n += std::norm(amp);
  return n;
}

Complex FockState::amplitude(Configuration config) const {
  std::sort(config.begin(), config.end());
  auto it = terms.find(config);
  return it == terms.end() ? Complex{} : it->second;
}

FockState apply_mode_map(const FockState& state, const CreationMap& map) {
  std::map<Mode, CreationImage> images;
  auto image_of = [&](Mode m) -> const CreationImage& {
    auto it = images.find(m);
    if (it == images.end()) it = images.emplace(m, map.image(m)).first;
    return it->second;
  };

  FockState out;
  for (const auto& [config, amp] : state.terms) {
    if (config.size() > static_cast<std::size_t>(kMaxPhotons)) {
      throw std::invalid_argument("Fock engine is limited to " + std::to_string(kMaxPhotons) + " photons");
    }
    if (amp == Complex{}) continue;
    // |config> = prod a+ / sqrt(prod n!) |0>; expand the product of images term by term.
    std::vector<std::pair<Configuration, Complex>> partial{{Configuration{}, amp / occupation_weight(config)}};
    for (const Mode& m : config) {
      std::vector<std::pair<Configuration, Complex>> grown;
      for (const auto& [modes, c] : partial) {
        for (const auto& [target, t] : image_of(m)) {
          Configuration next = modes;
          next.insert(std::upper_bound(next.begin(), next.end(), target), target);
          grown.emplace_back(std::move(next), c * t);
        }
      }
      partial = std::move(grown);
    }
    for (auto& [modes, c] : partial) {
      const double w = occupation_weight(modes);
      out.terms[std::move(modes)] += c * w;
    }
  }
  std::erase_if(out.terms, [](const auto& kv) { return kv.second == Complex{}; });
  return out;
}

FockState apply_mode_map(const FockState& state, const StepParams& params) {
  return apply_mode_map(state, CreationMap::walk_step(params));
}

FockState hom_two_roundtrips(int ell) {
  const StepParams params;  // q = 1/2, Hadamard
  FockState s = FockState::pair({ell, Polarization::R}, {ell + 2, Polarization::L});
  s = apply_mode_map(s, params);
  return apply_mode_map(s, params);
}

double coincidence_amplitude(const FockState& state, int ell_a, int ell_b) {
  double p = 0.0;
  for (const auto& [config, amp] : state.terms) {
    if (config.size() != 2) continue;
    const int x = config[0].ell;
    const int y = config[1].ell;
    if ((x == ell_a && y == ell_b) || (x == ell_b && y == ell_a)) p += std::norm(amp);
  }
  return std::sqrt(p);
}

double distinguishable_coincidence_probability(int ell) {
  const StepParams params;
  const CreationMap two_trips = CreationMap::walk_step(params).then(CreationMap::walk_step(params));
  auto ell_distribution = [&](Mode start) {
    std::map<int, double> p;
    for (const auto& [m, c] : two_trips.image(start)) p[m.ell] += std::norm(c);
    return p;
  };
  auto first = ell_distribution({ell, Polarization::R});
  auto second = ell_distribution({ell + 2, Polarization::L});
  return first[ell] * second[ell + 2] + first[ell + 2] * second[ell];
}

double single_photon_equivalence(int n, CoinVector coin, const StepParams& params) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  FockState photon;
  if (coin.up != Complex{}) photon.terms[{Mode{0, Polarization::R}}] = coin.up;
  if (coin.down != Complex{}) photon.terms[{Mode{0, Polarization::L}}] = coin.down;
  WalkState walker = WalkState::localized(0, coin);
  for (int k = 0; k < n; ++k) {
    photon = apply_mode_map(photon, params);
    walker = step(walker, params);
  }

  double residual = 0.0;
  for (const auto& [config, amp] : photon.terms) {
    const CoinVector c = walker.at(config[0].ell);
    residual = std::max(residual, std::abs(amp - (config[0].pol == Polarization::R ? c.up : c.down)));
  }
  for (const auto& [ell, c] : walker.amplitudes) {
    residual = std::max(residual, std::abs(c.up - photon.amplitude({Mode{ell, Polarization::R}})));
    residual = std::max(residual, std::abs(c.down - photon.amplitude({Mode{ell, Polarization::L}})));
  }
  return residual;
}

}  // namespace qwalk

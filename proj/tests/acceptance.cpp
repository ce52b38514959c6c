// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dense_walk.hpp"
#include "qwalk/coherent.hpp"
#include "qwalk/fock.hpp"
#include "qwalk/jones.hpp"
#include "qwalk/ring.hpp"
#include "qwalk/sweep.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

const Complex I(0.0, 1.0);

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Check golden_state() {
  Check c;
  WalkState s;
  const double ms = time_ms([&] { s = step(WalkState::localized(0, coin_preset("symmetric")), StepParams{}); });
  const double err = std::max({std::abs(s.at(1).up - 0.5), std::abs(s.at(1).down - 0.5), std::abs(s.at(-1).up - 0.5 * I),
                               std::abs(s.at(-1).down + 0.5 * I)});
  c.require(s.amplitudes.size() == 2, "unexpected support");
  c.require(err < 1e-12, "amplitude error " + fmt(err));
  c.require(ms < 1.0, "runtime " + fmt(ms) + " ms");
  c.detail = c.ok ? "max error " + fmt(err) + ", " + fmt(ms) + " ms" : c.detail;
  return c;
}

Check operator_identity() {
  Check c;
  double half = 0.0, one = 0.0;
  const double ms = time_ms([&] {
    half = factorization_check(Charge::half(), 41);
    one = factorization_check(Charge::from_q(1.0), 41);
  });
  c.require(half < 1e-12, "q=1/2 residual " + fmt(half));
  c.require(one < 1e-12, "q=1 residual " + fmt(one));
  c.require(ms < 10.0, "runtime " + fmt(ms) + " ms");
  c.detail = c.ok ? "residuals " + fmt(half) + ", " + fmt(one) + "; " + fmt(ms) + " ms" : c.detail;
  return c;
}

Check first_iteration_field() {
  Check c;
  const ModeOperator round_trip =
      compile_to_modes(JonesElement::q_plate(0.5)).then(compile_to_modes(JonesElement::quarter_wave_plate(kPi / 4)));
  const JonesField out = apply(round_trip, JonesField::single_mode(0, kInvSqrt2, I * kInvSqrt2));
  const double err = std::max({std::abs(out.at({1, Polarization::R}) - 0.5), std::abs(out.at({1, Polarization::L}) - 0.5),
                               std::abs(out.at({-1, Polarization::R}) - 0.5 * I),
                               std::abs(out.at({-1, Polarization::L}) + 0.5 * I)});
  // Same amplitudes as the abstract walk under up <-> R, down <-> L.
  const WalkState w = step(WalkState::localized(0, coin_preset("symmetric")), StepParams{});
  double cross = 0.0;
  for (int ell : {-1, 1}) {
    cross = std::max(cross, std::abs(out.at({ell, Polarization::R}) - w.at(ell).up));
    cross = std::max(cross, std::abs(out.at({ell, Polarization::L}) - w.at(ell).down));
  }
  c.require(out.amplitudes.size() == 2, "unexpected support");
  c.require(err < 1e-12, "field error " + fmt(err));
  c.require(cross < 1e-12, "walk mismatch " + fmt(cross));
  c.detail = c.ok ? "max error " + fmt(err) : c.detail;
  return c;
}

Check three_layer_equivalence() {
  Check c;
  SweepConfig cfg;
  cfg.trials = 20;
  cfg.steps = 50;
  cfg.seed = 2013;
  std::vector<EquivalenceTrial> trials;
  const double ms = time_ms([&] { trials = equivalence_sweep(cfg); });
  double pairwise = 0.0, coherent = 0.0;
  for (const auto& t : trials) {
    pairwise = std::max({pairwise, t.walk_vs_jones, t.walk_vs_fock, t.jones_vs_fock});
    coherent = std::max(coherent, t.coherent_vs_jones);
  }
  c.require(trials.size() == 20, "trial count");
  c.require(pairwise < 1e-10, "pairwise residual " + fmt(pairwise));
  c.require(coherent < 1e-12, "coherent residual " + fmt(coherent));
  c.require(ms < 1000.0, "runtime " + fmt(ms) + " ms");
  c.detail = c.ok ? "pairwise " + fmt(pairwise) + ", coherent " + fmt(coherent) + "; " + fmt(ms) + " ms" : c.detail;
  return c;
}

Check ballistic_spread() {
  Check c;
  double lo = 1e300, hi = 0.0, var100 = 0.0, oracle_gap = 0.0;
  const double ms = time_ms([&] {
    const auto states = run(WalkState::localized(0, coin_preset("symmetric")), StepParams{}, 100);
    const auto reference = oracle::symmetric_variances(100);
    for (int n = 20; n <= 100; ++n) {
      const double v = spread_stats(distribution(states[n])).variance;
      const double ref = reference[n];
      oracle_gap = std::max(oracle_gap, std::abs(v - ref) / ref);
      lo = std::min(lo, ref / (double(n) * n));
      hi = std::max(hi, ref / (double(n) * n));
      if (n == 100) var100 = v;
    }
  });
  c.require(oracle_gap < 1e-10, "engine vs oracle relative gap " + fmt(oracle_gap));
  c.require(hi / lo - 1.0 <= 0.2, "variance/n^2 band " + fmt(hi / lo - 1.0));
  c.require(var100 > 10.0 * 100.0, "variance(100) = " + fmt(var100));
  c.require(ms < 5000.0, "runtime " + fmt(ms) + " ms");
  c.detail = c.ok ? "variance/n^2 in [" + fmt(lo) + ", " + fmt(hi) + "], variance(100) = " + fmt(var100) + "; " +
                        fmt(ms) + " ms"
                  : c.detail;
  return c;
}

Check ring_bookkeeping() {
  Check c;
  const int n = 30;
  const auto ideal = run(WalkState::localized(0, coin_preset("symmetric")), StepParams{}, n);
  double power_err = 0.0, audit = 0.0, spectrum_err = 0.0;
  for (double mu : {0.1, 0.5, 0.9}) {
    RingConfig cfg;
    cfg.mu = mu;
    cfg.n_iterations = n;
    const RingResult r = run_ring(JonesField::single_mode(0, kInvSqrt2, I * kInvSqrt2), cfg);
    audit = std::max(audit, energy_audit(r));
    for (const auto& rec : r.records) {
      power_err = std::max(power_err, std::abs(rec.detected_power - mu * mu * std::pow(1.0 - mu, rec.iteration - 1)));
      for (const auto& [ell, p] : distribution(ideal[rec.iteration])) {
        auto it = rec.spectrum.find(ell);
        const double got = it == rec.spectrum.end() ? 0.0 : it->second / rec.detected_power;
        spectrum_err = std::max(spectrum_err, std::abs(got - p));
      }
    }
  }
  c.require(power_err < 1e-12, "detected power error " + fmt(power_err));
  c.require(audit < 1e-10, "energy audit " + fmt(audit));
  c.require(spectrum_err < 1e-10, "spectrum error " + fmt(spectrum_err));
  c.detail = c.ok ? "power " + fmt(power_err) + ", audit " + fmt(audit) + ", spectrum " + fmt(spectrum_err) : c.detail;
  return c;
}

Check hom_bunching() {
  Check c;
  const FockState out = hom_two_roundtrips(0);
  const double coincidence = coincidence_amplitude(out, 0, 2);

  const int w = 6;
  const oracle::DenseWalk walk(w);
  const Eigen::MatrixXcd u2 = walk.matrix() * walk.matrix();
  std::vector<int> window;
  for (int ell = 0; ell <= 2; ++ell) {
    for (int p = 0; p < 2; ++p) window.push_back(walk.index(ell, p));
  }
  const int in_a = walk.index(0, 0);
  const int in_b = walk.index(2, 1);
  const auto expected = oracle::two_photon_output(u2, in_a, in_b, window);
  double state_err = 0.0, captured = 0.0;
  auto mode_of = [&](int index) { return Mode{index / 2 - w, polarization_at(index % 2)}; };
  for (const auto& [modes, amp] : expected) {
    state_err = std::max(state_err, std::abs(out.amplitude({mode_of(modes.first), mode_of(modes.second)}) - amp));
    captured += std::norm(amp);
  }
  auto ell_prob = [&](int in, int ell) {
    return std::norm(u2(walk.index(ell, 0), in)) + std::norm(u2(walk.index(ell, 1), in));
  };
  const double labeled = ell_prob(in_a, 0) * ell_prob(in_b, 2) + ell_prob(in_a, 2) * ell_prob(in_b, 0);
  const double control = distinguishable_coincidence_probability(0);

  c.require(coincidence < 1e-12, "coincidence amplitude " + fmt(coincidence));
  c.require(std::abs(captured - 1.0) < 1e-12, "oracle window misses probability");
  c.require(state_err < 1e-12, "state error " + fmt(state_err));
  c.require(std::abs(control - labeled) < 1e-12, "control disagrees with labeled-pair oracle");
  c.require(control > 0.1, "control coincidence " + fmt(control));
  c.detail = c.ok ? "coincidence " + fmt(coincidence) + ", distinguishable control " + fmt(control) + ", state error " +
                        fmt(state_err)
                  : c.detail;
  return c;
}

Check unitarity_soak() {
  Check c;
  WalkState s = WalkState::localized(0, coin_preset("symmetric"));
  bool structural = true;
  for (int k = 0; k < 1000; ++k) {
    s = step(s, StepParams{});
    structural = structural && support_within_light_cone(s, Charge::half(), 0) && parity_holds(s, Charge::half(), 0);
  }
  const double drift = std::abs(s.norm2() - 1.0);
  c.require(drift < 1e-8, "norm drift " + fmt(drift));
  c.require(structural, "support or parity violated");
  c.detail = c.ok ? "norm drift " + fmt(drift) : c.detail;
  return c;
}

Check detection_windowing() {
  Check c;
  const int n = 120;
  const oracle::DenseWalk walk(n + 2);
  const auto p = walk.distribution(walk.evolve(walk.localized(0, kInvSqrt2, Complex(0, kInvSqrt2)), n));
  double outside50 = 0.0, outside100 = 0.0;
  for (const auto& [ell, x] : p) {
    if (std::abs(ell) > 50) outside50 += x;
    if (std::abs(ell) > 100) outside100 += x;
  }

  JonesField f = JonesField::single_mode(0, kInvSqrt2, Complex(0, kInvSqrt2));
  const ModeOperator op = walk_step_operator(Charge::half());
  for (int k = 0; k < n; ++k) f = apply(op, f);
  DetectorConfig det;
  det.window_halfwidth = 50;
  const Detection plain = detect(f, 1.0, det);
  det.odd_even_split = true;
  const Detection split = detect(f, 1.0, det);

  c.require(std::abs(plain.clipped_power - outside50) < 1e-10, "clipped " + fmt(plain.clipped_power) + " vs " + fmt(outside50));
  c.require(std::abs(split.clipped_power - outside100) < 1e-10, "split clipped " + fmt(split.clipped_power));
  c.require(split.clipped_power < plain.clipped_power, "split did not reduce clipping");
  c.detail = c.ok ? "clipped " + fmt(plain.clipped_power) + " -> " + fmt(split.clipped_power) + " with odd/even split" : c.detail;
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"AC1 first-step golden state", golden_state},
      {"AC2 q-plate + QWP operator identity", operator_identity},
      {"AC3 first-iteration Jones field", first_iteration_field},
      {"AC4 three-layer equivalence", three_layer_equivalence},
      {"AC5 ballistic spread", ballistic_spread},
      {"AC6 ring bookkeeping", ring_bookkeeping},
      {"AC7 two-photon bunching", hom_bunching},
      {"AC8 unitarity soak", unitarity_soak},
      {"AC9 detection windowing", detection_windowing},
  };
  int failures = 0;
  for (const auto& [name, run_check] : criteria) {
    const Check c = run_check();
    std::printf("[%s] %s: %s\n", c.ok ? "PASS" : "FAIL", name.c_str(), c.detail.c_str());
    if (!c.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include "qwalk/ring.hpp"

#include <stdexcept>
#include <string>

namespace qwalk {

void DetectorConfig::validate() const {
  if (window_halfwidth <= 0) throw std::invalid_argument("window_halfwidth must be positive");
}

bool DetectorConfig::captures(int ell) const {
  const long reach = odd_even_split ? 2L * window_halfwidth : window_halfwidth;
  return std::abs(static_cast<long>(ell) - window_center) <= reach;
}

int DetectorConfig::bandwidth() const { return odd_even_split ? 4 * window_halfwidth + 1 : 2 * window_halfwidth + 1; }

void RingConfig::validate() const {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in (0, 1], got " + std::to_string(mu));
  if (n_iterations < 1) throw std::invalid_argument("n_iterations must be positive");
  step.validate();
  detector.validate();
}

Detection detect(const JonesField& field_out, double power, const DetectorConfig& detector) {
  if (power < 0.0) throw std::invalid_argument("detected power must be non-negative");
  Detection d;
  for (const auto& [ell, a] : field_out.amplitudes) {
    const double p = power * (std::norm(a.r) + std::norm(a.l));
    if (detector.captures(ell)) {
      d.spectrum.emplace_hint(d.spectrum.end(), ell, p);
    } else {
      d.clipped_power += p;
    }
  }
  return d;
}

namespace {

JonesField scaled(JonesField f, double factor) {
  for (auto& [ell, a] : f.amplitudes) {
    a.r *= factor;
    a.l *= factor;
  }
  return f;
}

}  // namespace

RingResult run_ring(const JonesField& initial, const RingConfig& config) {
  config.validate();
  const double input_power = initial.norm2();
  if (std::abs(input_power - 1.0) > kAccumulatedTolerance) throw std::invalid_argument("initial field is not normalized");

  const ModeOperator round_trip = walk_step_operator(config.step);
  const double out_amp = std::sqrt(config.mu);
  const double stay_amp = std::sqrt(1.0 - config.mu);

  RingResult result;
  JonesField circulating = scaled(initial, out_amp);
  result.entry_rejected = input_power - circulating.norm2();

  for (int n = 1; n <= config.n_iterations; ++n) {
    circulating = apply(round_trip, circulating);
    const JonesField out = scaled(circulating, out_amp);
    circulating = scaled(std::move(circulating), stay_amp);

    IterationRecord rec;
    rec.iteration = n;
    rec.detected_power = out.norm2();
    const JonesField normalized = rec.detected_power > 0.0 ? scaled(out, 1.0 / std::sqrt(rec.detected_power)) : out;
    Detection det = detect(normalized, rec.detected_power, config.detector);
    rec.spectrum = std::move(det.spectrum);
    rec.clipped_power = det.clipped_power;
    result.records.push_back(std::move(rec));
  }
  result.final_circulating = circulating.norm2();
  return result;
}

double energy_audit(const std::vector<IterationRecord>& records, double final_circulating, double entry_rejected) {
  double detected = 0.0;
  for (const auto& r : records) detected += r.detected_power;
  return std::abs(1.0 - entry_rejected - detected - final_circulating);
}

double energy_audit(const RingResult& result) {
  return energy_audit(result.records, result.final_circulating, result.entry_rejected);
}

}  // namespace qwalk

#pragma once

#include <map>
#include <vector>

#include "qwalk/jones.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Windowed OAM sorter. Without the odd/even split it resolves ell in
/// [center - halfwidth, center + halfwidth]. With the split, odd and even orders
/// go to separate sorters of the same spot count, so ell in
/// [center - 2 halfwidth, center + 2 halfwidth] is resolved.
struct DetectorConfig {
  int window_center = 0;
  int window_halfwidth = 50;
  bool odd_even_split = false;

  void validate() const;
  bool captures(int ell) const;
  /// Number of resolvable OAM values.
  int bandwidth() const;
};

struct RingConfig {
  double mu = 0.5;  // intensity transmission of the out-coupling splitter
  int n_iterations = 1;
  StepParams step;
  DetectorConfig detector;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double detected_power = 0.0;
  std::map<int, double> spectrum;
  double clipped_power = 0.0;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RingResult {
  std::vector<IterationRecord> records;
  double final_circulating = 0.0;
  double entry_rejected = 0.0;
};

struct Detection {
  std::map<int, double> spectrum;
  double clipped_power = 0.0;
};

/// Polarization-summed spectrum of a normalized field, scaled by `power`.
Detection detect(const JonesField& field_out, double power, const DetectorConfig& detector);

/// Input power is normalized to 1. Amplitude sqrt(mu) enters the ring; each round trip
/// applies one walk step, then sqrt(mu) goes to the detector and sqrt(1 - mu) keeps circulating.
RingResult run_ring(const JonesField& initial, const RingConfig& config);

double energy_audit(const std::vector<IterationRecord>& records, double final_circulating, double entry_rejected);
double energy_audit(const RingResult& result);

}  // namespace qwalk

#include "qwalk/walk.hpp"

#include <stdexcept>
#include <string>

namespace qwalk {

CoinVector operator*(const Mat2& u, const CoinVector& c) {
  return {u(0, 0) * c.up + u(0, 1) * c.down, u(1, 0) * c.up + u(1, 1) * c.down};
}

CoinVector coin_preset(std::string_view name) {
  if (name == "symmetric") return {kInvSqrt2, Complex(0.0, kInvSqrt2)};
  if (name == "up") return {1.0, 0.0};
  if (name == "down") return {0.0, 1.0};
  throw std::invalid_argument("unknown coin preset '" + std::string(name) +
                              "' (expected symmetric, up or down)");
}

WalkState WalkState::localized(int ell, CoinVector coin) {
  WalkState s;
  s.amplitudes.emplace(ell, coin);
  return s;
}

CoinVector WalkState::at(int ell) const {
  auto it = amplitudes.find(ell);
  return it == amplitudes.end() ? CoinVector{} : it->second;
}

double WalkState::norm2() const {
  double n = 0.0;
  for (const auto& [ell, c] : amplitudes) n += c.norm2();
  return n;
}

Mat2 hadamard() { return Mat2::from_rows(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2); }

void StepParams::validate() const {
  if (!coin.is_finite() || !coin.is_unitary()) throw std::invalid_argument("coin operator is not unitary");
}

WalkState shift(const WalkState& state, Charge q) {
  const int d = q.shift();
  WalkState out;
  out.step_count = state.step_count;
  for (const auto& [ell, c] : state.amplitudes) {
    if (c.up != Complex{}) out.amplitudes[ell + d].up = c.up;
    if (c.down != Complex{}) out.amplitudes[ell - d].down = c.down;
  }
  return out;
}

WalkState step(const WalkState& state, const StepParams& params) {
  WalkState out = shift(state, params.q);
  for (auto& [ell, c] : out.amplitudes) c = params.coin * c;
  out.step_count = state.step_count + 1;
  return out;
}

WalkState step_inverse(const WalkState& state, const StepParams& params) {
  const Mat2 undo = params.coin.adjoint();
  WalkState tmp = state;
  for (auto& [ell, c] : tmp.amplitudes) c = undo * c;
  WalkState out = shift(tmp, params.q.reversed());
  out.step_count = state.step_count - 1;
  return out;
}

std::vector<WalkState> run(const WalkState& initial, const StepParams& params, int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  std::vector<WalkState> states;
  states.reserve(static_cast<std::size_t>(n_steps) + 1);
  states.push_back(initial);
  for (int k = 0; k < n_steps; ++k) states.push_back(step(states.back(), params));
  return states;
}

Distribution distribution(const WalkState& state) {
  Distribution d;
  for (const auto& [ell, c] : state.amplitudes) d.emplace_hint(d.end(), ell, c.norm2());
  return d;
}

SpreadStats spread_stats(const Distribution& dist) {
  SpreadStats s;
  for (const auto& [ell, p] : dist) s.mean += p * ell;
  for (const auto& [ell, p] : dist) s.variance += p * (ell - s.mean) * (ell - s.mean);
  return s;
}

bool support_within_light_cone(const WalkState& state, Charge q, int origin) {
  const long reach = static_cast<long>(state.step_count) * std::abs(q.shift());
  for (const auto& [ell, c] : state.amplitudes) {
    if (c.is_zero()) continue;
    if (std::abs(static_cast<long>(ell) - origin) > reach) return false;
  }
  return true;
}

bool parity_holds(const WalkState& state, Charge q, int origin) {
  const long delta = std::abs(q.shift());
  const long period = 2 * delta;
  const long expected = ((origin + static_cast<long>(state.step_count) * delta) % period + period) % period;
  for (const auto& [ell, c] : state.amplitudes) {
    if (c.is_zero()) continue;
    if (((ell % period) + period) % period != expected) return false;
  }
  return true;
}

}  // namespace qwalk

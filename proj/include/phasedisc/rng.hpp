#pragma once

#include <array>
#include <cstdint>

namespace phasedisc {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is addressed by a 64-bit key (the master seed) and a 64-bit
/// stream id, so independent trajectories can draw from
/// CounterRng(seed, trajectory_index) in any order, on any thread, and
/// always see the same sequence.
class CounterRng {
 public:
  CounterRng(std::uint64_t key, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform double in (0, 1].
  double next_unit();

  /// Standard normal deviate (Box-Muller, pairs cached).
  double next_gaussian();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::uint64_t stream_;
  std::array<std::uint64_t, 2> buf_{};
  int buf_pos_ = 2;  // forces refill on first draw
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Wiener increment over a step of length dt: mean 0, variance dt.
double sample_wiener_increment(CounterRng& rng, double dt);

}  // namespace phasedisc

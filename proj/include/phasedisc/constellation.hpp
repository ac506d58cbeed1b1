#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace phasedisc {

/// Dispersive phase pull of one qubit on the probe: atan(g^2 / (kappa * delta)).
/// Throws std::domain_error if kappa <= 0 or delta == 0.
double dispersive_pull(double g, double kappa, double delta);

/// Cavity parameters for one qubit. Kept for callers that configure pulls
/// from physical rates instead of angles.
struct QubitPull {
  double g = 0.0;      // coupling strength (rad/s)
  double kappa = 0.0;  // cavity decay rate (rad/s)
  double delta = 0.0;  // detuning (rad/s)

  double pull() const { return dispersive_pull(g, kappa, delta); }
};

/// The hypothesis set: one candidate phase per joint qubit sign pattern,
/// plus the probe amplitude (acts as the SNR).
///
/// phases[i] is the signed sum of the per-qubit pulls under labels[i],
/// wrapped to (-pi, pi]. Labels are ordered lexicographically with +1
/// before -1, so index bits read top qubit first.
struct Constellation {
  std::vector<double> phases;
  std::vector<std::vector<int>> labels;  // entries are +1 / -1
  std::vector<double> pulls;             // generating per-qubit pulls
  double amplitude = 0.0;

  std::size_t size() const { return phases.size(); }
  std::size_t n_qubits() const { return labels.empty() ? 0 : labels[0].size(); }

  Constellation with_amplitude(double a) const {
    Constellation c = *this;
    c.amplitude = a;
    return c;
  }

  /// Sign pattern of a hypothesis as a compact string, e.g. "+-".
  std::string label_string(std::size_t index) const;

  /// Index of the smallest-magnitude strictly positive phase; falls back
  /// to the smallest-magnitude phase overall if none is positive.
  std::size_t smallest_positive_phase_index() const;
};

/// All 2^n signed sums of the given pulls, canonicalized to (-pi, pi].
/// Requires 1 <= n <= 16 pulls and amplitude >= 0.
Constellation build_constellation(const std::vector<double>& pulls,
                                  double amplitude);

/// Outcome of the pairwise-distinctness check. Distinctness of the 2^n
/// signed-sum phases mod 2*pi is what an unambiguous MAP readout needs;
/// collisions list the offending hypothesis index pairs.
struct UniquenessReport {
  bool ok = true;
  double tolerance = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> collisions;
};

UniquenessReport validate_unique(const Constellation& c, double tol = 1e-9);

}  // namespace phasedisc

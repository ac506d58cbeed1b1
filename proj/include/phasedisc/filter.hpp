#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "phasedisc/constellation.hpp"

namespace phasedisc {

/// Two complex functionals of the record that determine every hypothesis
/// likelihood. Accumulated with the same left-endpoint rule as the filter:
///   r += exp(i*Phi) * exp(-t/2) * increment
///   s -= exp(i*2*Phi) * exp(-t) * dt
struct SufficientStats {
  std::complex<double> r{0.0, 0.0};
  std::complex<double> s{0.0, 0.0};
  double t = 0.0;
};

void update_stats(SufficientStats& stats, double lo_phase, double increment,
                  double t, double dt);

/// Log-likelihood exponent of hypothesis j from the sufficient statistics:
///   Re(s * conj(alpha_j)^2) + 2 * Re(r * conj(alpha_j)),  alpha_j = alpha * exp(i*phi_j).
/// On the shared grid this equals the per-step accumulated exponent plus
/// amplitude^2 * (grid integral of exp(-s) ds); the two routes cross-check
/// each other. Throws std::out_of_range for a bad index.
double loglik_from_stats(const SufficientStats& stats, const Constellation& c,
                         std::size_t j);

struct MapDecision {
  std::size_t index = 0;
  bool tie = false;
};

/// Per-hypothesis log-likelihood exponents and priors, advanced one
/// photocurrent increment at a time. All likelihood arithmetic stays in
/// log domain; posteriors come out through log-sum-exp. The common
/// prefactor of the likelihoods is never formed.
class FilterState {
 public:
  /// Uniform priors when none are given. Priors must be nonnegative and
  /// sum to 1 within 1e-9.
  explicit FilterState(Constellation constellation,
                       std::vector<double> priors = {});

  /// Restore from a known set of exponents (checkpointing, tests).
  FilterState(Constellation constellation, std::vector<double> priors,
              std::vector<double> log_liks, double t);

  /// One step of the exponent recursion for every hypothesis j:
  ///   log_liks[j] += -2*alpha*(alpha*exp(-t)*cos^2(Phi - phi_j)*dt
  ///                            - exp(-t/2)*cos(Phi - phi_j)*increment)
  /// Also advances the embedded sufficient statistics. Throws
  /// std::invalid_argument when t disagrees with the filter clock by more
  /// than dt/2.
  void update(double lo_phase, double increment, double t, double dt);

  std::vector<double> posterior() const;

  /// Posterior of one hypothesis without materializing the full vector.
  double posterior_of(std::size_t j) const;

  /// log_liks[j] + log(prior_j): the quantity posteriors and decisions
  /// rank by.
  double score(std::size_t j) const {
    return log_liks_[j] + log_priors_[j];
  }

  /// Argmax of the posterior; exact ties resolve to the lowest index and
  /// are flagged.
  MapDecision map_decision() const;

  /// log_liks[0] - log_liks[1]; only defined for two hypotheses.
  double log_likelihood_ratio() const;

  const std::vector<double>& log_liks() const { return log_liks_; }
  const std::vector<double>& priors() const { return priors_; }
  const Constellation& constellation() const { return constellation_; }
  const SufficientStats& stats() const { return stats_; }
  double t() const { return t_; }

  /// Grid integral of exp(-s) ds accumulated so far (left endpoints);
  /// amplitude^2 times this is the offset between the two likelihood routes.
  double decay_integral() const { return decay_integral_; }

 private:
  Constellation constellation_;
  std::vector<double> priors_;
  std::vector<double> log_priors_;
  std::vector<double> log_liks_;
  std::vector<double> cos_phase_;
  std::vector<double> sin_phase_;
  SufficientStats stats_;
  double t_ = 0.0;
  double decay_integral_ = 0.0;
};

}  // namespace phasedisc

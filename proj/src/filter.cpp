#include "phasedisc/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace phasedisc {

void update_stats(SufficientStats& stats, double lo_phase, double increment,
                  double t, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("update_stats: dt must be > 0");
  }
  const std::complex<double> lo_dir{std::cos(lo_phase), std::sin(lo_phase)};
  stats.r += lo_dir * std::exp(-0.5 * t) * increment;
  stats.s -= lo_dir * lo_dir * std::exp(-t) * dt;
  stats.t = t + dt;
}

double loglik_from_stats(const SufficientStats& stats, const Constellation& c,
                         std::size_t j) {
  if (j >= c.size()) {
    throw std::out_of_range("loglik_from_stats: hypothesis index out of range");
  }
  const std::complex<double> alpha_conj =
      c.amplitude * std::complex<double>{std::cos(c.phases[j]),
                                         -std::sin(c.phases[j])};
  return std::real(stats.s * alpha_conj * alpha_conj) +
         2.0 * std::real(stats.r * alpha_conj);
}

namespace {

std::vector<double> checked_priors(std::vector<double> priors,
                                   std::size_t n) {
  if (priors.empty()) {
    priors.assign(n, 1.0 / static_cast<double>(n));
    return priors;
  }
  if (priors.size() != n) {
    throw std::invalid_argument("FilterState: priors size mismatch");
  }
  double sum = 0.0;
  for (double p : priors) {
    if (p < 0.0) throw std::invalid_argument("FilterState: negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("FilterState: priors must sum to 1");
  }
  return priors;
}

}  // namespace

FilterState::FilterState(Constellation constellation,
                         std::vector<double> priors)
    : FilterState(std::move(constellation), std::move(priors), {}, 0.0) {}

FilterState::FilterState(Constellation constellation,
                         std::vector<double> priors,
                         std::vector<double> log_liks, double t)
    : constellation_(std::move(constellation)),
      priors_(checked_priors(std::move(priors), constellation_.size())),
      log_liks_(std::move(log_liks)),
      t_(t) {
  const std::size_t n = constellation_.size();
  if (n == 0) throw std::invalid_argument("FilterState: empty constellation");
  if (log_liks_.empty()) log_liks_.assign(n, 0.0);
  if (log_liks_.size() != n) {
    throw std::invalid_argument("FilterState: log_liks size mismatch");
  }
  log_priors_.resize(n);
  cos_phase_.resize(n);
  sin_phase_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    log_priors_[j] = priors_[j] > 0.0
                         ? std::log(priors_[j])
                         : -std::numeric_limits<double>::infinity();
    cos_phase_[j] = std::cos(constellation_.phases[j]);
    sin_phase_[j] = std::sin(constellation_.phases[j]);
  }
  stats_.t = t;
}

void FilterState::update(double lo_phase, double increment, double t,
                         double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("FilterState::update: dt must be > 0");
  }
  if (std::abs(t_ - t) > 0.5 * dt) {
    throw std::invalid_argument(
        "FilterState::update: step time disagrees with filter clock");
  }
  const double alpha = constellation_.amplitude;
  const double decay = std::exp(-t);
  const double half_decay = std::exp(-0.5 * t);
  const double cos_lo = std::cos(lo_phase);
  const double sin_lo = std::sin(lo_phase);
  for (std::size_t j = 0; j < log_liks_.size(); ++j) {
    const double c = cos_lo * cos_phase_[j] + sin_lo * sin_phase_[j];
    log_liks_[j] +=
        -2.0 * alpha * (alpha * decay * c * c * dt - half_decay * c * increment);
  }
  const std::complex<double> lo_dir{cos_lo, sin_lo};
  stats_.r += lo_dir * half_decay * increment;
  stats_.s -= lo_dir * lo_dir * decay * dt;
  stats_.t = t + dt;
  decay_integral_ += decay * dt;
  t_ = t + dt;
}

std::vector<double> FilterState::posterior() const {
  std::vector<double> p(log_liks_.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = score(j);
  const double m = *std::max_element(p.begin(), p.end());
  double norm = 0.0;
  for (double& x : p) {
    x = std::exp(x - m);
    norm += x;
  }
  for (double& x : p) x /= norm;
  return p;
}

double FilterState::posterior_of(std::size_t j) const {
  const std::size_t n = log_liks_.size();
  if (j >= n) {
    throw std::out_of_range("FilterState::posterior_of: index out of range");
  }
  double m = score(0);
  for (std::size_t k = 1; k < n; ++k) m = std::max(m, score(k));
  double norm = 0.0;
  double mine = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = std::exp(score(k) - m);
    norm += e;
    if (k == j) mine = e;
  }
  return mine / norm;
}

MapDecision FilterState::map_decision() const {
  MapDecision d;
  double best = score(0);
  for (std::size_t j = 1; j < log_liks_.size(); ++j) {
    const double s = score(j);
    if (s > best) {
      d.index = j;
      best = s;
      d.tie = false;
    } else if (s == best) {
      d.tie = true;
    }
  }
  return d;
}

double FilterState::log_likelihood_ratio() const {
  if (log_liks_.size() != 2) {
    throw std::invalid_argument(
        "log_likelihood_ratio: defined only for two hypotheses");
  }
  return log_liks_[0] - log_liks_[1];
}

}  // namespace phasedisc

#include "phasedisc/constellation.hpp"

#include <cmath>
#include <stdexcept>

#include "phasedisc/angles.hpp"

namespace phasedisc {

double dispersive_pull(double g, double kappa, double delta) {
  if (!(kappa > 0.0)) {
    throw std::domain_error("dispersive_pull: kappa must be > 0");
  }
  if (delta == 0.0) {
    throw std::domain_error("dispersive_pull: delta must be nonzero");
  }
  return std::atan(g * g / (kappa * delta));
}

std::string Constellation::label_string(std::size_t index) const {
  std::string s;
  for (int sign : labels.at(index)) s += (sign > 0) ? '+' : '-';
  return s;
}

std::size_t Constellation::smallest_positive_phase_index() const {
  std::size_t best = 0;
  bool found_positive = false;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const bool positive = phases[i] > 0.0;
    if (found_positive && !positive) continue;
    const bool upgrade = positive && !found_positive;
    if (upgrade || std::abs(phases[i]) < std::abs(phases[best])) {
      best = i;
      found_positive = found_positive || positive;
    }
  }
  return best;
}

Constellation build_constellation(const std::vector<double>& pulls,
                                  double amplitude) {
  const std::size_t n = pulls.size();
  if (n < 1 || n > 16) {
    throw std::invalid_argument(
        "build_constellation: need between 1 and 16 pulls");
  }
  if (!(amplitude >= 0.0)) {
    throw std::invalid_argument("build_constellation: amplitude must be >= 0");
  }

  Constellation c;
  c.amplitude = amplitude;
  c.pulls = pulls;
  const std::size_t count = std::size_t{1} << n;
  c.phases.reserve(count);
  c.labels.reserve(count);
  for (std::size_t bits = 0; bits < count; ++bits) {
    // Bit 0 of `bits` is the first qubit; a set bit means sign -1, so the
    // enumeration is lexicographic with + before -.
    std::vector<int> label(n);
    double sum = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      const int sign = (bits >> (n - 1 - q)) & 1 ? -1 : +1;
      label[q] = sign;
      sum += sign * pulls[q];
    }
    c.phases.push_back(wrap_angle(sum));
    c.labels.push_back(std::move(label));
  }
  return c;
}

UniquenessReport validate_unique(const Constellation& c, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("validate_unique: tolerance must be > 0");
  }
  UniquenessReport report;
  report.tolerance = tol;
  for (std::size_t i = 0; i < c.phases.size(); ++i) {
    for (std::size_t j = i + 1; j < c.phases.size(); ++j) {
      if (circular_distance(c.phases[i], c.phases[j]) <= tol) {
        report.collisions.emplace_back(i, j);
      }
    }
  }
  report.ok = report.collisions.empty();
  return report;
}

}  // namespace phasedisc

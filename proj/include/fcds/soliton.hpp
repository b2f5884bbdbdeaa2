#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fcds/rng.hpp"

namespace fcds {

/** Probability distribution over code degrees {1..k} with an inverse-CDF
 *  sampler. Immutable; sampling takes a caller-owned Rng so concurrent
 *  trials never share generator state.
 */
class DegreeDistribution {
public:
  /// `probs[d-1]` is the mass of degree d. Nonnegative; normalized here.
  explicit DegreeDistribution(std::vector<double> probs);

  uint32_t k() const { return static_cast<uint32_t>(probs_.size()); }
  double prob(uint32_t d) const { return probs_[d - 1]; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& cdf() const { return cdf_; }

  double meanDegree() const;

  uint32_t sample(Rng& rng) const;

private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

/// Mass 1/k at d=1 and 1/(d(d-1)) for 2 <= d <= k.
DegreeDistribution idealSoliton(uint32_t k);

/** Ideal Soliton plus the spike/decay term tau with R = c0*ln(k/delta)*sqrt(k),
 *  normalized. The pivot index k/R is rounded to the nearest integer and must
 *  land in [1, k]; parameters violating that are rejected.
 */
DegreeDistribution robustSoliton(uint32_t k, double c0, double delta);

/** Distribution of the number of distinct sources a node ends up storing when
 *  it draws d ~ dist and then accepts each of k sources independently with
 *  probability d/k. Index i = 0..k. Computed with log-binomials so it stays
 *  finite at large k.
 */
std::vector<double> thinnedDistribution(const DegreeDistribution& dist, uint32_t k);

/// `d,prob` rows for inspection.
void writeDistributionCsv(const DegreeDistribution& dist, std::ostream& os);

}  // namespace fcds

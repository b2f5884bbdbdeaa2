#include "fcds/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fcds/csv_io.hpp"

namespace fcds {

DegreeDistribution::DegreeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("DegreeDistribution: empty support");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::invalid_argument("DegreeDistribution: negative mass");
    sum += p;
  }
  if (sum <= 0.0) throw std::invalid_argument("DegreeDistribution: zero total mass");
  cdf_.resize(probs_.size());
  double acc = 0.0;
  for (size_t i = 0; i < probs_.size(); ++i) {
    probs_[i] /= sum;
    acc += probs_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;  // kill rounding dust at the top
}

double DegreeDistribution::meanDegree() const {
  double m = 0.0;
  for (size_t i = 0; i < probs_.size(); ++i) m += static_cast<double>(i + 1) * probs_[i];
  return m;
}

uint32_t DegreeDistribution::sample(Rng& rng) const {
  const double u = rng.nextDouble();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const size_t idx = std::min<size_t>(static_cast<size_t>(it - cdf_.begin()), cdf_.size() - 1);
  return static_cast<uint32_t>(idx + 1);
}

DegreeDistribution idealSoliton(uint32_t k) {
  if (k < 1) throw std::invalid_argument("idealSoliton: k must be >= 1");
  std::vector<double> p(k);
  p[0] = 1.0 / static_cast<double>(k);
  for (uint32_t d = 2; d <= k; ++d)
    p[d - 1] = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
  return DegreeDistribution(std::move(p));
}

DegreeDistribution robustSoliton(uint32_t k, double c0, double delta) {
  if (k < 2) throw std::invalid_argument("robustSoliton: k must be >= 2");
  if (!(c0 > 0.0)) throw std::invalid_argument("robustSoliton: c0 must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("robustSoliton: delta in (0,1)");

  const double kd = static_cast<double>(k);
  const double R = c0 * std::log(kd / delta) * std::sqrt(kd);
  const auto pivot = static_cast<int64_t>(std::llround(kd / R));
  if (pivot < 1 || pivot > static_cast<int64_t>(k))
    throw std::invalid_argument("robustSoliton: pivot k/R rounds outside [1, k] (k=" +
                                std::to_string(k) + ", R=" + std::to_string(R) + ")");

  std::vector<double> w(k);
  w[0] = 1.0 / kd;
  for (uint32_t d = 2; d <= k; ++d)
    w[d - 1] = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
  for (int64_t d = 1; d < pivot; ++d) w[d - 1] += R / (static_cast<double>(d) * kd);
  w[pivot - 1] += R * std::log(R / delta) / kd;
  return DegreeDistribution(std::move(w));  // constructor normalizes
}

std::vector<double> thinnedDistribution(const DegreeDistribution& dist, uint32_t k) {
  if (dist.k() != k) throw std::invalid_argument("thinnedDistribution: dist support != k");
  const double kd = static_cast<double>(k);

  std::vector<double> logFact(k + 1, 0.0);
  for (uint32_t i = 1; i <= k; ++i) logFact[i] = logFact[i - 1] + std::log(static_cast<double>(i));
  auto logChoose = [&](uint32_t i) { return logFact[k] - logFact[i] - logFact[k - i]; };

  std::vector<double> out(k + 1, 0.0);
  for (uint32_t d = 1; d <= k; ++d) {
    const double w = dist.prob(d);
    if (w == 0.0) continue;
    if (d == k) {  // acceptance probability 1: all k sources stored
      out[k] += w;
      continue;
    }
    const double lp = std::log(static_cast<double>(d) / kd);
    const double lq = std::log1p(-static_cast<double>(d) / kd);
    for (uint32_t i = 0; i <= k; ++i)
      out[i] += w * std::exp(logChoose(i) + static_cast<double>(i) * lp +
                             static_cast<double>(k - i) * lq);
  }
  return out;
}

void writeDistributionCsv(const DegreeDistribution& dist, std::ostream& os) {
  os << "d,prob\n";
  for (uint32_t d = 1; d <= dist.k(); ++d) os << d << ',' << formatDouble(dist.prob(d)) << '\n';
}

}  // namespace fcds

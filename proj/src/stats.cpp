#include "fcds/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace fcds {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sampleVariance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance needs >= 2 samples");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double sampleStddev(std::span<const double> xs) { return std::sqrt(sampleVariance(xs)); }

double coefficientOfVariation(std::span<const double> xs) {
  const double m = mean(xs);
  if (m == 0.0) throw std::invalid_argument("coefficient of variation of zero-mean sample");
  return sampleStddev(xs) / std::abs(m);
}

double binomialStderr(double p, uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("binomialStderr with zero trials");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ChiSquare chiSquareGof(std::span<const uint64_t> observed,
                       std::span<const double> expectedProbs,
                       double minExpected) {
  if (observed.size() != expectedProbs.size())
    throw std::invalid_argument("chiSquareGof: size mismatch");
  uint64_t total = 0;
  for (uint64_t o : observed) total += o;
  if (total == 0) throw std::invalid_argument("chiSquareGof: empty sample");

  // Pool adjacent cells until each pooled expectation reaches minExpected.
  // The final (tail) pool absorbs whatever is left.
  std::vector<double> expCells;
  std::vector<double> obsCells;
  double accE = 0.0, accO = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    accE += expectedProbs[i] * static_cast<double>(total);
    accO += static_cast<double>(observed[i]);
    if (accE >= minExpected) {
      expCells.push_back(accE);
      obsCells.push_back(accO);
      accE = accO = 0.0;
    }
  }
  if (accE > 0.0 || accO > 0.0) {
    if (!expCells.empty()) {
      expCells.back() += accE;
      obsCells.back() += accO;
    } else {
      expCells.push_back(accE);
      obsCells.push_back(accO);
    }
  }
  if (expCells.size() < 2) throw std::invalid_argument("chiSquareGof: fewer than 2 cells after pooling");

  double stat = 0.0;
  for (size_t i = 0; i < expCells.size(); ++i) {
    const double d = obsCells[i] - expCells[i];
    stat += d * d / expCells[i];
  }
  return {stat, static_cast<int>(expCells.size()) - 1};
}

double chiSquareCritical(int dof, double tail) {
  if (dof < 1) throw std::invalid_argument("chiSquareCritical: dof < 1");
  double z;
  if (tail == 0.01)
    z = 2.3263478740408408;
  else if (tail == 0.001)
    z = 3.090232306167813;
  else if (tail == 0.05)
    z = 1.6448536269514722;
  else
    throw std::invalid_argument("chiSquareCritical: unsupported tail");
  const double nu = static_cast<double>(dof);
  const double t = 1.0 - 2.0 / (9.0 * nu) + z * std::sqrt(2.0 / (9.0 * nu));
  return nu * t * t * t;
}

}  // namespace fcds

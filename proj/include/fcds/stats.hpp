#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fcds {

double mean(std::span<const double> xs);
double sampleVariance(std::span<const double> xs);
double sampleStddev(std::span<const double> xs);
/// stddev / mean; requires a nonzero mean.
double coefficientOfVariation(std::span<const double> xs);

/// Standard error of a binomial proportion estimate.
double binomialStderr(double p, uint64_t trials);

struct ChiSquare {
  double statistic;
  int dof;  // bins after merging, minus one
};

/** Pearson goodness-of-fit statistic of observed counts against expected
 *  probabilities. Adjacent cells are pooled (from the tail down) until every
 *  expected count reaches `minExpected`, the usual validity rule.
 */
ChiSquare chiSquareGof(std::span<const uint64_t> observed,
                       std::span<const double> expectedProbs,
                       double minExpected = 5.0);

/// Upper critical value of the chi-square distribution (Wilson-Hilferty
/// approximation; good to ~1% for dof >= 3). `tail` is e.g. 0.01 or 0.001.
double chiSquareCritical(int dof, double tail);

}  // namespace fcds

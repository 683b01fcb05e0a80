#pragma once

// Independent reference implementations used to check the library. These
// deliberately re-derive results from scratch (characteristic polynomial,
// plain enumeration, spreadsheet-style statistics) and must not call the
// code paths they verify.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maturity/model.hpp"
#include "maturity/scoring.hpp"

namespace oracle {

// Roots of det(A - lambda I) for symmetric 2x2 and 3x3 matrices, descending.
// 2x2 via the quadratic formula, 3x3 via the trigonometric cubic solution.
std::vector<double> char_poly_eigenvalues(const std::vector<std::vector<double>>& a);

// Pearson r computed stepwise from covariance and standard deviations.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Coefficient alpha computed stepwise: item variances, total variance,
// k/(k-1) * (1 - sum/total). Sample variance, n-1.
double alpha(const std::vector<std::vector<double>>& items);

// Sort-and-pick lower median.
int lower_median(std::vector<int> values);

struct BruteLevel {
  int level = 0;
  int n = 0;
  int agreed = 0;
  int threshold = 0;
  bool passed = false;
};

struct BruteResult {
  std::vector<BruteLevel> levels;
  int bml = 0;
};

// Full re-scoring by direct enumeration of every question and level. Blank
// handling follows the given policy; thresholds use floor(n*f + 0.5) on
// doubles, which is exact for the fractions the tests use.
BruteResult brute_force_score(const maturity::MaturityModel& m,
                              const maturity::ResponseSet& r,
                              maturity::BlankPolicy policy);

}  // namespace oracle

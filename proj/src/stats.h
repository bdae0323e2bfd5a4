#ifndef TRANSTYLE_STATS_H_
#define TRANSTYLE_STATS_H_

#include <cstdint>
#include <vector>

#include "corpus.h"

namespace transtyle {

// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
// Series expansion for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with k dof.
double chi_squared_sf(double x, int dof);

struct McNemarResult {
  std::int64_t b = 0;  // first correct, second wrong
  std::int64_t c = 0;  // first wrong, second correct
  double statistic = 0.0;
  double p = 1.0;
};

// Continuity-corrected McNemar test on the discordant predictions of two
// classifiers: statistic = (|b-c| - 1)^2 / (b+c) when |b-c| > 1 and
// b+c > 0, else 0; p two-sided from chi-square with 1 dof.
McNemarResult mcnemar(const std::vector<Class>& pred_a,
                      const std::vector<Class>& pred_b,
                      const std::vector<Class>& gold);

McNemarResult mcnemar_from_counts(std::int64_t b, std::int64_t c);

}  // namespace transtyle

#endif  // TRANSTYLE_STATS_H_

#include "stats.h"

#include <cmath>
#include <limits>

#include "error.h"

namespace transtyle {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEpsilon = 3.0e-15;
constexpr double kTiny = 1.0e-300;

double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz's method on the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw Error("BadGammaArgs", "need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw Error("BadGammaArgs", "need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_squared_sf(double x, int dof) {
  if (dof < 1) throw Error("BadGammaArgs", "dof must be >= 1");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * static_cast<double>(dof), 0.5 * x);
}

McNemarResult mcnemar_from_counts(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0) throw Error("BadCounts", "b and c must be >= 0");
  McNemarResult r;
  r.b = b;
  r.c = c;
  const std::int64_t diff = b > c ? b - c : c - b;
  const std::int64_t total = b + c;
  if (diff > 1 && total > 0) {
    double num = static_cast<double>(diff) - 1.0;
    r.statistic = num * num / static_cast<double>(total);
    r.p = chi_squared_sf(r.statistic, 1);
  } else {
    r.statistic = 0.0;
    r.p = 1.0;
  }
  return r;
}

McNemarResult mcnemar(const std::vector<Class>& pred_a,
                      const std::vector<Class>& pred_b,
                      const std::vector<Class>& gold) {
  if (pred_a.size() != gold.size() || pred_b.size() != gold.size())
    throw Error("LengthMismatch", "prediction and gold lengths differ");
  std::int64_t b = 0, c = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    bool a_ok = pred_a[i] == gold[i];
    bool b_ok = pred_b[i] == gold[i];
    if (a_ok && !b_ok) ++b;
    if (!a_ok && b_ok) ++c;
  }
  return mcnemar_from_counts(b, c);
}

}  // namespace transtyle

#include <deepmemetic/distributions.hpp>

#include <deepmemetic/common.hpp>

#include <cmath>
#include <limits>

namespace deepmemetic {

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny)
    d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny)
      d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny)
      d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps)
      return h;
  }
  return h;
}

double log_beta_prefactor(double a, double b, double x) {
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
         a * std::log(x) + b * std::log1p(-x);
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw InvalidArgument("incomplete beta needs a, b > 0");
  if (x < 0.0 || x > 1.0)
    throw InvalidArgument("incomplete beta needs 0 <= x <= 1");
  if (x == 0.0)
    return 0.0;
  if (x == 1.0)
    return 1.0;
  const double front = std::exp(log_beta_prefactor(a, b, x));
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_cdf(double x, double d1, double d2) {
  if (x <= 0.0)
    return 0.0;
  if (std::isinf(x))
    return 1.0;
  return regularized_incomplete_beta(d1 / 2.0, d2 / 2.0,
                                     d1 * x / (d1 * x + d2));
}

double f_upper_tail(double x, double d1, double d2) {
  if (x <= 0.0)
    return 1.0;
  if (std::isinf(x))
    return 0.0;
  return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0,
                                     d2 / (d2 + d1 * x));
}

} // namespace deepmemetic

#ifndef DEEPMEMETIC_DISTRIBUTIONS_HPP
#define DEEPMEMETIC_DISTRIBUTIONS_HPP

namespace deepmemetic {

/// P(Z > z) for a standard normal Z.
double normal_upper_tail(double z);

/// Regularized incomplete beta function I_x(a, b), a, b > 0, 0 <= x <= 1.
double regularized_incomplete_beta(double a, double b, double x);

/// P(F <= x) for F ~ F(d1, d2).
double f_cdf(double x, double d1, double d2);

/// P(F > x) for F ~ F(d1, d2), computed without cancellation.
double f_upper_tail(double x, double d1, double d2);

} // namespace deepmemetic

#endif // DEEPMEMETIC_DISTRIBUTIONS_HPP

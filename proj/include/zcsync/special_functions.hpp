#pragma once

namespace zcsync {

// exp(-x) * I_0(x) for x >= 0. Finite for any finite x.
double bessel_i0_scaled(double x);

// log of the Poisson probability mass at k for rate lambda, using the
// saddle-point (deviance) form so large k and lambda keep full precision.
double log_poisson_pmf(long k, double lambda);

// Marcum Q function of order one,
//   Q_1(a, b) = int_b^inf t exp(-(t^2 + a^2)/2) I_0(a t) dt.
double marcum_q1(double a, double b);

// 1 - Q_1(a, b), computed directly so it keeps relative accuracy where Q_1
// is close to one.
double marcum_q1_complement(double a, double b);

} // namespace zcsync

#pragma once

namespace cdm {

// Digamma for x > 0: recurrence up to x >= 10, then the asymptotic series
// through B14.  Absolute accuracy ~1e-15 on (0, 1].
double digamma(double x);

// Hurwitz zeta(s, a) for real s != 1, a > 0, by Euler-Maclaurin with 24
// explicit terms and Bernoulli corrections through B24.  Intended range
// here is s in [-2, 4]; accuracy ~1e-15.
double hurwitz_zeta(double s, double a);

// gamma_0(lambda): the constant term of the Laurent expansion of
// zeta(s, lambda) at s = 1, i.e. lim_{s->1} (zeta(s,lambda) - 1/(s-1)).
// Equals -digamma(lambda); the identity is verified against a direct
// two-sided limit of hurwitz_zeta in the tests.
double hurwitz_laurent_constant(double lambda);

// zeta(0, lambda) = 1/2 - lambda (closed form, verified numerically).
double hurwitz_zeta_at_zero(double lambda);

}  // namespace cdm

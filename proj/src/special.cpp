#include "cdm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace cdm {

double digamma(double x) {
    if (!(x > 0) || !std::isfinite(x))
        throw std::invalid_argument("digamma: need x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum B_{2k}/(2k x^{2k}), through B14
    static const double coef[7] = {
        1.0 / 12,  -1.0 / 120, 1.0 / 252,       -1.0 / 240,
        1.0 / 132, -691.0 / 32760, 1.0 / 12,
    };
    double inv2 = 1.0 / (x * x);
    double p = inv2, tail = 0.0;
    for (double ck : coef) {
        tail += ck * p;
        p *= inv2;
    }
    return acc + std::log(x) - 0.5 / x - tail;
}

double hurwitz_zeta(double s, double a) {
    if (!(a > 0)) throw std::invalid_argument("hurwitz_zeta: need a > 0");
    if (!std::isfinite(s) || std::fabs(s - 1.0) < 1e-13)
        throw std::invalid_argument("hurwitz_zeta: s = 1 is the pole");

    // B2..B24
    static const double bern[12] = {
        1.0 / 6,         -1.0 / 30,        1.0 / 42,        -1.0 / 30,
        5.0 / 66,        -691.0 / 2730,    7.0 / 6,         -3617.0 / 510,
        43867.0 / 798,   -174611.0 / 330,  854513.0 / 138,  -236364091.0 / 2730,
    };
    const int N = 24;
    long double sum = 0.0L;
    for (int k = 0; k < N; ++k) sum += powl((long double)(k + a), (long double)-s);

    long double Na = N + (long double)a;
    sum += powl(Na, (long double)(1.0 - s)) / (long double)(s - 1.0);
    sum += 0.5L * powl(Na, (long double)-s);

    // correction terms B_{2j}/(2j)! * (s)_{2j-1} * (N+a)^{-s-2j+1}
    long double poch = (long double)s;       // (s)_1
    long double fact = 1.0L;                 // (2j)!
    long double npow = powl(Na, (long double)(-s - 1.0));
    for (int j = 1; j <= 12; ++j) {
        fact *= (2.0L * j - 1.0L) * (2.0L * j);
        sum += (long double)bern[j - 1] / fact * poch * npow;
        poch *= (s + 2.0L * j - 1.0L) * (s + 2.0L * j);
        npow /= Na * Na;
    }
    return (double)sum;
}

double hurwitz_laurent_constant(double lambda) {
    if (!(lambda > 0) || lambda > 1.0)
        throw std::invalid_argument("hurwitz_laurent_constant: need lambda in (0,1]");
    return -digamma(lambda);
}

double hurwitz_zeta_at_zero(double lambda) {
    if (!(lambda > 0) || lambda > 1.0)
        throw std::invalid_argument("hurwitz_zeta_at_zero: need lambda in (0,1]");
    return 0.5 - lambda;
}

}  // namespace cdm

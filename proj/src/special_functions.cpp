#include "zcsync/special_functions.hpp"

#include "zcsync/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace zcsync {

namespace {

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0)) {
        throw Error(ErrorCode::NegativeArgument, name, std::string(name) + " must be nonnegative");
    }
}

constexpr double kSeriesLimit = 20.0;

} // namespace

double bessel_i0_scaled(double x) {
    require_nonnegative(x, "x");
    if (std::isinf(x)) return 0.0;
    if (x <= kSeriesLimit) {
        // sum (x/2)^(2k) / (k!)^2; all terms positive.
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum * std::exp(-x);
    }
    // Hankel expansion; the smallest term is ~exp(-2x), far below double
    // precision once x > 20.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

namespace {

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirling_error(long n) {
    const double nd = static_cast<double>(n);
    if (n <= 15) {
        return std::lgamma(nd + 1.0) - (nd + 0.5) * std::log(nd) + nd - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    const double nn = nd * nd;
    if (n > 500) return (s0 - s1 / nn) / nd;
    if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / nd;
    if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / nd;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / nd;
}

// x log(x/m) + m - x, without cancellation for x close to m.
double deviance(double x, double m) {
    if (std::fabs(x - m) < 0.1 * (x + m)) {
        double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2.0 * j + 1.0);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

constexpr double kLog10 = 2.302585092994045684;
constexpr double kRescale = 1e100;
constexpr double kRescaleLog = 100.0 * kLog10;
constexpr long kMaxTerms = 50'000'000;

// log P(A + shift <= B) for independent A ~ Poisson(u), B ~ Poisson(v), u >= v.
//
// Q_1(a, b) = P(M <= J) with M ~ Poisson(b^2/2), J ~ Poisson(a^2/2), which
// follows from the Poisson-mixture form of the noncentral chi-square CDF.
// The sum runs over B:  sum_b P(B = b) * P(A <= b - shift). Its terms are
// log-concave in b, so the loop stops on the falling side once a term is
// below 1e-17 of the running sum. Terms start 10 standard deviations below
// the mean of B where the Poisson weights are < exp(-50).
double log_order_tail(double u, double v, long shift) {
    if (v == 0.0) return shift == 0 ? -u : -std::numeric_limits<double>::infinity();

    const long b0 = std::max(shift, static_cast<long>(std::floor(v - 10.0 * std::sqrt(v) - 10.0)));
    const long m0 = b0 - shift;

    // P(A <= m0) = P(A = m0) * sum_i prod_{t<i} (m0 - t)/u; ratio < 1 since m0 < u.
    double cdf = 0.0;
    {
        double term = 1.0;
        for (long i = 0; i <= m0; ++i) {
            cdf += term;
            term *= static_cast<double>(m0 - i) / u;
            if (term < 1e-17 * cdf) break;
        }
    }
    double log_scale_a = log_poisson_pmf(m0, u);
    double pmf_a = 1.0;
    double log_scale_b = log_poisson_pmf(b0, v);
    double pmf_b = 1.0;

    double log_scale_sum = log_scale_a + log_scale_b;
    double sum = 0.0;
    double factor = 1.0; // exp(log_scale_a + log_scale_b - log_scale_sum)
    double prev = 0.0;

    for (long b = b0;; ++b) {
        const double t = pmf_b * cdf * factor;
        sum += t;
        if (b > b0 && t <= prev && t <= 1e-17 * sum) break;
        prev = t;
        if (b - b0 > kMaxTerms) {
            throw Error(ErrorCode::NumericFailure, "marcum_q1", "Poisson-pair series did not converge");
        }

        const long m = b - shift;
        pmf_a *= u / static_cast<double>(m + 1);
        cdf += pmf_a;
        pmf_b *= v / static_cast<double>(b + 1);

        bool rescaled = false;
        if (cdf > kRescale) {
            cdf /= kRescale;
            pmf_a /= kRescale;
            log_scale_a += kRescaleLog;
            rescaled = true;
        }
        if (pmf_b > kRescale) {
            pmf_b /= kRescale;
            log_scale_b += kRescaleLog;
            rescaled = true;
        } else if (pmf_b < 1.0 / kRescale && pmf_b > 0.0) {
            pmf_b *= kRescale;
            log_scale_b -= kRescaleLog;
            rescaled = true;
        }
        if (rescaled) {
            const double d = log_scale_a + log_scale_b - log_scale_sum;
            if (d > 0.0) {
                const double shrink = std::exp(-d);
                sum *= shrink;
                prev *= shrink;
                log_scale_sum += d;
                factor = 1.0;
            } else {
                factor = std::exp(d);
            }
        }
    }
    return log_scale_sum + std::log(sum);
}

} // namespace

double log_poisson_pmf(long k, double lambda) {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (lambda == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (k == 0) return -lambda;
    const double kd = static_cast<double>(k);
    return -stirling_error(k) - deviance(kd, lambda) - 0.5 * std::log(2.0 * std::numbers::pi * kd);
}

double marcum_q1(double a, double b) {
    require_nonnegative(a, "a");
    require_nonnegative(b, "b");
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);
    const double x = 0.5 * a * a;
    const double y = 0.5 * b * b;
    if (y > x) return std::exp(log_order_tail(y, x, 0));
    return -std::expm1(log_order_tail(x, y, 1));
}

double marcum_q1_complement(double a, double b) {
    require_nonnegative(a, "a");
    require_nonnegative(b, "b");
    if (b == 0.0) return 0.0;
    if (a == 0.0) return -std::expm1(-0.5 * b * b);
    const double x = 0.5 * a * a;
    const double y = 0.5 * b * b;
    if (y > x) return -std::expm1(log_order_tail(y, x, 0));
    return std::exp(log_order_tail(x, y, 1));
}

} // namespace zcsync

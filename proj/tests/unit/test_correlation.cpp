#include "doctest.h"
#include "zcsync/correlation.hpp"
#include "zcsync/error.hpp"

#include <random>

using namespace zcsync;

namespace {

// |(1/N) sum_n exp(i 2 pi (dl - mu dk) n / N) * phase|^2 evaluated as a
// geometric series in long double; a third route besides the brute force
// sum and the library's sinc.
double geometric_oracle(long mu, long n, long dk, double dl) {
    const long double x = static_cast<long double>(dl) - static_cast<long double>(mu) * dk;
    const long double th = 2.0L * std::numbers::pi_v<long double> * x / n;
    const long double c = std::cos(th);
    if (1.0L - c < 1e-24L) return 1.0;
    const long double num = 1.0L - std::cos(th * n);
    return static_cast<double>(num / (1.0L - c) / (static_cast<long double>(n) * n));
}

} // namespace

TEST_CASE("circular correlation examples") {
    const auto seq = zc_generate(839, 140);
    const auto s = seq.samples();
    const auto self = circular_correlate(s, s, 0);
    CHECK(std::abs(self.value - cplx(1, 0)) < 1e-12);

    const auto rx = cyclic_shift(s, -5);
    CHECK(circular_correlate(rx, s, 5).metric == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(circular_correlate(rx, s, 4).metric < 1e-10);
    CHECK(circular_correlate(rx, s, 5 + 839).metric == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(circular_correlate(rx, s, 5 - 839).metric == doctest::Approx(1.0).epsilon(1e-10));

    std::vector<cplx> shorter(s.begin(), s.end() - 1);
    CHECK_THROWS_AS(circular_correlate(shorter, s, 0), Error);
}

TEST_CASE("metric is the squared magnitude") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    std::vector<cplx> a(101), b(101);
    for (auto& v : a) v = {nd(gen), nd(gen)};
    for (auto& v : b) v = {nd(gen), nd(gen)};
    for (long k = 0; k < 101; k += 7) {
        const auto out = circular_correlate(a, b, k);
        CHECK(out.metric == doctest::Approx(std::norm(out.value)).epsilon(1e-12));
        cplx ref = 0;
        for (long n = 0; n < 101; ++n) ref += a[(n + k) % 101] * std::conj(b[n]);
        CHECK(std::abs(out.value - ref / 101.0) < 1e-13);
    }
}

TEST_CASE("offset autocorrelation examples") {
    const auto zc140 = zc_generate(839, 140);
    CHECK(std::abs(autocorr_offset(zc140, 0, 0.0) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(autocorr_offset(zc140, 6, 1.0)) == doctest::Approx(1.0).epsilon(1e-10));
    const auto zc367 = zc_generate(839, 367);
    CHECK(std::abs(autocorr_offset(zc367, 7, 52.0)) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(autocorr_mag_sq_closed(140, 839, 0, 0.0) == 1.0);
    CHECK(autocorr_mag_sq_closed(140, 839, 1, 0.0) < 1e-20);
    CHECK(autocorr_mag_sq_closed(140, 839, 6, 0.5) ==
          doctest::Approx(std::norm(autocorr_offset(zc140, 6, 0.5))).epsilon(1e-10));
}

TEST_CASE("closed form matches brute force and the geometric series") {
    const std::vector<double> dls{-1.0, -0.7, -0.5, 0.0, 0.3, 0.5, 1.0};
    for (long n : {11L, 101L, 839L}) {
        for (long mu : {1L, 3L, 7L, n - 2}) {
            if (gcd(mu, n) != 1) continue;
            const auto seq = zc_generate(n, mu);
            for (long dk = -20; dk <= 20; ++dk) {
                for (double dl : dls) {
                    const double closed = autocorr_mag_sq_closed(mu, n, dk, dl);
                    REQUIRE(std::abs(closed - std::norm(autocorr_offset(seq, dk, dl))) < 1e-9);
                    REQUIRE(std::abs(closed - geometric_oracle(mu, n, dk, dl)) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("sinc peak, bounds and conjugate symmetry") {
    const long n = 839;
    for (long mu : {29L, 140L, 367L}) {
        const auto seq = zc_generate(n, mu);
        for (long dk = -20; dk <= 20; ++dk) {
            // exact peak at the critical offset and at its aliases
            const double crit = static_cast<double>(mu * dk);
            for (long l = -2; l <= 2; ++l) {
                CHECK(autocorr_mag_sq_closed(mu, n, dk, crit + static_cast<double>(l * n)) == 1.0);
            }
            for (double dl = -3.0; dl <= 3.0; dl += 0.125) {
                const double v = autocorr_mag_sq_closed(mu, n, dk, dl);
                REQUIRE(v >= 0.0);
                REQUIRE(v <= 1.0);
                const double a = std::abs(autocorr_offset(seq, dk, dl));
                const double b = std::abs(autocorr_offset(seq, -dk, -dl));
                REQUIRE(std::abs(a - b) < 1e-10);
            }
        }
    }
}

TEST_CASE("dirichlet kernel limits") {
    CHECK(dirichlet_sinc(0.0, 839) == 1.0);
    CHECK(dirichlet_sinc(839.0, 839) == 1.0);
    CHECK(dirichlet_sinc(-839.0 * 3, 839) == 1.0);
    CHECK(dirichlet_sinc(1.0, 839) == 0.0);
    CHECK(dirichlet_sinc(0.5, 839) ==
          doctest::Approx(1.0 / (839.0 * std::sin(std::numbers::pi * 0.5 / 839.0))).epsilon(1e-13));
}

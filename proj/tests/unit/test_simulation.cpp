#include "doctest.h"
#include "zcsync/correlation.hpp"
#include "zcsync/detection.hpp"
#include "zcsync/error.hpp"
#include "zcsync/simulation.hpp"

using namespace zcsync;

namespace {

SimulationConfig make_config(long mu, long w, double dl, double eta) {
    SimulationConfig c;
    c.scenario = DetectionScenario{839, mu, w, dl, eta};
    return c;
}

} // namespace

TEST_CASE("rng streams") {
    TrialRng a(5, 9), b(5, 9), c(5, 10), d(6, 9);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
    TrialRng r(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        const long k = r.uniform_int(16);
        REQUIRE(k >= 0);
        REQUIRE(k < 16);
    }
}

TEST_CASE("noiseless synthesis") {
    auto c = make_config(140, 16, 0.0, 4.0);
    c.noiseless = true;
    const auto seq = zc_generate(839, 140);
    TrialRng rng(1, 0);
    const auto y0 = synthesize_received(seq.samples(), 0, 0.0, c, rng);
    REQUIRE(y0.size() == 839u + 15u);
    for (long n = 0; n < 839; ++n) REQUIRE(std::abs(y0[15 + n] - 2.0 * seq.samples()[n]) < 1e-14);
    // cyclic prefix repeats the tail
    for (long n = 0; n < 15; ++n) REQUIRE(y0[n] == y0[n + 839]);

    const auto y5 = truncate_cp(synthesize_received(seq.samples(), 5, 0.0, c, rng), c);
    const auto shifted = cyclic_shift(seq.samples(), -5);
    for (long n = 0; n < 839; ++n) REQUIRE(std::abs(y5[n] - 2.0 * shifted[n]) < 1e-14);
    for (long k = 0; k < 16; ++k) {
        const auto y = truncate_cp(synthesize_received(seq.samples(), k, 0.0, c, rng), c);
        CHECK(circular_correlate(y, seq.samples(), k).metric == doctest::Approx(4.0).epsilon(1e-9));
    }

    CHECK_THROWS_AS(synthesize_received(seq.samples(), 16, 0.0, c, rng), Error);
    CHECK_THROWS_AS(truncate_cp(y0, make_config(140, 3, 0.0, 1.0)), Error);
    auto zero_cp = c;
    zero_cp.cp_length = 0;
    zero_cp.scenario.window = 1;
    const std::vector<cplx> v(839, cplx(1, 2));
    CHECK(truncate_cp(v, zero_cp) == v);
    auto bad = c;
    bad.cp_length = 10;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("noiseless detection") {
    const auto s140 = zc_generate(839, 140);
    const auto s367 = zc_generate(839, 367);
    const HypothesisWindow w(16);
    auto c = make_config(140, 16, 0.0, 1.0);
    c.noiseless = true;
    TrialRng rng(1, 0);
    CHECK(detect_timing(truncate_cp(synthesize_received(s140.samples(), 7, 0.0, c, rng), c), s140.samples(), w) == 7);
    CHECK(detect_timing(truncate_cp(synthesize_received(s140.samples(), 0, 0.7, c, rng), c), s140.samples(), w) == 6);
    CHECK(detect_timing(truncate_cp(synthesize_received(s367.samples(), 0, 0.7, c, rng), c), s367.samples(), w) == 0);
    // all metrics equal: the first hypothesis wins
    const std::vector<cplx> zeros(839);
    CHECK(detect_timing(zeros, s140.samples(), w) == 0);

    auto clean = make_config(367, 16, 0.0, 1.0);
    clean.noiseless = true;
    clean.trials = 100;
    const auto r = run_experiment(clean);
    CHECK(r.error_rate == 0.0);
    CHECK(r.count(0) == 100);
}

TEST_CASE("noise samples have unit variance") {
    auto c = make_config(140, 16, 0.0, 0.0);
    const auto seq = zc_generate(839, 140);
    double power = 0.0;
    cplx mean = 0.0;
    long count = 0;
    for (std::uint64_t t = 0; count < 100000; ++t) {
        TrialRng rng(99, t);
        for (const auto& v : synthesize_received(seq.samples(), 0, 0.0, c, rng)) {
            power += std::norm(v);
            mean += v;
            ++count;
        }
    }
    CHECK(std::abs(power / static_cast<double>(count) - 1.0) < 0.02);
    CHECK(std::abs(mean / static_cast<double>(count)) < 0.02);
}

TEST_CASE("correlator noise is white across hypotheses") {
    auto c = make_config(140, 16, 0.0, 0.0);
    const auto seq = zc_generate(839, 140);
    cplx cross = 0.0;
    double p0 = 0.0, p1 = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        TrialRng rng(3, static_cast<std::uint64_t>(t));
        const auto y = truncate_cp(synthesize_received(seq.samples(), 0, 0.0, c, rng), c);
        const auto z0 = circular_correlate(y, seq.samples(), 0).value;
        const auto z1 = circular_correlate(y, seq.samples(), 1).value;
        cross += z0 * std::conj(z1);
        p0 += std::norm(z0);
        p1 += std::norm(z1);
    }
    CHECK(std::abs(cross) / std::sqrt(p0 * p1) < 5.0 / std::sqrt(10000.0));
    // each correlator output has variance 1/N
    CHECK(std::abs(p0 / trials * 839.0 - 1.0) < 0.05);
}

TEST_CASE("empirical metric moments match the model") {
    const auto scenario = DetectionScenario::from_db(839, 140, 16, 0.5, -15.0);
    auto c = make_config(140, 16, 0.5, scenario.eta);
    const auto seq = zc_generate(839, 140);
    const long kappa = 4;
    for (long dk : {0L, 6L, -3L}) {
        const int trials = 10000;
        std::vector<double> z(trials);
        for (int t = 0; t < trials; ++t) {
            TrialRng rng(17, static_cast<std::uint64_t>(t));
            const auto y = truncate_cp(synthesize_received(seq.samples(), kappa, 0.5, c, rng), c);
            z[t] = circular_correlate(y, seq.samples(), kappa + dk).metric;
        }
        double m = 0.0;
        for (double v : z) m += v;
        m /= trials;
        double m2 = 0.0, m4 = 0.0;
        for (double v : z) {
            m2 += (v - m) * (v - m);
            m4 += std::pow(v - m, 4);
        }
        m2 /= trials - 1;
        m4 /= trials;
        CAPTURE(dk);
        CHECK(std::abs(m - metric_mean(dk, scenario)) < 3.0 * std::sqrt(m2 / trials));
        CHECK(std::abs(m2 - metric_var(dk, scenario)) < 3.0 * std::sqrt((m4 - m2 * m2) / trials));
    }
}

TEST_CASE("experiments are reproducible and schedule independent") {
    auto c = make_config(140, 16, 0.5, std::pow(10.0, -1.5));
    c.trials = 3000;
    c.seed = 7;
    const auto a = run_experiment(c);
    const auto b = run_experiment(c);
    CHECK(a.counts == b.counts);
    CHECK(a.error_rate == b.error_rate);
    long sum = 0;
    for (const auto& [dk, n] : a.counts) sum += n;
    CHECK(sum == 3000);
    CHECK(a.error_rate == doctest::Approx(1.0 - a.count(0) / 3000.0).epsilon(1e-15));
    CHECK(a.std_error == doctest::Approx(std::sqrt(a.error_rate * (1 - a.error_rate) / 3000.0)).epsilon(1e-15));

    setenv("ZCSYNC_MAX_WORKERS", "1", 1);
    const auto serial = run_experiment(c);
    unsetenv("ZCSYNC_MAX_WORKERS");
    CHECK(serial.counts == a.counts);

    c.seed = 8;
    CHECK(run_experiment(c).counts != a.counts);
}

TEST_CASE("error floor for the second root") {
    auto c = make_config(367, 20, 0.6, 1.0);
    c.trials = 10000;
    const auto r = run_experiment(c);
    CHECK(std::abs(r.error_rate - 0.2) < 0.015);
}

TEST_CASE("fixed arrival, random phase and pn preamble") {
    auto c = make_config(140, 16, 0.0, 1.0);
    c.trials = 200;
    c.kappa_mode = KappaMode::Fixed;
    c.fixed_kappa = 9;
    c.random_phase = true;
    const auto r = run_experiment(c);
    CHECK(r.count(0) == 200);

    auto pn = make_config(140, 16, 0.0, 1.0);
    pn.sequence = SequenceKind::Pn;
    pn.trials = 200;
    const auto pr = run_experiment(pn);
    CHECK(pr.error_rate < 0.05);

    auto bad = c;
    bad.fixed_kappa = 16;
    CHECK_THROWS_AS(run_experiment(bad), Error);
}

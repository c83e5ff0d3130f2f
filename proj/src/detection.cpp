#include "zcsync/detection.hpp"

#include "zcsync/correlation.hpp"
#include "zcsync/error.hpp"
#include "zcsync/parallel.hpp"
#include "zcsync/sequence.hpp"
#include "zcsync/special_functions.hpp"
#include "zcsync/timing_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace zcsync {

DetectionScenario DetectionScenario::from_db(long length, long root, long window, double delta_lambda,
                                             double eta_db) {
    return {length, root, window, delta_lambda, std::pow(10.0, eta_db / 10.0)};
}

double DetectionScenario::eta_db() const { return 10.0 * std::log10(eta); }

void DetectionScenario::validate() const {
    ZcSequence(length, root);
    if (window < 1 || window >= length) {
        throw Error(ErrorCode::WindowTooLarge, "W",
                    "window size must lie in [1, N-1], got " + std::to_string(window));
    }
    if (!std::isfinite(delta_lambda)) {
        throw Error(ErrorCode::InvalidScenario, "delta_lambda", "frequency offset must be finite");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw Error(ErrorCode::InvalidScenario, "eta", "SNR must be positive and finite");
    }
}

double DetectionScenario::autocorr_sq(long delta_kappa) const {
    return autocorr_mag_sq_closed(root, length, delta_kappa, delta_lambda);
}

double TimingDistribution::total() const {
    double s = 0.0;
    for (const auto& [dk, p] : probabilities) s += p;
    return s;
}

namespace {

// log of f(zeta) without the I0 scaling factor applied, i.e. the density is
// N * exp(-N (sqrt(g2 eta) - sqrt(zeta))^2) * I0e(2 N sqrt(g2 eta zeta)).
double density(double zeta, double g2, double eta, double n) {
    const double amp = std::sqrt(g2 * eta);
    const double root_zeta = std::sqrt(zeta);
    const double diff = amp - root_zeta;
    const double expo = -n * diff * diff;
    if (expo < -745.0) return 0.0;
    return n * std::exp(expo) * bessel_i0_scaled(2.0 * n * amp * root_zeta);
}

} // namespace

double metric_pdf(double zeta, long delta_kappa, const DetectionScenario& scenario) {
    if (!(zeta >= 0.0)) {
        throw Error(ErrorCode::NegativeArgument, "zeta", "metric value must be nonnegative");
    }
    return density(zeta, scenario.autocorr_sq(delta_kappa), scenario.eta, static_cast<double>(scenario.length));
}

double metric_mean(long delta_kappa, const DetectionScenario& scenario) {
    const double n = static_cast<double>(scenario.length);
    return scenario.autocorr_sq(delta_kappa) * scenario.eta + 1.0 / n;
}

double metric_var(long delta_kappa, const DetectionScenario& scenario) {
    const double n = static_cast<double>(scenario.length);
    return 2.0 / n * scenario.autocorr_sq(delta_kappa) * scenario.eta + 1.0 / (n * n);
}

double metric_upper_limit(const DetectionScenario& scenario) {
    const double n = static_cast<double>(scenario.length);
    double upper = scenario.eta + 1.0 / n + 12.0 * std::sqrt(metric_var(0, scenario));
    // Rician tail bound per offset: P(zeta > (sqrt(g2 eta) + sqrt(t/N))^2) < exp(-t).
    const double tail = std::sqrt(45.0 / n);
    for (long dk = -(scenario.window - 1); dk <= scenario.window - 1; ++dk) {
        const double r = std::sqrt(scenario.autocorr_sq(dk) * scenario.eta) + tail;
        upper = std::max(upper, r * r);
    }
    return upper;
}

namespace {

struct Competitor {
    double a;      // sqrt(2 N eta) |sinc(dl - mu dk)|
    double center; // zeta at which this metric's mean sits
};

double given_kappa(long dk_star, long kappa, const DetectionScenario& s, double upper,
                   const QuadratureOptions& options) {
    const double n = static_cast<double>(s.length);
    const double g2_star = s.autocorr_sq(dk_star);
    std::vector<Competitor> rivals;
    rivals.reserve(static_cast<std::size_t>(s.window));
    for (long dk = -kappa; dk <= s.window - 1 - kappa; ++dk) {
        if (dk == dk_star) continue;
        const double g2 = s.autocorr_sq(dk);
        rivals.push_back({std::sqrt(2.0 * n * s.eta * g2), g2 * s.eta});
    }
    // Strongest rivals first so the product reaches zero early.
    std::sort(rivals.begin(), rivals.end(), [](const Competitor& x, const Competitor& y) { return x.a > y.a; });

    auto integrand = [&](double zeta) {
        double value = density(zeta, g2_star, s.eta, n);
        if (value == 0.0) return 0.0;
        const double b = std::sqrt(2.0 * n * zeta);
        for (const auto& r : rivals) {
            value *= marcum_q1_complement(r.a, b);
            if (value == 0.0) break;
        }
        return value;
    };

    const double mean = metric_mean(dk_star, s);
    const double sd = std::sqrt(metric_var(dk_star, s));
    std::vector<double> cuts;
    for (double k : {-8.0, -3.0, 0.0, 3.0, 8.0}) cuts.push_back(mean + k * sd);
    for (const auto& r : rivals) {
        if (r.center > 1.0 / n) cuts.push_back(r.center);
    }
    const auto result = integrate_adaptive(integrand, 0.0, upper, cuts, options);
    if (!std::isfinite(result.value)) {
        throw Error(ErrorCode::NumericFailure, "zeta", "detection integral is not finite");
    }
    return std::clamp(result.value, 0.0, 1.0);
}

void require_in_window(long dk_star, long kappa, const DetectionScenario& s) {
    const auto set = shift_offsets(kappa, HypothesisWindow(s.window));
    if (!set.contains(dk_star)) {
        throw Error(ErrorCode::OffsetNotInWindow, "delta_kappa_star",
                    "shift offset " + std::to_string(dk_star) + " is not reachable from kappa = " +
                        std::to_string(kappa));
    }
}

} // namespace

double prob_shift_given_kappa(long delta_kappa_star, long kappa, const DetectionScenario& scenario,
                              const QuadratureOptions& options) {
    scenario.validate();
    require_in_window(delta_kappa_star, kappa, scenario);
    return given_kappa(delta_kappa_star, kappa, scenario, metric_upper_limit(scenario), options);
}

namespace {

std::pair<long, long> kappa_range(long dk_star, long window) {
    return {std::max(-dk_star, 0L), std::min(window - 1, window - dk_star - 1)};
}

double averaged(long dk_star, const DetectionScenario& s, double upper, const QuadratureOptions& options) {
    const auto [lo, hi] = kappa_range(dk_star, s.window);
    const auto count = static_cast<std::size_t>(std::max(0L, hi - lo + 1));
    std::vector<double> parts(count, 0.0);
    parallel_for(count, [&](std::size_t i) {
        parts[i] = given_kappa(dk_star, lo + static_cast<long>(i), s, upper, options);
    });
    double sum = 0.0;
    for (double p : parts) sum += p;
    return sum / static_cast<double>(s.window);
}

} // namespace

double prob_shift_total(long delta_kappa_star, const DetectionScenario& scenario, const QuadratureOptions& options) {
    scenario.validate();
    if (std::labs(delta_kappa_star) > scenario.window - 1) return 0.0;
    return averaged(delta_kappa_star, scenario, metric_upper_limit(scenario), options);
}

double error_probability(const DetectionScenario& scenario, const QuadratureOptions& options) {
    return 1.0 - prob_shift_total(0, scenario, options);
}

TimingDistribution timing_distribution(const DetectionScenario& scenario, const QuadratureOptions& options) {
    scenario.validate();
    const long w = scenario.window;
    const double upper = metric_upper_limit(scenario);

    struct Task {
        long dk;
        long kappa;
    };
    std::vector<Task> tasks;
    for (long dk = -(w - 1); dk <= w - 1; ++dk) {
        const auto [lo, hi] = kappa_range(dk, w);
        for (long k = lo; k <= hi; ++k) tasks.push_back({dk, k});
    }
    std::vector<double> values(tasks.size(), 0.0);
    parallel_for(tasks.size(), [&](std::size_t i) {
        values[i] = given_kappa(tasks[i].dk, tasks[i].kappa, scenario, upper, options);
    });

    TimingDistribution out;
    out.window = w;
    for (std::size_t i = 0; i < tasks.size(); ++i) out.probabilities[tasks[i].dk] += values[i];
    for (auto& [dk, p] : out.probabilities) p /= static_cast<double>(w);
    out.error_probability = 1.0 - out.probabilities[0];
    return out;
}

} // namespace zcsync

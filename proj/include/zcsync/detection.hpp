#pragma once

#include "zcsync/quadrature.hpp"

#include <map>

namespace zcsync {

// Parameters shared by the analytic model and the simulator. Units are
// normalized so the noise variance is one and |h|^2 = eta; the model
// depends on (|h|, sigma) only through eta.
struct DetectionScenario {
    long length = 839;
    long root = 140;
    long window = 16;
    double delta_lambda = 0.0; // frequency offset in subcarrier spacings
    double eta = 1.0;          // linear receive sample SNR

    static DetectionScenario from_db(long length, long root, long window, double delta_lambda, double eta_db);
    double eta_db() const;
    // N odd, gcd(mu, N) = 1, 1 <= W < N, eta > 0 and finite.
    void validate() const;
    // |sinc(dl - mu*dk)|^2
    double autocorr_sq(long delta_kappa) const;
};

struct TimingDistribution {
    long window = 0;
    std::map<long, double> probabilities; // shift offset -> probability
    double error_probability = 0.0;

    double total() const;
};

// Density of the detection metric zeta at shift offset dk (noncentral
// chi-square, two degrees of freedom), evaluated in the log domain.
double metric_pdf(double zeta, long delta_kappa, const DetectionScenario& scenario);

double metric_mean(long delta_kappa, const DetectionScenario& scenario);
double metric_var(long delta_kappa, const DetectionScenario& scenario);

// Upper integration limit used for the detection integrals of the scenario.
double metric_upper_limit(const DetectionScenario& scenario);

// P(detected offset = dk_star | arrival kappa): the metric at dk_star exceeds
// every other metric in the window, with the metrics treated as independent.
double prob_shift_given_kappa(long delta_kappa_star, long kappa, const DetectionScenario& scenario,
                              const QuadratureOptions& options = {});

// Average of prob_shift_given_kappa over the arrival times (uniform prior)
// for which dk_star lies in the window.
double prob_shift_total(long delta_kappa_star, const DetectionScenario& scenario,
                        const QuadratureOptions& options = {});

double error_probability(const DetectionScenario& scenario, const QuadratureOptions& options = {});

// Full distribution over dk in [-(W-1), W-1]. Per-(dk, kappa) integrals run
// in parallel; sums are formed in a fixed order.
TimingDistribution timing_distribution(const DetectionScenario& scenario, const QuadratureOptions& options = {});

} // namespace zcsync

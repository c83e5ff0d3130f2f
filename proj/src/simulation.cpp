#include "zcsync/simulation.hpp"

#include "zcsync/correlation.hpp"
#include "zcsync/error.hpp"
#include "zcsync/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zcsync {

void SimulationConfig::validate() const {
    const auto& s = scenario;
    if (sequence == SequenceKind::Zc) {
        ZcSequence(s.length, s.root);
    } else {
        pn_generate(pn_degree, pn_taps, s.length);
    }
    if (s.window < 1 || s.window >= s.length) {
        throw Error(ErrorCode::WindowTooLarge, "W", "window size must lie in [1, N-1], got " + std::to_string(s.window));
    }
    if (!std::isfinite(s.delta_lambda)) {
        throw Error(ErrorCode::InvalidConfig, "delta_lambda", "frequency offset must be finite");
    }
    if (!(s.eta >= 0.0) || !std::isfinite(s.eta)) {
        throw Error(ErrorCode::InvalidConfig, "eta", "SNR must be nonnegative and finite");
    }
    if (effective_cp_length() < s.window - 1) {
        throw Error(ErrorCode::InvalidConfig, "N_CP",
                    "cyclic prefix " + std::to_string(effective_cp_length()) + " must cover the window (>= W-1 = " +
                        std::to_string(s.window - 1) + ")");
    }
    if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials", "trials must be >= 1");
    if (kappa_mode == KappaMode::Fixed && (fixed_kappa < 0 || fixed_kappa >= s.window)) {
        throw Error(ErrorCode::KappaOutsideWindow, "kappa",
                    "fixed kappa " + std::to_string(fixed_kappa) + " outside the window");
    }
}

std::vector<cplx> SimulationConfig::reference() const {
    if (sequence == SequenceKind::Pn) {
        const auto pn = pn_generate(pn_degree, pn_taps, scenario.length);
        return {pn.samples().begin(), pn.samples().end()};
    }
    const ZcSequence zc(scenario.length, scenario.root);
    return {zc.samples().begin(), zc.samples().end()};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : engine_(splitmix64(splitmix64(seed) ^ trial)) {}

double TrialRng::uniform() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

long TrialRng::uniform_int(long bound) {
    const auto n = static_cast<std::uint64_t>(bound);
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        const std::uint64_t r = next();
        if (r >= threshold) return static_cast<long>(r % n);
    }
}

cplx TrialRng::complex_gaussian() {
    // |z|^2 = -log(u1) is Exp(1), the squared modulus of CN(0, 1).
    const double radius = std::sqrt(-std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

long EmpiricalDistribution::count(long dk) const {
    auto it = counts.find(dk);
    return it == counts.end() ? 0 : it->second;
}

double EmpiricalDistribution::frequency(long dk) const {
    return trials == 0 ? 0.0 : static_cast<double>(count(dk)) / static_cast<double>(trials);
}

std::vector<cplx> synthesize_received(std::span<const cplx> seq, long kappa, double delta_lambda,
                                      const SimulationConfig& config, TrialRng& rng) {
    const long n = static_cast<long>(seq.size());
    const long cp = config.effective_cp_length();
    if (kappa < 0 || kappa > cp) {
        throw Error(ErrorCode::KappaExceedsCp, "kappa",
                    "arrival time " + std::to_string(kappa) + " outside [0, N_CP = " + std::to_string(cp) + "]");
    }
    const long total = cp + n;
    cplx gain(std::sqrt(config.scenario.eta), 0.0);
    if (config.random_phase) gain *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());

    const ModIndex block{total};
    const ModIndex symbol{n};
    std::vector<cplx> y(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) {
        // Transmitted block x[m] = seq[(m - N_CP) mod N]; received sample i sees x[(i - kappa) mod (N_CP + N)].
        const long m = block(i - kappa);
        const cplx x = seq[static_cast<std::size_t>(symbol(m - cp))];
        const double turns = std::fmod(delta_lambda * static_cast<double>(i), static_cast<double>(n)) /
                             static_cast<double>(n);
        y[static_cast<std::size_t>(i)] = gain * x * std::polar(1.0, 2.0 * std::numbers::pi * turns);
    }
    if (!config.noiseless) {
        for (auto& v : y) v += rng.complex_gaussian();
    }
    return y;
}

std::vector<cplx> truncate_cp(std::span<const cplx> y, const SimulationConfig& config) {
    const long cp = config.effective_cp_length();
    const long n = config.scenario.length;
    if (static_cast<long>(y.size()) != cp + n) {
        throw Error(ErrorCode::LengthMismatch, "y",
                    "received block has " + std::to_string(y.size()) + " samples, expected N_CP + N = " +
                        std::to_string(cp + n));
    }
    return {y.begin() + cp, y.end()};
}

long detect_timing(std::span<const cplx> y_prime, std::span<const cplx> seq, const HypothesisWindow& window) {
    if (window.size > static_cast<long>(seq.size())) {
        throw Error(ErrorCode::WindowTooLarge, "W", "window larger than the sequence");
    }
    long best = 0;
    double best_metric = -1.0;
    for (long k = 0; k < window.size; ++k) {
        const double m = circular_correlate(y_prime, seq, k).metric;
        if (m > best_metric) {
            best_metric = m;
            best = k;
        }
    }
    return best;
}

EmpiricalDistribution run_experiment(const SimulationConfig& config) {
    config.validate();
    const auto seq = config.reference();
    const long w = config.scenario.window;
    const HypothesisWindow window(w);

    // Trials are split into contiguous blocks; each block owns an integer
    // histogram indexed by dk + (W - 1).
    const std::size_t blocks = std::min<std::size_t>(static_cast<std::size_t>(config.trials), 64);
    std::vector<std::vector<long>> histograms(blocks, std::vector<long>(static_cast<std::size_t>(2 * w - 1), 0));
    parallel_for(blocks, [&](std::size_t b) {
        const long begin = static_cast<long>(b) * config.trials / static_cast<long>(blocks);
        const long end = static_cast<long>(b + 1) * config.trials / static_cast<long>(blocks);
        auto& hist = histograms[b];
        for (long t = begin; t < end; ++t) {
            TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
            const long kappa = config.kappa_mode == KappaMode::Uniform ? rng.uniform_int(w) : config.fixed_kappa;
            const auto y = synthesize_received(seq, kappa, config.scenario.delta_lambda, config, rng);
            const auto y_prime = truncate_cp(y, config);
            const long detected = detect_timing(y_prime, seq, window);
            ++hist[static_cast<std::size_t>(detected - kappa + w - 1)];
        }
    });

    EmpiricalDistribution out;
    out.trials = config.trials;
    for (long i = 0; i < 2 * w - 1; ++i) {
        long c = 0;
        for (const auto& h : histograms) c += h[static_cast<std::size_t>(i)];
        if (c > 0) out.counts[i - (w - 1)] = c;
    }
    const double p = out.frequency(0);
    out.error_rate = 1.0 - p;
    out.std_error = std::sqrt(out.error_rate * (1.0 - out.error_rate) / static_cast<double>(out.trials));
    return out;
}

} // namespace zcsync

#pragma once

#include "zcsync/detection.hpp"
#include "zcsync/sequence.hpp"
#include "zcsync/timing_spectrum.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace zcsync {

enum class KappaMode { Uniform, Fixed };
enum class SequenceKind { Zc, Pn };

struct SimulationConfig {
    DetectionScenario scenario;  // eta may be zero here (noise only)
    long cp_length = -1;         // negative selects the default W - 1
    long trials = 10000;
    std::uint64_t seed = 1;
    KappaMode kappa_mode = KappaMode::Uniform;
    long fixed_kappa = 0;
    SequenceKind sequence = SequenceKind::Zc;
    int pn_degree = kDefaultPnDegree;
    std::vector<int> pn_taps = kDefaultPnTaps;
    bool random_phase = false; // uniform channel phase per trial
    bool noiseless = false;

    long effective_cp_length() const { return cp_length < 0 ? scenario.window - 1 : cp_length; }
    void validate() const;
    // Reference sequence the receiver correlates against.
    std::vector<cplx> reference() const;
};

// Per-trial random stream: mt19937_64 seeded with a SplitMix64 hash of
// (seed, trial), so results do not depend on how trials are scheduled.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next() { return engine_(); }
    double uniform();               // (0, 1]
    long uniform_int(long bound);   // [0, bound)
    cplx complex_gaussian();        // CN(0, 1) by Box-Muller

private:
    std::mt19937_64 engine_;
};

struct EmpiricalDistribution {
    std::map<long, long> counts; // detected shift offset -> trials
    long trials = 0;
    double error_rate = 0.0;
    double std_error = 0.0;

    long count(long dk) const;
    double frequency(long dk) const;
};

// Received block of N_CP + N samples: CP-prefixed sequence delayed by kappa
// (periodic in N_CP + N), rotated by the frequency offset, scaled by
// h = sqrt(eta) and corrupted by CN(0, 1) noise.
std::vector<cplx> synthesize_received(std::span<const cplx> seq, long kappa, double delta_lambda,
                                      const SimulationConfig& config, TrialRng& rng);

// Drops the first N_CP samples.
std::vector<cplx> truncate_cp(std::span<const cplx> y, const SimulationConfig& config);

// argmax over kappa' in [0, W) of the correlator metric; ties go to the smallest index.
long detect_timing(std::span<const cplx> y_prime, std::span<const cplx> seq, const HypothesisWindow& window);

EmpiricalDistribution run_experiment(const SimulationConfig& config);

} // namespace zcsync

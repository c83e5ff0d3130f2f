#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace zcsync {

// Timing hypothesis window H = {0, ..., W-1}.
struct HypothesisWindow {
    long size;

    explicit HypothesisWindow(long w);
};

// Shift offsets {-kappa, ..., (W-1)-kappa} reachable when the true arrival is kappa.
struct ShiftOffsetSet {
    long kappa;
    long first; // -kappa
    long last;  // W-1-kappa

    bool contains(long dk) const noexcept { return dk >= first && dk <= last; }
    long size() const noexcept { return last - first + 1; }
    std::vector<long> offsets() const;
};

// Histogram of critical frequency offsets averaged over arrival times.
// Counts are exact integers; magnitude(k) = count(k) / W.
class TimingSpectrum {
public:
    TimingSpectrum(long root, long length, long window, std::map<long, long> counts);

    long root() const noexcept { return root_; }
    long length() const noexcept { return length_; }
    long window() const noexcept { return window_; }
    const std::map<long, long>& counts() const noexcept { return counts_; }

    long count(long offset) const;
    double magnitude(long offset) const;
    double total_mass() const;
    // Sum of magnitudes over keys with |key| < threshold.
    double mass_below(double threshold) const;
    std::optional<long> min_abs_offset() const;
    bool empty() const noexcept { return counts_.empty(); }

private:
    long root_;
    long length_;
    long window_;
    std::map<long, long> counts_;
};

enum class FloorRegime { AboveHalf, AtHalf };

// Representative of mu*dk modulo N closest to zero (the critical frequency offset).
long critical_offset(long root, long length, long delta_kappa);

ShiftOffsetSet shift_offsets(long kappa, const HypothesisWindow& window);

TimingSpectrum timing_spectrum(long root, long length, const HypothesisWindow& window);

double error_floor(const TimingSpectrum& spectrum, FloorRegime regime);

// Floor predicted for a concrete offset: 0 below |dl| = 0.5, the half floor at
// exactly 0.5, the full floor up to |dl| = 1. Beyond 1 the prediction is not
// defined and nullopt is returned.
std::optional<double> predicted_floor(const TimingSpectrum& spectrum, double delta_lambda);

inline constexpr double kInfiniteSnr = std::numeric_limits<double>::infinity();

// Mean metric at dk relative to the mean at dk = 0. Pass kInfiniteSnr for the
// high-SNR limit. Returns NaN when the limit form is 0/0.
double relative_mean_metric(long root, long length, long delta_kappa, double delta_lambda, double eta);

} // namespace zcsync

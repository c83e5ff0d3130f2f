#include "zcsync/timing_spectrum.hpp"

#include "zcsync/correlation.hpp"
#include "zcsync/error.hpp"
#include "zcsync/sequence.hpp"

#include <cmath>
#include <string>

namespace zcsync {

HypothesisWindow::HypothesisWindow(long w) : size(w) {
    if (w < 1) throw Error(ErrorCode::InvalidScenario, "W", "window size must be >= 1, got " + std::to_string(w));
}

std::vector<long> ShiftOffsetSet::offsets() const {
    std::vector<long> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (long dk = first; dk <= last; ++dk) out.push_back(dk);
    return out;
}

TimingSpectrum::TimingSpectrum(long root, long length, long window, std::map<long, long> counts)
    : root_(root), length_(length), window_(window), counts_(std::move(counts)) {}

long TimingSpectrum::count(long offset) const {
    auto it = counts_.find(offset);
    return it == counts_.end() ? 0 : it->second;
}

double TimingSpectrum::magnitude(long offset) const {
    return static_cast<double>(count(offset)) / static_cast<double>(window_);
}

double TimingSpectrum::total_mass() const {
    long total = 0;
    for (const auto& [k, c] : counts_) total += c;
    return static_cast<double>(total) / static_cast<double>(window_);
}

double TimingSpectrum::mass_below(double threshold) const {
    long total = 0;
    for (const auto& [k, c] : counts_) {
        if (static_cast<double>(std::labs(k)) < threshold) total += c;
    }
    return static_cast<double>(total) / static_cast<double>(window_);
}

std::optional<long> TimingSpectrum::min_abs_offset() const {
    std::optional<long> best;
    for (const auto& [k, c] : counts_) {
        const long a = std::labs(k);
        if (!best || a < *best) best = a;
    }
    return best;
}

long critical_offset(long root, long length, long delta_kappa) {
    if (delta_kappa == 0) {
        throw Error(ErrorCode::ZeroShift, "delta_kappa", "shift offset 0 has no critical frequency offset");
    }
    long r = ModIndex{length}(static_cast<long>((static_cast<long long>(root) * delta_kappa) % length));
    // r in [0, N); candidates r and r - N. Ties (even N only) go to the positive one.
    const long neg = r - length;
    return (r <= -neg) ? r : neg;
}

ShiftOffsetSet shift_offsets(long kappa, const HypothesisWindow& window) {
    if (kappa < 0 || kappa >= window.size) {
        throw Error(ErrorCode::KappaOutsideWindow, "kappa",
                    "kappa " + std::to_string(kappa) + " outside [0, " + std::to_string(window.size - 1) + "]");
    }
    return {kappa, -kappa, window.size - 1 - kappa};
}

TimingSpectrum timing_spectrum(long root, long length, const HypothesisWindow& window) {
    if (window.size >= length) {
        throw Error(ErrorCode::WindowTooLarge, "W",
                    "window size " + std::to_string(window.size) + " must be smaller than N = " +
                        std::to_string(length));
    }
    ZcSequence(length, root); // validates (N, mu)
    // Offset dk is reachable for W - |dk| arrival times, so the histogram
    // over kappa collapses to a weighted count per shift offset.
    std::map<long, long> counts;
    for (long dk = -(window.size - 1); dk <= window.size - 1; ++dk) {
        if (dk == 0) continue;
        counts[critical_offset(root, length, dk)] += window.size - std::labs(dk);
    }
    return TimingSpectrum(root, length, window.size, std::move(counts));
}

double error_floor(const TimingSpectrum& spectrum, FloorRegime regime) {
    const double full = spectrum.magnitude(1);
    return regime == FloorRegime::AboveHalf ? full : 0.5 * full;
}

std::optional<double> predicted_floor(const TimingSpectrum& spectrum, double delta_lambda) {
    const double a = std::fabs(delta_lambda);
    if (a > 1.0) return std::nullopt;
    if (a < 0.5) return 0.0;
    if (a == 0.5) return error_floor(spectrum, FloorRegime::AtHalf);
    // dl > 0.5 exposes the +1 component, dl < -0.5 the -1 component.
    const double full = spectrum.magnitude(delta_lambda > 0 ? 1 : -1);
    return full;
}

double relative_mean_metric(long root, long length, long delta_kappa, double delta_lambda, double eta) {
    if (!(eta > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "eta", "SNR must be positive");
    }
    if (delta_kappa % length == 0) return 1.0;
    const double num = autocorr_mag_sq_closed(root, length, delta_kappa, delta_lambda);
    const double den = autocorr_mag_sq_closed(root, length, 0, delta_lambda);
    if (std::isinf(eta)) {
        if (den == 0.0) return num == 0.0 ? std::nan("") : std::numeric_limits<double>::infinity();
        return num / den;
    }
    const double n = static_cast<double>(length);
    return (n * num + 1.0 / eta) / (n * den + 1.0 / eta);
}

} // namespace zcsync

#pragma once

#include "zcsync/timing_spectrum.hpp"

#include <vector>

namespace zcsync {

struct RootReport {
    long root;
    // Smallest |critical offset| over the window's nonzero shift offsets; N
    // when the window (W = 1) has no nonzero shift offset.
    long min_abs_critical_offset;
    double floor_above_half;
    TimingSpectrum spectrum;

    double spectrum_mass_below(double threshold) const { return spectrum.mass_below(threshold); }
};

RootReport assess_root(long root, long length, const HypothesisWindow& window);

// All roots in [1, N-1] coprime to N.
std::vector<long> coprime_roots(long length);

inline constexpr double kDefaultFreqBound = 1.0;

// Orders candidates by descending min |critical offset|, then ascending
// spectrum mass below ceil(freq_bound) + 1, then ascending root.
std::vector<RootReport> rank_roots(long length, const HypothesisWindow& window, const std::vector<long>& candidates,
                                   double freq_bound = kDefaultFreqBound);

} // namespace zcsync

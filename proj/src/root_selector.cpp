#include "zcsync/root_selector.hpp"

#include "zcsync/error.hpp"
#include "zcsync/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zcsync {

RootReport assess_root(long root, long length, const HypothesisWindow& window) {
    auto spectrum = timing_spectrum(root, length, window);
    const long min_offset = spectrum.min_abs_offset().value_or(length);
    const double floor = error_floor(spectrum, FloorRegime::AboveHalf);
    return {root, min_offset, floor, std::move(spectrum)};
}

std::vector<long> coprime_roots(long length) {
    std::vector<long> roots;
    for (long mu = 1; mu < length; ++mu) {
        if (gcd(mu, length) == 1) roots.push_back(mu);
    }
    return roots;
}

std::vector<RootReport> rank_roots(long length, const HypothesisWindow& window, const std::vector<long>& candidates,
                                   double freq_bound) {
    if (candidates.empty()) {
        throw Error(ErrorCode::EmptyCandidates, "candidates", "candidate root list is empty");
    }
    if (!(freq_bound >= 0.0) || !std::isfinite(freq_bound)) {
        throw Error(ErrorCode::InvalidConfig, "freq_bound", "frequency bound must be finite and nonnegative");
    }
    std::vector<long> roots = candidates;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    std::vector<RootReport> reports;
    reports.reserve(roots.size());
    for (long mu : roots) reports.push_back(assess_root(mu, length, window));

    const double cut = std::ceil(freq_bound) + 1.0;
    std::sort(reports.begin(), reports.end(), [cut](const RootReport& x, const RootReport& y) {
        if (x.min_abs_critical_offset != y.min_abs_critical_offset) {
            return x.min_abs_critical_offset > y.min_abs_critical_offset;
        }
        const double mx = x.spectrum_mass_below(cut);
        const double my = y.spectrum_mass_below(cut);
        if (mx != my) return mx < my;
        return x.root < y.root;
    });
    return reports;
}

} // namespace zcsync

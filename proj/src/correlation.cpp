#include "zcsync/correlation.hpp"

#include "zcsync/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zcsync {

CorrelatorOutput circular_correlate(std::span<const cplx> received, std::span<const cplx> reference,
                                    long kappa_prime) {
    if (received.size() != reference.size() || received.empty()) {
        throw Error(ErrorCode::LengthMismatch, "received",
                    "received length " + std::to_string(received.size()) + " does not match reference length " +
                        std::to_string(reference.size()));
    }
    const long n = static_cast<long>(received.size());
    const long start = ModIndex{n}(kappa_prime);
    cplx acc{0.0, 0.0};
    // Split the loop at the wrap point instead of reducing every index.
    const std::size_t first = static_cast<std::size_t>(n - start);
    for (std::size_t i = 0; i < first; ++i) acc += received[i + static_cast<std::size_t>(start)] * std::conj(reference[i]);
    for (std::size_t i = first; i < received.size(); ++i) acc += received[i - first] * std::conj(reference[i]);
    acc /= static_cast<double>(n);
    return {kappa_prime, acc, std::norm(acc)};
}

cplx autocorr_offset(const ZcSequence& seq, long delta_kappa, double delta_lambda) {
    const long n = seq.length();
    const auto s = seq.samples();
    const ModIndex mod{n};
    cplx acc{0.0, 0.0};
    for (long i = 0; i < n; ++i) {
        // dl*i/N reduced modulo 1 keeps the rotation angle small.
        const double turns = std::fmod(delta_lambda * static_cast<double>(i), static_cast<double>(n)) /
                             static_cast<double>(n);
        const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * turns);
        acc += s[static_cast<std::size_t>(mod(i + delta_kappa))] * std::conj(s[static_cast<std::size_t>(i)]) * rot;
    }
    return acc / static_cast<double>(n);
}

namespace {

// sin(pi*x) with the argument folded into [-1/2, 1/2] first, so integer x gives exactly zero.
double sin_pi(double x) {
    double r = std::fmod(x, 2.0); // (-2, 2)
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;       // [-1, 1]
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

} // namespace

double dirichlet_sinc(double x, long length) {
    const double nd = static_cast<double>(length);
    const double den_arg = std::fmod(x, 2.0 * nd); // sin(pi*x/N) has period 2N in x
    if (den_arg == 0.0) return 1.0;
    if (std::fabs(den_arg) == nd) {
        // Limit at x = N (mod 2N): (-1)^(N+1) for the numerator's sign flip.
        return (length % 2 == 1) ? 1.0 : -1.0;
    }
    const double num = sin_pi(x);
    const double den = nd * std::sin(std::numbers::pi * den_arg / nd);
    return num / den;
}

double autocorr_mag_sq_closed(long root, long length, long delta_kappa, double delta_lambda) {
    // mu*dk is formed in integers and reduced mod 2N so the subtraction below
    // stays exact for the fractional part of dl.
    const long long two_n = 2LL * length;
    long long shift = (static_cast<long long>(root) * delta_kappa) % two_n;
    const double s = dirichlet_sinc(delta_lambda - static_cast<double>(shift), length);
    return s * s;
}

} // namespace zcsync

#pragma once

#include "zcsync/sequence.hpp"

#include <span>

namespace zcsync {

struct CorrelatorOutput {
    long kappa_prime;
    cplx value;
    double metric; // |value|^2
};

// value = (1/N) * sum_n received[(n + kappa_prime) mod N] * conj(reference[n])
CorrelatorOutput circular_correlate(std::span<const cplx> received, std::span<const cplx> reference,
                                    long kappa_prime);

// Brute-force offset autocorrelation
//   (1/N) * sum_n seq[n + dk] * conj(seq[n]) * exp(i*2*pi*dl*n/N).
cplx autocorr_offset(const ZcSequence& seq, long delta_kappa, double delta_lambda);

// Dirichlet kernel sin(pi*x) / (N*sin(pi*x/N)), with the removable
// singularities at multiples of N replaced by their limit (+-1).
double dirichlet_sinc(double x, long length);

// |sinc(dl - mu*dk)|^2, the closed form of |autocorr_offset|^2.
double autocorr_mag_sq_closed(long root, long length, long delta_kappa, double delta_lambda);

} // namespace zcsync

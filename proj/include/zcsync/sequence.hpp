#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace zcsync {

using cplx = std::complex<double>;

// Reduces any (possibly negative) index into [0, period).
struct ModIndex {
    long period;

    constexpr long operator()(long i) const noexcept {
        long r = i % period;
        return r < 0 ? r + period : r;
    }
};

long gcd(long a, long b) noexcept;

// x_mu(n) = exp(-i*pi*mu*n*(n+1)/N), N odd, gcd(mu, N) = 1.
class ZcSequence {
public:
    ZcSequence(long length, long root);

    long length() const noexcept { return length_; }
    long root() const noexcept { return root_; }
    std::span<const cplx> samples() const noexcept { return samples_; }
    const cplx& operator[](long n) const { return samples_[ModIndex{length_}(n)]; }

private:
    long length_;
    long root_;
    std::vector<cplx> samples_;
};

// Maximal-length LFSR output truncated to `length` chips, mapped 0 -> +1, 1 -> -1.
class PnSequence {
public:
    PnSequence(int degree, std::vector<int> taps, long length);

    int degree() const noexcept { return degree_; }
    const std::vector<int>& taps() const noexcept { return taps_; }
    long length() const noexcept { return static_cast<long>(symbols_.size()); }
    std::uint64_t period() const noexcept { return (std::uint64_t{1} << degree_) - 1; }
    std::span<const cplx> samples() const noexcept { return symbols_; }

private:
    int degree_;
    std::vector<int> taps_;
    std::vector<cplx> symbols_;
};

inline constexpr int kDefaultPnDegree = 25;
inline const std::vector<int> kDefaultPnTaps{25, 3};

ZcSequence zc_generate(long length, long root);

// Fibonacci LFSR over GF(2) with feedback from the listed stages (1-based,
// the largest tap must equal `degree`), seeded with the all-ones state.
// For degree <= 16 the taps are checked to give a maximal period.
PnSequence pn_generate(int degree, const std::vector<int>& taps, long length);

// Raw LFSR bit stream; exposed for the m-sequence property checks.
std::vector<std::uint8_t> lfsr_bits(int degree, const std::vector<int>& taps, std::uint64_t count);

// output[n] = input[(n + k) mod N]
std::vector<cplx> cyclic_shift(std::span<const cplx> seq, long k);

} // namespace zcsync

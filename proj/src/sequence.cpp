#include "zcsync/sequence.hpp"

#include "zcsync/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace zcsync {

long gcd(long a, long b) noexcept {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

constexpr long kMaxLength = 1L << 30;

void validate_zc(long length, long root) {
    if (length < 3 || length % 2 == 0 || length > kMaxLength) {
        throw Error(ErrorCode::InvalidLength, "N",
                    "N must be odd and in [3, 2^30], got " + std::to_string(length));
    }
    if (root < 1 || root > length - 1) {
        throw Error(ErrorCode::InvalidRoot, "mu",
                    "mu must lie in [1, N-1], got " + std::to_string(root));
    }
    if (gcd(root, length) != 1) {
        throw Error(ErrorCode::InvalidRoot, "mu",
                    "mu must be coprime to N, got gcd(" + std::to_string(root) + ", " +
                        std::to_string(length) + ") != 1");
    }
}

} // namespace

ZcSequence::ZcSequence(long length, long root) : length_(length), root_(root) {
    validate_zc(length, root);
    samples_.resize(static_cast<std::size_t>(length));
    // The phase pi*mu*n(n+1)/N is periodic in mu*n(n+1) modulo 2N; reducing
    // the integer first keeps the angle exact for large n.
    const long long two_n = 2LL * length;
    for (long n = 0; n < length; ++n) {
        long long k = (static_cast<long long>(n) * (n + 1)) % two_n;
        k = (k * root) % two_n;
        if (k > length) k -= two_n;
        const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(length);
        samples_[static_cast<std::size_t>(n)] = cplx(std::cos(angle), -std::sin(angle));
    }
}

ZcSequence zc_generate(long length, long root) { return ZcSequence(length, root); }

namespace {

std::uint64_t tap_mask(int degree, const std::vector<int>& taps) {
    if (degree < 2 || degree > 63) {
        throw Error(ErrorCode::InvalidTaps, "degree",
                    "LFSR degree must lie in [2, 63], got " + std::to_string(degree));
    }
    if (taps.empty()) {
        throw Error(ErrorCode::InvalidTaps, "taps", "LFSR tap set is empty");
    }
    std::uint64_t mask = 0;
    for (int t : taps) {
        if (t < 1 || t > degree) {
            throw Error(ErrorCode::InvalidTaps, "taps",
                        "tap " + std::to_string(t) + " outside [1, " + std::to_string(degree) + "]");
        }
        mask |= std::uint64_t{1} << (t - 1);
    }
    if (*std::max_element(taps.begin(), taps.end()) != degree) {
        throw Error(ErrorCode::InvalidTaps, "taps", "the largest tap must equal the register degree");
    }
    return mask;
}

// Stage t of the register lives in bit t-1; output is stage `degree`.
struct Lfsr {
    std::uint64_t state;
    std::uint64_t taps;
    std::uint64_t mask;
    int degree;

    std::uint8_t step() noexcept {
        const auto out = static_cast<std::uint8_t>((state >> (degree - 1)) & 1U);
        const auto feedback = static_cast<std::uint64_t>(std::popcount(state & taps) & 1);
        state = ((state << 1) | feedback) & mask;
        return out;
    }
};

Lfsr make_lfsr(int degree, const std::vector<int>& taps) {
    const std::uint64_t mask = (std::uint64_t{1} << degree) - 1;
    return Lfsr{mask, tap_mask(degree, taps), mask, degree};
}

} // namespace

std::vector<std::uint8_t> lfsr_bits(int degree, const std::vector<int>& taps, std::uint64_t count) {
    Lfsr reg = make_lfsr(degree, taps);
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = reg.step();
    return bits;
}

PnSequence::PnSequence(int degree, std::vector<int> taps, long length)
    : degree_(degree), taps_(std::move(taps)) {
    Lfsr reg = make_lfsr(degree_, taps_);
    if (degree_ <= 16) {
        Lfsr probe = reg;
        const std::uint64_t start = probe.state;
        std::uint64_t cycle = 0;
        do {
            probe.step();
            ++cycle;
        } while (probe.state != start && cycle <= period());
        if (cycle != period()) {
            throw Error(ErrorCode::InvalidTaps, "taps",
                        "taps do not give a maximal-length sequence (cycle " + std::to_string(cycle) +
                            ", expected " + std::to_string(period()) + ")");
        }
    }
    if (length < 1 || static_cast<std::uint64_t>(length) > period()) {
        throw Error(ErrorCode::LengthExceedsPeriod, "length",
                    "PN length must lie in [1, 2^degree - 1], got " + std::to_string(length));
    }
    symbols_.resize(static_cast<std::size_t>(length));
    for (auto& s : symbols_) s = reg.step() ? cplx(-1.0, 0.0) : cplx(1.0, 0.0);
}

PnSequence pn_generate(int degree, const std::vector<int>& taps, long length) {
    return PnSequence(degree, taps, length);
}

std::vector<cplx> cyclic_shift(std::span<const cplx> seq, long k) {
    const long n = static_cast<long>(seq.size());
    std::vector<cplx> out(seq.size());
    if (n == 0) return out;
    const ModIndex mod{n};
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = seq[static_cast<std::size_t>(mod(i + k))];
    return out;
}

} // namespace zcsync

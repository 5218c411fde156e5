// Counter-based splittable random generator (Philox4x32-10).
//
// Streams keyed by (seed, stream id) are provably disjoint: the stream id
// occupies the upper half of the 128-bit counter, so two streams can never
// touch the same counter block. The integer sequence is identical on every
// platform; Gaussian draws use the Marsaglia polar method (sqrt/log only).
#ifndef MLC_RNG_HPP
#define MLC_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace mlc {

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0, 0, static_cast<std::uint32_t>(stream),
                   static_cast<std::uint32_t>(stream >> 32)} {
        refill();
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    int bit() { return static_cast<int>(next_u32() & 1u); }

    /// Standard normal via the polar method; second draw of each pair cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Circularly-symmetric complex Gaussian with the given total variance.
    std::complex<double> complex_normal(double total_variance) {
        const double s = std::sqrt(total_variance / 2.0);
        return {s * normal(), s * normal()};
    }

private:
    void refill() {
        std::array<std::uint32_t, 4> c = counter_;
        std::array<std::uint32_t, 2> k = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * c[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
            c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
                 static_cast<std::uint32_t>(p0)};
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
        block_ = c;
        pos_ = 0;
        if (++counter_[0] == 0) ++counter_[1];  // stream id in words 2,3 untouched
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mlc

#endif

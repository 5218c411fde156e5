// Complex AWGN channel with exact SNR bookkeeping and repetition combining.
#ifndef MLC_CHANNEL_HPP
#define MLC_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mlc/constellation.hpp"
#include "mlc/rng.hpp"

namespace mlc {

/// Noise is circularly-symmetric complex Gaussian with total variance
/// `noise_variance` (sigma^2/2 per real component).
struct ChannelParams {
    double noise_variance = 1.0;
    std::uint64_t seed = 0;
};

/// Repeat a symbol `factor` times at amplitude scale 1/sqrt(factor), so the
/// transmit energy per information symbol is preserved exactly.
struct RepetitionScheme {
    int factor = 1;
    double scale() const;
};

class AwgnChannel {
public:
    /// Workers pass distinct `stream` ids to get disjoint noise streams
    /// derived from the same seed.
    explicit AwgnChannel(const ChannelParams& params, std::uint64_t stream = 0);

    cplx transmit(cplx x);

    /// The repeated transmitter: x' = x/sqrt(M) sent in M slots with
    /// independent noise per slot.
    std::vector<cplx> transmit_repeated(cplx x, const RepetitionScheme& rep);
    void transmit_repeated(cplx x, const RepetitionScheme& rep, std::span<cplx> out);

    const ChannelParams& params() const { return params_; }

private:
    ChannelParams params_;
    CounterRng rng_;
};

/// Sum over repetition slots. For a repeated transmission the signal part
/// is sqrt(M)*x and the noise variance M*sigma^2, so the post-combining SNR
/// equals the unrepeated SNR. Throws std::invalid_argument on empty input.
cplx combine(std::span<const cplx> slots);

/// Linear SNR: amplitude^2 / noise_variance.
double snr_of(const LabeledConstellation& c, const ChannelParams& params);

double snr_to_db(double snr_linear);
double snr_from_db(double snr_db);

}  // namespace mlc

#endif

#include "mlc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mlc {

double RepetitionScheme::scale() const {
    if (factor < 1) throw std::invalid_argument("repetition factor must be >= 1");
    return 1.0 / std::sqrt(static_cast<double>(factor));
}

AwgnChannel::AwgnChannel(const ChannelParams& params, std::uint64_t stream)
    : params_(params), rng_(params.seed, stream) {
    if (!(params_.noise_variance > 0.0))
        throw std::invalid_argument("noise variance must be positive");
}

cplx AwgnChannel::transmit(cplx x) {
    return x + rng_.complex_normal(params_.noise_variance);
}

std::vector<cplx> AwgnChannel::transmit_repeated(cplx x, const RepetitionScheme& rep) {
    std::vector<cplx> out(static_cast<std::size_t>(rep.factor));
    transmit_repeated(x, rep, out);
    return out;
}

void AwgnChannel::transmit_repeated(cplx x, const RepetitionScheme& rep,
                                    std::span<cplx> out) {
    if (out.size() != static_cast<std::size_t>(rep.factor))
        throw std::invalid_argument("transmit_repeated: output span size != factor");
    const cplx scaled = x * rep.scale();
    for (auto& slot : out) slot = scaled + rng_.complex_normal(params_.noise_variance);
}

cplx combine(std::span<const cplx> slots) {
    if (slots.empty()) throw std::invalid_argument("combine: empty slot vector");
    cplx sum{0.0, 0.0};
    for (const cplx& s : slots) sum += s;
    return sum;
}

double snr_of(const LabeledConstellation& c, const ChannelParams& params) {
    return c.amplitude() * c.amplitude() / params.noise_variance;
}

double snr_to_db(double snr_linear) { return 10.0 * std::log10(snr_linear); }

double snr_from_db(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

}  // namespace mlc

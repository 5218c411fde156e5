// Exact per-level LLRs for set-partitioned QPSK, log-sum-exp stabilized.
#ifndef MLC_DEMOD_HPP
#define MLC_DEMOD_HPP

#include <span>
#include <vector>

#include "mlc/channel.hpp"

namespace mlc {

struct LlrPair {
    double low = 0.0;
    double high = 0.0;
};

/// Low-level LLR ln[ P(y | v_low=0) / P(y | v_low=1) ], marginalized over
/// the high bit. Positive favors v_low = 0. Finite for any finite input;
/// no overflow for |y|/sigma up to 1e6 and beyond.
double llr_low(cplx y, double amplitude, double noise_variance);

/// High-level LLR with a hard branch on the low-level LLR's sign: the real
/// pair when llr_low > 0, the imaginary pair otherwise (ties take the
/// imaginary branch). Closed form 4*A*Re(y)/sigma^2 resp. 4*A*Im(y)/sigma^2.
double llr_high(cplx y, double llr_low_value, double amplitude, double noise_variance);

LlrPair demap(cplx y, double amplitude, double noise_variance);

/// Sum each group of M repetition slots, then demap the combined sample
/// with its own statistics (amplitude sqrt(M)*A, noise variance M*sigma^2),
/// which is the original SNR: the LLRs are identical in law to unrepeated
/// transmission at amplitude A. Throws std::invalid_argument when the input
/// length is not a multiple of M.
std::vector<LlrPair> demap_frame(std::span<const cplx> ys, const RepetitionScheme& rep,
                                 double amplitude, double noise_variance);

}  // namespace mlc

#endif

// Repetition achievable-rate line and comparison against the MI curve.
//
// Repeating a symbol M times at 1/M-th the rate moves the operating point
// to (gamma_1/M, R_1/M): the achievable-rate points lie on the straight
// line through the origin anchored at (gamma_1, R_1). Where the MI curve is
// convex, that line runs above the curve, and the gap is reported as an SNR
// gain by inverse-interpolating the curve.
#ifndef MLC_RATE_HPP
#define MLC_RATE_HPP

#include <optional>
#include <span>
#include <vector>

#include "mlc/mi.hpp"

namespace mlc {

class RateLine {
public:
    /// Direct anchor, e.g. a simulated LDPC operating point (gamma_hat, R).
    RateLine(double anchor_snr, double anchor_rate);

    double anchor_snr() const { return anchor_snr_; }
    double anchor_rate() const { return anchor_rate_; }
    double slope() const { return anchor_rate_ / anchor_snr_; }

    /// rate_at(anchor_snr) == anchor_rate exactly.
    double rate_at(double snr) const { return anchor_rate_ * (snr / anchor_snr_); }

private:
    double anchor_snr_;
    double anchor_rate_;
};

struct GainPoint {
    int repetition = 1;
    double snr = 0.0;                 // anchor_snr / M, linear
    double snr_db = 0.0;
    double achievable_rate = 0.0;     // anchor_rate / M, closed form
    double mi_at_snr = 0.0;           // curve value at snr
    std::optional<double> gain_db;    // absent when the rate is below the curve's range
};

struct SnrInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Anchor the line on the curve: R_1 = curve(gamma_1) by monotone-cubic
/// interpolation. Throws std::domain_error when gamma_1 is outside the
/// sampled range.
RateLine line_from_mi(double anchor_snr, const MiCurve& curve);

/// One point per repetition factor. gain_db compares the SNR at which the
/// curve reaches the achievable rate against the operating SNR; exactly 0
/// for M = 1 by definition of the anchor.
std::vector<GainPoint> ar_points(const RateLine& line, std::span<const int> repetitions,
                                 const MiCurve& curve);

/// Maximal sub-intervals of the curve's range where the line exceeds the
/// curve by more than `tolerance`, with endpoints refined by bisection.
std::vector<SnrInterval> crossover(const RateLine& line, const MiCurve& curve,
                                   double tolerance = 1e-9);

}  // namespace mlc

#endif

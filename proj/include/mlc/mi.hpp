// Per-level mutual information of set-partitioned QPSK over complex AWGN.
//
// Two independent backends compute the low-level MI: deterministic 2-D
// Gauss-Hermite quadrature of the conditional-density integral, and a
// Monte-Carlo estimate of the equivalent four-term expectation over the
// normalized noise. Agreement between them is the primary numerical check
// on both. All values are in bits (log base 2).
//
// Conventions: noise is circularly-symmetric complex with total variance
// sigma^2 and density (1/(pi sigma^2)) exp(-|y-q|^2/sigma^2); linear SNR is
// gamma = A^2/sigma^2. Public single-argument entry points evaluate at
// sigma^2 = 1, A = sqrt(gamma).
#ifndef MLC_MI_HPP
#define MLC_MI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mlc/constellation.hpp"

namespace mlc {

enum class MiBackend { Quadrature, MonteCarlo };
enum class MiLevel { Low, High, Total };

struct MiPoint {
    double snr = 0.0;       // linear
    double value = 0.0;     // bits per channel use
    MiBackend backend = MiBackend::Quadrature;
    double std_error = 0.0; // 0 for quadrature
};

/// Sampled MI as a function of linear SNR, strictly increasing in snr.
struct MiCurve {
    MiLevel level = MiLevel::Low;
    std::vector<MiPoint> points;

    std::vector<double> snrs() const;
    std::vector<double> values() const;
};

/// Tensor-product Gauss-Hermite grid. Evaluation starts at `min_nodes` per
/// axis and doubles until successive values differ by less than `tol`
/// (or `max_nodes` is reached; the integrand is an entire Gaussian mixture,
/// so 128 nodes already sit far below every tolerance used here).
struct QuadratureSpec {
    int min_nodes = 64;
    int max_nodes = 256;
    double tol = 1e-5;
};

struct ConvexityReport {
    double lo = 0.0;
    double hi = 0.0;
    bool is_convex = false;
    double max_chord_violation = 0.0;  // positive = sample above the chord
};

/// Mixture density p(y | subset) = (1/|subset|) sum_q gaussian(y; q, sigma^2).
/// Strictly positive for finite y.
double conditional_density(cplx y, const LevelSubset& subset,
                           const LabeledConstellation& c, double noise_variance);

/// I(V_low; Y) by deterministic quadrature. Throws std::runtime_error with
/// diagnostics if an intermediate goes non-finite.
MiPoint mi_low_quadrature(double snr, const QuadratureSpec& spec = {});

/// I(V_low; Y) as the Monte-Carlo expectation over unit-variance complex
/// noise, with standard error. Requires samples >= 10^4.
MiPoint mi_low_expectation(double snr, std::size_t samples, std::uint64_t seed);

/// I(V_high; Y | V_low): average over the low bit of the binary MI between
/// the two points of each conditioned subset, by quadrature.
MiPoint mi_high(double snr, const QuadratureSpec& spec = {});

/// Full 4-ary symmetric-input MI of the QPSK channel, in [0, 2] bits.
MiPoint mi_total_qpsk(double snr, const QuadratureSpec& spec = {});

/// Same computations for an arbitrary two-level constellation and explicit
/// noise variance (used by symmetry tests and non-unit-sigma callers).
double mi_low_of(const LabeledConstellation& c, double noise_variance,
                 const QuadratureSpec& spec = {});
double mi_high_of(const LabeledConstellation& c, double noise_variance,
                  const QuadratureSpec& spec = {});
double mi_total_of(const LabeledConstellation& c, double noise_variance,
                   const QuadratureSpec& spec = {});

/// Chord test on [lo, hi]: every interior sample must lie strictly below the
/// straight line through the curve's endpoint values. Reports the maximum
/// violation; the boolean applies the margin violation < -1e-6. Requires at
/// least 3 samples strictly inside (lo, hi).
ConvexityReport is_convex_on(const MiCurve& curve, double lo, double hi);

/// Low/high/total curves over an SNR grid (quadrature backend), or the
/// Monte-Carlo low-level curve. Grids must be strictly increasing.
MiCurve mi_curve_quadrature(MiLevel level, const std::vector<double>& snr_grid,
                            const QuadratureSpec& spec = {});
MiCurve mi_curve_expectation(const std::vector<double>& snr_grid,
                             std::size_t samples, std::uint64_t seed);

/// Gauss-Hermite nodes and weights for integral e^{-t^2} f(t) dt; cached.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace mlc

#endif

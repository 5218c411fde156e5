#include "mlc/demod.hpp"

#include <cmath>
#include <stdexcept>

namespace mlc {

namespace {

// ln(2 cosh x) without overflow.
double log_2cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a));
}

}  // namespace

double llr_low(cplx y, double amplitude, double noise_variance) {
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("llr_low: noise variance must be positive");
    // The common exponent -(|y|^2 + A^2)/sigma^2 cancels between the two
    // two-term sums, leaving ln(2cosh) of the matched-filter outputs.
    const double c = 2.0 * amplitude / noise_variance;
    return log_2cosh(c * y.real()) - log_2cosh(c * y.imag());
}

double llr_high(cplx y, double llr_low_value, double amplitude, double noise_variance) {
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("llr_high: noise variance must be positive");
    const double c = 4.0 * amplitude / noise_variance;
    return llr_low_value > 0.0 ? c * y.real() : c * y.imag();
}

LlrPair demap(cplx y, double amplitude, double noise_variance) {
    LlrPair p;
    p.low = llr_low(y, amplitude, noise_variance);
    p.high = llr_high(y, p.low, amplitude, noise_variance);
    return p;
}

std::vector<LlrPair> demap_frame(std::span<const cplx> ys, const RepetitionScheme& rep,
                                 double amplitude, double noise_variance) {
    const std::size_t m = static_cast<std::size_t>(rep.factor);
    if (m == 0 || ys.size() % m != 0)
        throw std::invalid_argument("demap_frame: input length not a multiple of M");
    const double amp_eff = std::sqrt(static_cast<double>(m)) * amplitude;
    const double var_eff = static_cast<double>(m) * noise_variance;
    std::vector<LlrPair> out;
    out.reserve(ys.size() / m);
    for (std::size_t i = 0; i < ys.size(); i += m)
        out.push_back(demap(combine(ys.subspan(i, m)), amp_eff, var_eff));
    return out;
}

}  // namespace mlc

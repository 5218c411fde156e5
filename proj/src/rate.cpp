#include "mlc/rate.hpp"

#include <cmath>
#include <stdexcept>

#include "mlc/channel.hpp"
#include "mlc/interp.hpp"

namespace mlc {

RateLine::RateLine(double anchor_snr, double anchor_rate)
    : anchor_snr_(anchor_snr), anchor_rate_(anchor_rate) {
    if (!(anchor_snr > 0.0)) throw std::invalid_argument("rate line: anchor snr must be > 0");
    if (!(anchor_rate > 0.0)) throw std::invalid_argument("rate line: anchor rate must be > 0");
}

RateLine line_from_mi(double anchor_snr, const MiCurve& curve) {
    if (curve.points.size() < 2) throw std::domain_error("line_from_mi: curve too small");
    const MonotoneCubic f(curve.snrs(), curve.values());
    if (anchor_snr < f.x_min() || anchor_snr > f.x_max())
        throw std::domain_error("line_from_mi: anchor snr outside the sampled range");
    return RateLine(anchor_snr, f(anchor_snr));
}

std::vector<GainPoint> ar_points(const RateLine& line, std::span<const int> repetitions,
                                 const MiCurve& curve) {
    const MonotoneCubic f(curve.snrs(), curve.values());
    std::vector<GainPoint> out;
    for (int rep : repetitions) {
        if (rep < 1) throw std::invalid_argument("ar_points: repetition factor must be >= 1");
        GainPoint g;
        g.repetition = rep;
        g.snr = line.anchor_snr() / rep;
        g.snr_db = snr_to_db(g.snr);
        g.achievable_rate = line.anchor_rate() / rep;
        g.mi_at_snr = f(g.snr);
        if (rep == 1) {
            g.gain_db = 0.0;  // the anchor point, by definition
        } else if (auto snr_star = f.invert(g.achievable_rate)) {
            g.gain_db = 10.0 * std::log10(*snr_star / g.snr);
        }
        out.push_back(g);
    }
    return out;
}

std::vector<SnrInterval> crossover(const RateLine& line, const MiCurve& curve,
                                   double tolerance) {
    if (!std::isfinite(tolerance)) return {};  // infinite tolerance: nothing exceeds it
    const MonotoneCubic f(curve.snrs(), curve.values());
    const auto xs = curve.snrs();

    auto excess = [&](double x) { return line.rate_at(x) - f(x) - tolerance; };
    auto refine = [&](double a, double b) {
        // sign change inside [a, b); bisect to the crossing
        for (int i = 0; i < 60 && b - a > 1e-12; ++i) {
            const double mid = 0.5 * (a + b);
            if ((excess(a) > 0.0) == (excess(mid) > 0.0))
                a = mid;
            else
                b = mid;
        }
        return 0.5 * (a + b);
    };

    std::vector<SnrInterval> out;
    bool inside = excess(xs.front()) > 0.0;
    double start = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const bool above = excess(xs[i]) > 0.0;
        if (above && !inside) {
            start = refine(xs[i - 1], xs[i]);
            inside = true;
        } else if (!above && inside) {
            out.push_back(SnrInterval{start, refine(xs[i - 1], xs[i])});
            inside = false;
        }
    }
    if (inside) out.push_back(SnrInterval{start, xs.back()});
    return out;
}

}  // namespace mlc

#include "mlc/mi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>

#include "mlc/rng.hpp"

namespace mlc {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double log_sum_exp(std::span<const double> e) {
    double m = e[0];
    for (double v : e) m = std::max(m, v);
    double s = 0.0;
    for (double v : e) s += std::exp(v - m);
    return m + std::log(s);
}

// Newton iteration on the orthonormal Hermite recurrence (physicists'
// convention): sum of weights is sqrt(pi). Stable well past 256 nodes.
void compute_gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double pim4 = 0.7511255444649425;  // pi^(-1/4)
    const int m = (n + 1) / 2;
    double z = 0.0, pp = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    // Odd n: center node comes out of the same loop with z -> 0.
}

// One transmitted hypothesis of a mixture-MI integral: conditioned on
// `center` being sent, the integrand is log2(sum over `all` / sum over own).
struct Hypothesis {
    cplx center;
    std::vector<cplx> all;
    std::vector<cplx> own;
    double weight;
};

double quad_integral(const std::vector<Hypothesis>& hyps, double noise_variance,
                     int nodes) {
    std::vector<double> t, wt;
    gauss_hermite(nodes, t, wt);
    const double sigma = std::sqrt(noise_variance);
    const double inv_var = 1.0 / noise_variance;

    double acc = 0.0;
    std::vector<double> e_all, e_own;
    for (const Hypothesis& h : hyps) {
        e_all.resize(h.all.size());
        e_own.resize(h.own.size());
        for (int i = 0; i < nodes; ++i) {
            const double re = h.center.real() + sigma * t[i];
            double row = 0.0;
            for (int j = 0; j < nodes; ++j) {
                const double im = h.center.imag() + sigma * t[j];
                for (std::size_t a = 0; a < h.all.size(); ++a) {
                    const double dr = re - h.all[a].real();
                    const double di = im - h.all[a].imag();
                    e_all[a] = -(dr * dr + di * di) * inv_var;
                }
                for (std::size_t a = 0; a < h.own.size(); ++a) {
                    const double dr = re - h.own[a].real();
                    const double di = im - h.own[a].imag();
                    e_own[a] = -(dr * dr + di * di) * inv_var;
                }
                row += wt[j] * (log_sum_exp(e_all) - log_sum_exp(e_own));
            }
            acc += h.weight * wt[i] * row;
        }
    }
    return acc / (std::numbers::pi * kLn2);  // bits
}

double quad_mi(double label_entropy, const std::vector<Hypothesis>& hyps,
               double noise_variance, const QuadratureSpec& spec, const char* what) {
    int n = spec.min_nodes;
    double value = label_entropy - quad_integral(hyps, noise_variance, n);
    while (n < spec.max_nodes) {
        n *= 2;
        const double next = label_entropy - quad_integral(hyps, noise_variance, n);
        const bool settled = std::abs(next - value) < spec.tol;
        value = next;
        if (settled) break;
    }
    if (!std::isfinite(value))
        throw std::runtime_error(std::string("mi quadrature produced non-finite value in ") +
                                 what + " at " + std::to_string(n) + " nodes");
    return value;
}

std::vector<Hypothesis> low_level_hypotheses(const LabeledConstellation& c) {
    std::vector<Hypothesis> hyps;
    const auto& pts = c.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Hypothesis h;
        h.center = pts[k];
        h.weight = 1.0 / static_cast<double>(pts.size());
        h.all.assign(pts.begin(), pts.end());
        for (int idx : c.low_subset(c.labels()[k].low).members) h.own.push_back(pts[idx]);
        hyps.push_back(std::move(h));
    }
    return hyps;
}

}  // namespace

void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
    static std::mutex mu;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<double> x, w;
        compute_gauss_hermite(n, x, w);
        it = cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first;
    }
    nodes = it->second.first;
    weights = it->second.second;
}

std::vector<double> MiCurve::snrs() const {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = points[i].snr;
    return out;
}

std::vector<double> MiCurve::values() const {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = points[i].value;
    return out;
}

double conditional_density(cplx y, const LevelSubset& subset,
                           const LabeledConstellation& c, double noise_variance) {
    if (subset.members.empty())
        throw std::invalid_argument("conditional_density: empty subset");
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("conditional_density: noise variance must be positive");
    std::vector<double> e(subset.members.size());
    for (std::size_t i = 0; i < subset.members.size(); ++i) {
        const cplx d = y - c.points()[static_cast<std::size_t>(subset.members[i])];
        e[i] = -std::norm(d) / noise_variance;
    }
    const double lse = log_sum_exp(e);
    return std::exp(lse) / (std::numbers::pi * noise_variance *
                            static_cast<double>(subset.members.size()));
}

double mi_low_of(const LabeledConstellation& c, double noise_variance,
                 const QuadratureSpec& spec) {
    return quad_mi(1.0, low_level_hypotheses(c), noise_variance, spec, "mi_low");
}

double mi_high_of(const LabeledConstellation& c, double noise_variance,
                  const QuadratureSpec& spec) {
    // Conditioned on the low bit the channel is binary between the two
    // points of that subset; average the two conditional MIs.
    std::vector<Hypothesis> hyps;
    for (int v_low : {0, 1}) {
        const auto sub = c.low_subset(v_low);
        std::vector<cplx> pts;
        for (int idx : sub.members) pts.push_back(c.points()[static_cast<std::size_t>(idx)]);
        for (const cplx& p : pts)
            hyps.push_back(Hypothesis{p, pts, {p}, 0.25});
    }
    return quad_mi(1.0, hyps, noise_variance, spec, "mi_high");
}

double mi_total_of(const LabeledConstellation& c, double noise_variance,
                   const QuadratureSpec& spec) {
    std::vector<Hypothesis> hyps;
    const auto& pts = c.points();
    const double h_label = std::log2(static_cast<double>(pts.size()));
    for (const cplx& p : pts)
        hyps.push_back(Hypothesis{p, {pts.begin(), pts.end()}, {p},
                                  1.0 / static_cast<double>(pts.size())});
    return quad_mi(h_label, hyps, noise_variance, spec, "mi_total");
}

namespace {

MiPoint quad_point(double snr, double value) {
    return MiPoint{snr, value, MiBackend::Quadrature, 0.0};
}

LabeledConstellation unit_sigma_qpsk(double snr) {
    // sigma^2 = 1, A = sqrt(gamma); gamma = 0 degenerates to a zero-radius
    // alphabet, handled by an epsilon amplitude (the MI limit is exactly 0
    // and the integrand is continuous in A).
    return qpsk(snr > 0.0 ? std::sqrt(snr) : 1e-12);
}

}  // namespace

MiPoint mi_low_quadrature(double snr, const QuadratureSpec& spec) {
    if (snr < 0.0) throw std::invalid_argument("mi_low_quadrature: snr must be >= 0");
    return quad_point(snr, mi_low_of(unit_sigma_qpsk(snr), 1.0, spec));
}

MiPoint mi_high(double snr, const QuadratureSpec& spec) {
    if (snr < 0.0) throw std::invalid_argument("mi_high: snr must be >= 0");
    return quad_point(snr, mi_high_of(unit_sigma_qpsk(snr), 1.0, spec));
}

MiPoint mi_total_qpsk(double snr, const QuadratureSpec& spec) {
    if (snr < 0.0) throw std::invalid_argument("mi_total_qpsk: snr must be >= 0");
    return quad_point(snr, mi_total_of(unit_sigma_qpsk(snr), 1.0, spec));
}

MiPoint mi_low_expectation(double snr, std::size_t samples, std::uint64_t seed) {
    if (snr < 0.0) throw std::invalid_argument("mi_low_expectation: snr must be >= 0");
    if (samples < 10000)
        throw std::invalid_argument("mi_low_expectation: need at least 1e4 samples");

    // Offsets (p - q)/sigma for each transmitted point, in noise units:
    // conditioning on q, the exponent of point p is -|W - (p - q)/sigma|^2.
    // Built from the unit geometry scaled by sqrt(snr), so snr = 0 yields
    // offsets of exactly zero and the estimator returns exactly 0.
    const LabeledConstellation c = qpsk(1.0);
    const double root_snr = std::sqrt(snr);
    const auto& pts = c.points();
    struct Term {
        std::array<cplx, 2> num;  // opposite-subset offsets
        std::array<cplx, 2> den;  // own-subset offsets
    };
    std::vector<Term> terms;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Term t;
        std::size_t ni = 0, di = 0;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const cplx off = (pts[p] - pts[k]) * root_snr;
            if (c.labels()[p].low == c.labels()[k].low)
                t.den[di++] = off;
            else
                t.num[ni++] = off;
        }
        terms.push_back(t);
    }

    CounterRng rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const cplx w = rng.complex_normal(1.0);
        double x = 1.0;
        for (const Term& t : terms) {
            const std::array<double, 2> en{-std::norm(w - t.num[0]), -std::norm(w - t.num[1])};
            const std::array<double, 2> ed{-std::norm(w - t.den[0]), -std::norm(w - t.den[1])};
            const double d = log_sum_exp(en) - log_sum_exp(ed);
            // log2(1 + e^d), stable on both sides
            const double term = d > 0.0 ? (d + std::log1p(std::exp(-d))) / kLn2
                                        : std::log1p(std::exp(d)) / kLn2;
            x -= 0.25 * term;
        }
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
    const double se = std::sqrt(var / static_cast<double>(samples));
    return MiPoint{snr, mean, MiBackend::MonteCarlo, se};
}

ConvexityReport is_convex_on(const MiCurve& curve, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("is_convex_on: need hi > lo");
    if (curve.points.size() < 2) throw std::invalid_argument("is_convex_on: curve too small");

    // Endpoint values come from the sampled curve (interpolated when lo/hi
    // fall between samples); violations are evaluated at interior samples.
    const auto xs = curve.snrs();
    const auto ys = curve.values();
    if (lo < xs.front() - 1e-12 || hi > xs.back() + 1e-12)
        throw std::domain_error("is_convex_on: interval outside the sampled range");

    auto interp = [&](double x) {
        const auto it = std::lower_bound(xs.begin(), xs.end(), x);
        if (it != xs.end() && *it == x) return ys[static_cast<std::size_t>(it - xs.begin())];
        const std::size_t j = static_cast<std::size_t>(it - xs.begin());
        const std::size_t i = j == 0 ? 0 : j - 1;
        const std::size_t k = std::min(i + 1, xs.size() - 1);
        if (k == i) return ys[i];
        const double t = (x - xs[i]) / (xs[k] - xs[i]);
        return ys[i] + t * (ys[k] - ys[i]);
    };

    const double f_lo = interp(lo);
    const double f_hi = interp(hi);
    const double slope = (f_hi - f_lo) / (hi - lo);

    int interior = 0;
    double max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= lo || xs[i] >= hi) continue;
        ++interior;
        const double chord = f_lo + slope * (xs[i] - lo);
        max_violation = std::max(max_violation, ys[i] - chord);
    }
    if (interior < 3)
        throw std::domain_error("is_convex_on: need at least 3 samples inside the interval");
    return ConvexityReport{lo, hi, max_violation < -1e-6, max_violation};
}

MiCurve mi_curve_quadrature(MiLevel level, const std::vector<double>& snr_grid,
                            const QuadratureSpec& spec) {
    MiCurve curve;
    curve.level = level;
    for (std::size_t i = 0; i < snr_grid.size(); ++i) {
        if (i > 0 && !(snr_grid[i] > snr_grid[i - 1]))
            throw std::invalid_argument("mi curve grid must be strictly increasing");
        switch (level) {
            case MiLevel::Low: curve.points.push_back(mi_low_quadrature(snr_grid[i], spec)); break;
            case MiLevel::High: curve.points.push_back(mi_high(snr_grid[i], spec)); break;
            case MiLevel::Total: curve.points.push_back(mi_total_qpsk(snr_grid[i], spec)); break;
        }
    }
    return curve;
}

MiCurve mi_curve_expectation(const std::vector<double>& snr_grid, std::size_t samples,
                             std::uint64_t seed) {
    MiCurve curve;
    curve.level = MiLevel::Low;
    for (std::size_t i = 0; i < snr_grid.size(); ++i) {
        if (i > 0 && !(snr_grid[i] > snr_grid[i - 1]))
            throw std::invalid_argument("mi curve grid must be strictly increasing");
        // Distinct stream per grid point keeps samples independent across points.
        curve.points.push_back(mi_low_expectation(snr_grid[i], samples, seed + i));
    }
    return curve;
}

}  // namespace mlc

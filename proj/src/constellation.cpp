#include "mlc/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace mlc {

LabeledConstellation::LabeledConstellation(std::vector<cplx> points,
                                           std::vector<BitLabel> labels,
                                           double amplitude)
    : points_(std::move(points)), labels_(std::move(labels)), amplitude_(amplitude) {
    if (points_.empty() || points_.size() != labels_.size())
        throw std::invalid_argument("constellation: points/labels size mismatch");
    if (!(amplitude_ > 0.0))
        throw std::invalid_argument("constellation: amplitude must be positive");
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j])
                throw std::invalid_argument("constellation: duplicate bit label");
}

cplx LabeledConstellation::map_bits(int v_high, int v_low) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i].high == v_high && labels_[i].low == v_low) return points_[i];
    throw std::invalid_argument("map_bits: no point with the requested label");
}

LevelSubset LabeledConstellation::low_subset(int v_low) const {
    LevelSubset s{Level::Low, {v_low}, {}};
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i].low == v_low) s.members.push_back(static_cast<int>(i));
    return s;
}

LevelSubset LabeledConstellation::high_subset(int v_low, int v_high) const {
    LevelSubset s{Level::High, {v_low, v_high}, {}};
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i].low == v_low && labels_[i].high == v_high)
            s.members.push_back(static_cast<int>(i));
    return s;
}

LabeledConstellation LabeledConstellation::rotated(double radians) const {
    const cplx r = std::polar(1.0, radians);
    std::vector<cplx> pts(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) pts[i] = points_[i] * r;
    return LabeledConstellation(std::move(pts), labels_, amplitude_);
}

LabeledConstellation qpsk(double amplitude) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("qpsk: amplitude must be positive");
    const double a = amplitude;
    // Low bit 0 -> the real antipodal pair, low bit 1 -> the imaginary pair;
    // the high bit picks the point within the pair.
    std::vector<cplx> points{{a, 0.0}, {0.0, a}, {-a, 0.0}, {0.0, -a}};
    std::vector<BitLabel> labels{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    return LabeledConstellation(std::move(points), std::move(labels), a);
}

}  // namespace mlc

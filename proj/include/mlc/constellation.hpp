// Set-partitioned constellations with per-level bit labels.
#ifndef MLC_CONSTELLATION_HPP
#define MLC_CONSTELLATION_HPP

#include <array>
#include <complex>
#include <vector>

namespace mlc {

using cplx = std::complex<double>;

enum class Level { Low, High };

/// A point's bit label, split by partition level.
struct BitLabel {
    int high = 0;
    int low = 0;
    friend bool operator==(const BitLabel&, const BitLabel&) = default;
};

/// One subset of the partition: the points reachable under fixed
/// conditioning bits at the given level.
struct LevelSubset {
    Level level;
    std::vector<int> conditioning;  // [] for Low, [v_low] for High
    std::vector<int> members;       // indices into the constellation
};

/// Complex signal points with per-level labels. Low-level subsets halve
/// the alphabet; high-level subsets (conditioned on the low bit) are
/// singletons. Immutable after construction, shareable across threads.
class LabeledConstellation {
public:
    LabeledConstellation(std::vector<cplx> points, std::vector<BitLabel> labels,
                         double amplitude);

    const std::vector<cplx>& points() const { return points_; }
    const std::vector<BitLabel>& labels() const { return labels_; }
    double amplitude() const { return amplitude_; }
    std::size_t size() const { return points_.size(); }

    /// The unique point labeled [v_high, v_low].
    cplx map_bits(int v_high, int v_low) const;

    /// Low-level subset for a given low bit, or the high-level singleton
    /// conditioned on (v_low, v_high).
    LevelSubset low_subset(int v_low) const;
    LevelSubset high_subset(int v_low, int v_high) const;

    /// Same geometry rotated by `radians` (labels carried along).
    LabeledConstellation rotated(double radians) const;

private:
    std::vector<cplx> points_;
    std::vector<BitLabel> labels_;
    double amplitude_;
};

/// The four-point alphabet {A, jA, -A, -jA} with the two-level partition:
/// low bit 0 -> the real (antipodal) pair, low bit 1 -> the imaginary pair.
/// Throws std::invalid_argument for non-positive amplitude.
LabeledConstellation qpsk(double amplitude);

}  // namespace mlc

#endif

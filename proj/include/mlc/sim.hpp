// End-to-end Monte-Carlo link simulation for the coded low level:
// info bits -> LDPC encode -> low-level mapping (optional symbol
// repetition) -> AWGN -> combine -> LLR -> BP decode -> BER,
// plus bisection SNR search for a target BER.
#ifndef MLC_SIM_HPP
#define MLC_SIM_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mlc/ldpc.hpp"

namespace mlc {

enum class SimMode { SymbolRepetition, LowRateCode };

struct SimConfig {
    std::string code_path;
    SimMode mode = SimMode::SymbolRepetition;
    int repetition = 1;              // ignored (forced 1) in LowRateCode mode
    std::vector<double> snr_db_grid; // sweep points; also the search bracket
    double target_ber = 1e-2;
    std::uint64_t max_frames = 100000;
    std::uint64_t min_bit_errors = 100;
    std::uint64_t seed = 1;
    int workers = 1;
    DecoderParams decoder;
    bool full_scale = false;         // permits long runs on big codes
};

/// One SNR point. snr fields are per channel use (per repetition slot).
struct BerRecord {
    double snr_db = 0.0;
    double snr_linear = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;                // bit_errors / (frames * k)
    double ber_std_error = 0.0;      // from the per-frame error-count variance;
                                     // decode failures are bursty, so the
                                     // independent-bit formula would be far
                                     // too optimistic
    double avg_iterations = 0.0;
    bool low_confidence = false;     // fewer errors than the stopping target
    std::uint64_t high_level_errors = 0;  // raw hard-decision errors, logged only
};

struct RepetitionComparison {
    int repetition = 1;
    BerRecord record;
    double delta_vs_base = 0.0;      // BER - BER(M=1)
    double combined_std_error = 0.0;
};

class LinkSimulator {
public:
    /// Loads the code and validates the config. Throws on load failure or
    /// when the config implies a run that needs `full_scale`.
    explicit LinkSimulator(SimConfig cfg);

    const SimConfig& config() const { return cfg_; }
    const LdpcCode& code() const { return *code_; }

    /// Deterministic given (config, seed, workers): worker w draws from the
    /// generator stream (seed, w), batches are synchronized, and the merge
    /// is a plain integer reduction.
    BerRecord run_point(double snr_linear) const;

    std::vector<BerRecord> sweep() const;

    /// Bisection on SNR in dB until the bracket is narrower than 0.05 dB;
    /// returns the lowest SNR whose measured BER <= target. Throws
    /// std::range_error (reporting both endpoint BERs) when the target is
    /// not bracketed by the grid bounds.
    std::pair<double, BerRecord> snr_search(double target_ber) const;

    /// Coded BER at per-slot SNR base_snr/M with combining, for each M.
    /// By the energy-preserving repetition construction this is the same
    /// operating point for every M, so the deltas are pure Monte-Carlo noise.
    std::vector<RepetitionComparison> repetition_equivalence(
        double base_snr, std::span<const int> repetitions) const;

    /// Transmit energy per information bit at per-use SNR `snr_linear`
    /// (= snr * M / code_rate with sigma^2 = 1); identical across modes at
    /// the same rate/M operating point.
    double energy_per_info_bit(double snr_linear) const;

    /// Rough wall-clock estimate for one point at BER ~= target, used for
    /// the up-front full-scale notice.
    double estimate_seconds_per_point(double target_ber) const;

private:
    BerRecord run_point_impl(double snr_linear, int repetition) const;

    SimConfig cfg_;
    std::shared_ptr<const LdpcCode> code_;
};

std::vector<double> parse_snr_grid(const std::string& text);

}  // namespace mlc

#endif

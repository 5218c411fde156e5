#include "mlc/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mlc/channel.hpp"
#include "mlc/demod.hpp"

namespace mlc {

namespace {

struct WorkerTally {
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t sq_frame_errors = 0;  // sum of squared per-frame error counts
    std::uint64_t high_errors = 0;
    std::uint64_t iterations = 0;
};

// One worker's persistent state: disjoint generator streams for channel
// noise and data bits, both derived from (seed, worker index).
struct Worker {
    Worker(const LdpcCode& code, double snr_linear, int repetition, std::uint64_t seed,
           int index)
        : channel(ChannelParams{1.0, seed}, 2 * static_cast<std::uint64_t>(index)),
          data(seed, 2 * static_cast<std::uint64_t>(index) + 1),
          rep{repetition},
          // snr = 0 degenerates to a vanishing constellation; the subnormal
          // amplitude keeps the pipeline intact and every LLR at zero
          constellation(qpsk(std::max(std::sqrt(snr_linear * repetition), 1e-300))) {
        info.resize(static_cast<std::size_t>(code.k()));
        high_bits.resize(static_cast<std::size_t>(code.n()));
        slots.resize(static_cast<std::size_t>(code.n()) * static_cast<std::size_t>(repetition));
    }

    AwgnChannel channel;
    CounterRng data;
    RepetitionScheme rep;
    LabeledConstellation constellation;
    std::vector<std::uint8_t> info;
    std::vector<std::uint8_t> high_bits;
    std::vector<cplx> slots;
    WorkerTally tally;

    void run_frames(const LdpcCode& code, const DecoderParams& dec, std::uint64_t count) {
        const int n = code.n();
        const int m_rep = rep.factor;
        const auto& info_cols = code.info_positions();
        for (std::uint64_t f = 0; f < count; ++f) {
            for (auto& b : info) b = static_cast<std::uint8_t>(data.bit());
            const auto codeword = code.encode(info);

            for (int i = 0; i < n; ++i) {
                high_bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(data.bit());
                const cplx x = constellation.map_bits(high_bits[static_cast<std::size_t>(i)],
                                                      codeword[static_cast<std::size_t>(i)]);
                channel.transmit_repeated(
                    x, rep,
                    std::span<cplx>(slots).subspan(static_cast<std::size_t>(i) * m_rep,
                                                   static_cast<std::size_t>(m_rep)));
            }

            const auto llrs = demap_frame(slots, rep, constellation.amplitude(), 1.0);
            std::vector<double> low(llrs.size());
            for (std::size_t i = 0; i < llrs.size(); ++i) {
                low[i] = llrs[i].low;
                const int hard_high = llrs[i].high > 0.0 ? 0 : 1;
                if (hard_high != high_bits[i]) ++tally.high_errors;
            }

            const auto result = code.decode_bp(low, dec);
            tally.iterations += static_cast<std::uint64_t>(result.iterations);
            std::uint64_t frame_errors = 0;
            for (std::size_t i = 0; i < info.size(); ++i)
                if (result.bits[static_cast<std::size_t>(info_cols[i])] != info[i])
                    ++frame_errors;
            tally.bit_errors += frame_errors;
            tally.sq_frame_errors += frame_errors * frame_errors;
            ++tally.frames;
        }
    }
};

}  // namespace

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("snr grid: expected start:step:stop, got '" + text + "'");
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("snr grid: no values in '" + text + "'");
    return out;
}

LinkSimulator::LinkSimulator(SimConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.mode == SimMode::LowRateCode && cfg_.repetition != 1)
        throw std::invalid_argument(
            "config: LowRateCode mode realizes repetition through the code rate; "
            "set repetition to 1");
    if (cfg_.repetition < 1) throw std::invalid_argument("config: repetition must be >= 1");
    if (cfg_.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (cfg_.max_frames < 1) throw std::invalid_argument("config: max_frames must be >= 1");

    code_ = std::make_shared<const LdpcCode>(LdpcCode::load_alist(cfg_.code_path));

    if (code_->n() > 16200 && !cfg_.full_scale)
        throw std::invalid_argument(
            "config: code length " + std::to_string(code_->n()) +
            " is beyond desk scale; pass full_scale (--full-scale) to run it");
}

BerRecord LinkSimulator::run_point_impl(double snr_linear, int repetition) const {
    if (!(snr_linear >= 0.0)) throw std::invalid_argument("run_point: snr must be >= 0");

    std::vector<Worker> workers;
    workers.reserve(static_cast<std::size_t>(cfg_.workers));
    for (int w = 0; w < cfg_.workers; ++w)
        workers.emplace_back(*code_, snr_linear, repetition, cfg_.seed, w);

    // Synchronized rounds keep the schedule (hence the output) a pure
    // function of (config, seed, workers): every round hands each worker a
    // precomputed frame count, then error totals decide whether to continue.
    const std::uint64_t round_quota = 64;
    std::uint64_t frames_done = 0, errors = 0;
    while (frames_done < cfg_.max_frames && errors < cfg_.min_bit_errors) {
        const std::uint64_t remaining = cfg_.max_frames - frames_done;
        const std::uint64_t round_total =
            std::min<std::uint64_t>(remaining, round_quota * static_cast<std::uint64_t>(cfg_.workers));
        std::vector<std::uint64_t> share(static_cast<std::size_t>(cfg_.workers),
                                         round_total / static_cast<std::uint64_t>(cfg_.workers));
        for (std::uint64_t w = 0; w < round_total % static_cast<std::uint64_t>(cfg_.workers); ++w)
            ++share[static_cast<std::size_t>(w)];

        if (cfg_.workers == 1) {
            workers[0].run_frames(*code_, cfg_.decoder, share[0]);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < cfg_.workers; ++w) {
                if (share[static_cast<std::size_t>(w)] == 0) continue;
                pool.emplace_back([&, w] {
                    workers[static_cast<std::size_t>(w)].run_frames(
                        *code_, cfg_.decoder, share[static_cast<std::size_t>(w)]);
                });
            }
            for (auto& t : pool) t.join();
        }

        frames_done = 0;
        errors = 0;
        for (const auto& w : workers) {
            frames_done += w.tally.frames;
            errors += w.tally.bit_errors;
        }
    }

    BerRecord rec;
    rec.snr_linear = snr_linear;
    rec.snr_db = snr_to_db(snr_linear);
    std::uint64_t sq_sum = 0;
    for (const auto& w : workers) {
        rec.frames += w.tally.frames;
        rec.bit_errors += w.tally.bit_errors;
        rec.high_level_errors += w.tally.high_errors;
        rec.avg_iterations += static_cast<double>(w.tally.iterations);
        sq_sum += w.tally.sq_frame_errors;
    }
    rec.avg_iterations = rec.frames ? rec.avg_iterations / static_cast<double>(rec.frames) : 0.0;
    const double frames = static_cast<double>(rec.frames);
    const double k = static_cast<double>(code_->k());
    rec.ber = static_cast<double>(rec.bit_errors) / (frames * k);
    const double mean_errs = static_cast<double>(rec.bit_errors) / frames;
    const double var_errs =
        std::max(0.0, static_cast<double>(sq_sum) / frames - mean_errs * mean_errs);
    rec.ber_std_error = std::sqrt(var_errs / frames) / k;
    // a reported point wants at least 50 errors, and in any case the
    // configured stopping target
    rec.low_confidence =
        rec.bit_errors < std::max<std::uint64_t>(50, cfg_.min_bit_errors);
    return rec;
}

BerRecord LinkSimulator::run_point(double snr_linear) const {
    return run_point_impl(snr_linear,
                          cfg_.mode == SimMode::SymbolRepetition ? cfg_.repetition : 1);
}

std::vector<BerRecord> LinkSimulator::sweep() const {
    if (cfg_.snr_db_grid.empty()) throw std::invalid_argument("sweep: empty SNR grid");
    std::vector<BerRecord> out;
    for (double db : cfg_.snr_db_grid) out.push_back(run_point(snr_from_db(db)));
    return out;
}

std::pair<double, BerRecord> LinkSimulator::snr_search(double target_ber) const {
    if (cfg_.snr_db_grid.size() < 2)
        throw std::invalid_argument("snr_search: grid must supply bracket bounds");
    if (!(target_ber > 0.0) || target_ber > 1.0)
        throw std::invalid_argument("snr_search: target must be in (0, 1]");
    if (code_->n() > 16200 || target_ber < 1e-5) {
        if (!cfg_.full_scale)
            throw std::invalid_argument(
                "snr_search: this target needs the full-scale mode (--full-scale)");
    }

    double lo = *std::min_element(cfg_.snr_db_grid.begin(), cfg_.snr_db_grid.end());
    double hi = *std::max_element(cfg_.snr_db_grid.begin(), cfg_.snr_db_grid.end());

    BerRecord rec_lo = run_point(snr_from_db(lo));
    if (rec_lo.ber <= target_ber) return {snr_from_db(lo), rec_lo};

    BerRecord rec_hi = run_point(snr_from_db(hi));
    if (rec_hi.ber > target_ber) {
        std::ostringstream os;
        os << "snr_search: target " << target_ber << " not bracketed: BER(" << lo
           << " dB) = " << rec_lo.ber << ", BER(" << hi << " dB) = " << rec_hi.ber;
        throw std::range_error(os.str());
    }

    while (hi - lo >= 0.05) {
        const double mid = 0.5 * (lo + hi);
        const BerRecord rec = run_point(snr_from_db(mid));
        if (rec.ber <= target_ber) {
            hi = mid;
            rec_hi = rec;
        } else {
            lo = mid;
        }
    }
    return {snr_from_db(hi), rec_hi};
}

std::vector<RepetitionComparison> LinkSimulator::repetition_equivalence(
    double base_snr, std::span<const int> repetitions) const {
    if (cfg_.mode != SimMode::SymbolRepetition)
        throw std::invalid_argument("repetition_equivalence: requires SymbolRepetition mode");

    const BerRecord base = run_point_impl(base_snr, 1);
    std::vector<RepetitionComparison> out;
    for (int m : repetitions) {
        RepetitionComparison cmp;
        cmp.repetition = m;
        cmp.record = (m == 1) ? base : run_point_impl(base_snr / m, m);
        cmp.delta_vs_base = cmp.record.ber - base.ber;
        cmp.combined_std_error =
            (m == 1) ? 0.0
                     : std::sqrt(cmp.record.ber_std_error * cmp.record.ber_std_error +
                                 base.ber_std_error * base.ber_std_error);
        out.push_back(cmp);
    }
    return out;
}

double LinkSimulator::energy_per_info_bit(double snr_linear) const {
    const int m = cfg_.mode == SimMode::SymbolRepetition ? cfg_.repetition : 1;
    return snr_linear * static_cast<double>(m) / code_->rate();
}

double LinkSimulator::estimate_seconds_per_point(double target_ber) const {
    const double probe_db = cfg_.snr_db_grid.empty() ? 2.0 : cfg_.snr_db_grid.front();
    Worker w(*code_, snr_from_db(probe_db), cfg_.mode == SimMode::SymbolRepetition ? cfg_.repetition : 1,
             cfg_.seed, 0);
    const auto t0 = std::chrono::steady_clock::now();
    w.run_frames(*code_, cfg_.decoder, 5);
    const auto t1 = std::chrono::steady_clock::now();
    const double per_frame = std::chrono::duration<double>(t1 - t0).count() / 5.0;
    const double frames_needed =
        std::min(static_cast<double>(cfg_.max_frames),
                 static_cast<double>(cfg_.min_bit_errors) /
                     (target_ber * static_cast<double>(code_->k())));
    return per_frame * frames_needed / static_cast<double>(cfg_.workers);
}

}  // namespace mlc

// mlc-lab: per-level MI curves, convexity and repetition-rate analysis,
// and LDPC-coded BER simulation for set-partitioned QPSK over AWGN.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlc/channel.hpp"
#include "mlc/csv.hpp"
#include "mlc/ldpc.hpp"
#include "mlc/mi.hpp"
#include "mlc/rate.hpp"
#include "mlc/sim.hpp"

namespace {

std::vector<double> linear_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + 1e-12) break;
        g.push_back(v);
    }
    if (g.size() < 2) throw CLI::ValidationError("gamma grid needs at least 2 points");
    return g;
}

// Expands `--config FILE` into `--key value` tokens for every key=value
// line whose flag is not already on the command line, so explicit flags
// always override the file.
std::vector<std::string> apply_config_files(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> out;
    std::vector<std::string> from_file;

    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw CLI::ValidationError("--config needs a file path");
            std::ifstream in(args[++i]);
            if (!in) throw CLI::ValidationError("cannot open config file " + args[i]);
            std::string line;
            while (std::getline(in, line)) {
                const auto start = line.find_first_not_of(" \t");
                if (start == std::string::npos || line[start] == '#') continue;
                const auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("config line is not key=value: " + line);
                const std::string key = line.substr(start, eq - start);
                std::string value = line.substr(eq + 1);
                while (!value.empty() && (value.back() == '\r' || value.back() == ' '))
                    value.pop_back();
                from_file.push_back("--" + key);
                from_file.push_back(value);
            }
        } else {
            out.push_back(args[i]);
        }
    }

    auto given = [&](const std::string& flag) {
        for (const auto& a : out)
            if (a == flag) return true;
        return false;
    };
    for (std::size_t i = 0; i + 1 < from_file.size(); i += 2) {
        const std::string& flag = from_file[i];
        const std::string& value = from_file[i + 1];
        if (given(flag)) continue;
        if (value == "true" || value == "false") {  // bare switches
            if (value == "true") out.push_back(flag);
        } else {
            out.push_back(flag);
            out.push_back(value);
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated integer list");
    return out;
}

struct LinkFlags {
    std::string code_path;
    std::string mode = "rep";
    int repetition = 1;
    std::string snr_db = "0:0.5:6";
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t max_frames = 100000;
    std::uint64_t min_errors = 100;
    int max_iters = 50;
    bool min_sum = false;
    bool full_scale = false;

    mlc::SimConfig to_config() const {
        mlc::SimConfig cfg;
        cfg.code_path = code_path;
        if (mode == "rep")
            cfg.mode = mlc::SimMode::SymbolRepetition;
        else if (mode == "lowrate")
            cfg.mode = mlc::SimMode::LowRateCode;
        else
            throw CLI::ValidationError("--mode must be rep or lowrate");
        cfg.repetition = repetition;
        cfg.snr_db_grid = mlc::parse_snr_grid(snr_db);
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.max_frames = max_frames;
        cfg.min_bit_errors = min_errors;
        cfg.decoder.max_iters = max_iters;
        cfg.decoder.min_sum = min_sum;
        cfg.full_scale = full_scale;
        return cfg;
    }
};

// --config is consumed before CLI11 parsing (see apply_config_files); the
// registration below only documents it in --help.
void add_config_doc(CLI::App* cmd) {
    static std::string sink;
    cmd->add_option("--config", sink,
                    "flat key=value file mirroring these flags; explicit flags override");
}

void add_link_flags(CLI::App* cmd, LinkFlags& f) {
    add_config_doc(cmd);
    cmd->add_option("--code", f.code_path, "alist parity-check matrix")->required();
    cmd->add_option("--mode", f.mode, "rep (symbol repetition) or lowrate");
    cmd->add_option("--M", f.repetition, "repetition factor (rep mode)");
    cmd->add_option("--snr-db", f.snr_db, "grid: start:step:stop or comma list (dB)");
    cmd->add_option("--seed", f.seed, "generator seed");
    cmd->add_option("--workers", f.workers, "worker thread count");
    cmd->add_option("--max-frames", f.max_frames, "frame cap per SNR point");
    cmd->add_option("--min-errors", f.min_errors, "bit-error stopping target per point");
    cmd->add_option("--max-iters", f.max_iters, "BP iteration cap");
    cmd->add_flag("--min-sum", f.min_sum, "scaled min-sum instead of sum-product");
    cmd->add_flag("--full-scale", f.full_scale,
                  "permit long runs (big codes / very low target BER)");
}

mlc::MiCurve default_low_curve() {
    return mlc::mi_curve_quadrature(mlc::MiLevel::Low, linear_grid(0.0, 6.0, 0.05));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilevel-QPSK mutual information and coded-link toolkit"};
    app.require_subcommand(1);

    // ---- mi-curve ----
    double gamma_min = 0.0, gamma_max = 6.0, gamma_step = 0.05;
    std::string mi_backend = "quad", mi_out = "mi_curve.csv";
    std::uint64_t mi_samples = 1000000, mi_seed = 1;
    auto* mi_cmd = app.add_subcommand("mi-curve", "per-level MI over an SNR grid");
    add_config_doc(mi_cmd);
    mi_cmd->add_option("--gamma-min", gamma_min, "grid start (linear SNR)");
    mi_cmd->add_option("--gamma-max", gamma_max, "grid stop");
    mi_cmd->add_option("--step", gamma_step, "grid step");
    mi_cmd->add_option("--backend", mi_backend, "quad or mc (mc applies to the low level)");
    mi_cmd->add_option("--samples", mi_samples, "Monte-Carlo samples per point");
    mi_cmd->add_option("--seed", mi_seed, "Monte-Carlo seed");
    mi_cmd->add_option("--out", mi_out, "output csv");
    mi_cmd->callback([&] {
        const auto grid = linear_grid(gamma_min, gamma_max, gamma_step);
        const auto high = mlc::mi_curve_quadrature(mlc::MiLevel::High, grid);
        const auto total = mlc::mi_curve_quadrature(mlc::MiLevel::Total, grid);
        mlc::MiCurve low;
        if (mi_backend == "quad")
            low = mlc::mi_curve_quadrature(mlc::MiLevel::Low, grid);
        else if (mi_backend == "mc")
            low = mlc::mi_curve_expectation(grid, mi_samples, mi_seed);
        else
            throw CLI::ValidationError("--backend must be quad or mc");
        mlc::write_mi_csv(mi_out, low, high, total);
        std::printf("wrote %zu points to %s\n", low.points.size(), mi_out.c_str());
    });

    // ---- convexity ----
    std::string cx_in = "mi_curve.csv";
    double cx_a = 0.0, cx_b = 1.5;
    auto* cx_cmd = app.add_subcommand("convexity", "chord test on a sampled MI curve");
    add_config_doc(cx_cmd);
    cx_cmd->add_option("--in", cx_in, "mi_curve.csv input");
    cx_cmd->add_option("--a", cx_a, "interval start (linear SNR)");
    cx_cmd->add_option("--b", cx_b, "interval end");
    cx_cmd->callback([&] {
        const auto curve = mlc::read_mi_csv(cx_in);
        const auto rep = mlc::is_convex_on(curve, cx_a, cx_b);
        std::printf("convexity [%s, %s]: convex=%s max_chord_violation=%s\n",
                    mlc::format_g9(rep.lo).c_str(), mlc::format_g9(rep.hi).c_str(),
                    rep.is_convex ? "yes" : "no",
                    mlc::format_g9(rep.max_chord_violation).c_str());
    });

    // ---- ar-line ----
    double gamma1 = 2.10;
    std::string ar_ms = "1,2,4,8", ar_out = "ar_points.csv", ar_in;
    auto* ar_cmd = app.add_subcommand("ar-line", "repetition achievable-rate line vs MI");
    add_config_doc(ar_cmd);
    ar_cmd->add_option("--gamma1", gamma1, "anchor SNR (linear)");
    ar_cmd->add_option("--M", ar_ms, "repetition factors, comma list");
    ar_cmd->add_option("--in", ar_in, "reuse an mi_curve.csv instead of recomputing");
    ar_cmd->add_option("--out", ar_out, "output csv");
    ar_cmd->callback([&] {
        const mlc::MiCurve curve = ar_in.empty() ? default_low_curve() : mlc::read_mi_csv(ar_in);
        const auto line = mlc::line_from_mi(gamma1, curve);
        const auto ms = parse_int_list(ar_ms);
        const auto points = mlc::ar_points(line, ms, curve);
        mlc::write_ar_csv(ar_out, points);
        for (const auto& g : points)
            std::printf("M=%d: snr=%s (%s dB) ar=%s mi=%s gain_db=%s\n", g.repetition,
                        mlc::format_g9(g.snr).c_str(), mlc::format_g9(g.snr_db).c_str(),
                        mlc::format_g9(g.achievable_rate).c_str(),
                        mlc::format_g9(g.mi_at_snr).c_str(),
                        g.gain_db ? mlc::format_g9(*g.gain_db).c_str() : "n/a");
        for (const auto& iv : mlc::crossover(line, curve))
            std::printf("line above curve on [%s, %s]\n", mlc::format_g9(iv.lo).c_str(),
                        mlc::format_g9(iv.hi).c_str());
        std::printf("wrote %s\n", ar_out.c_str());
    });

    // ---- ber-sweep ----
    LinkFlags sweep_flags;
    std::string sweep_out = "ber.csv";
    auto* bs_cmd = app.add_subcommand("ber-sweep", "coded BER over an SNR grid");
    add_link_flags(bs_cmd, sweep_flags);
    bs_cmd->add_option("--out", sweep_out, "output csv");
    bs_cmd->callback([&] {
        mlc::LinkSimulator sim(sweep_flags.to_config());
        if (sweep_flags.full_scale) {
            const double secs = sim.estimate_seconds_per_point(1e-6);
            std::printf("full-scale run: roughly %.0f s per SNR point at BER 1e-6\n", secs);
        }
        const auto records = sim.sweep();
        mlc::write_ber_csv(sweep_out, records);
        for (const auto& r : records)
            std::printf("%s dB: ber=%s frames=%llu errors=%llu iters=%s%s\n",
                        mlc::format_g9(r.snr_db).c_str(), mlc::format_g9(r.ber).c_str(),
                        static_cast<unsigned long long>(r.frames),
                        static_cast<unsigned long long>(r.bit_errors),
                        mlc::format_g9(r.avg_iterations).c_str(),
                        r.low_confidence ? " (low confidence)" : "");
        std::printf("wrote %s\n", sweep_out.c_str());
    });

    // ---- snr-search ----
    LinkFlags search_flags;
    double target_ber = 1e-2;
    std::string search_out;
    auto* ss_cmd = app.add_subcommand("snr-search", "bisection SNR search for a target BER");
    add_link_flags(ss_cmd, search_flags);
    ss_cmd->add_option("--target-ber", target_ber, "target bit error rate")->required();
    ss_cmd->add_option("--out", search_out, "optionally write the found point as csv");
    ss_cmd->callback([&] {
        mlc::LinkSimulator sim(search_flags.to_config());
        if (search_flags.full_scale) {
            const double secs = sim.estimate_seconds_per_point(target_ber);
            std::printf("full-scale search: roughly %.0f s per probed point\n", secs);
        }
        const auto [snr, rec] = sim.snr_search(target_ber);
        std::printf("gamma_hat = %s (%s dB), ber = %s, frames = %llu%s\n",
                    mlc::format_g9(snr).c_str(), mlc::format_g9(mlc::snr_to_db(snr)).c_str(),
                    mlc::format_g9(rec.ber).c_str(),
                    static_cast<unsigned long long>(rec.frames),
                    rec.low_confidence ? " (low confidence)" : "");
        if (!search_out.empty()) mlc::write_ber_csv(search_out, {rec});
    });

    // ---- gen-code ----
    int gc_n = 1008, gc_rows = 504, gc_w = 3;
    std::string gc_kind = "regular", gc_out = "code.alist";
    std::uint64_t gc_seed = 1;
    auto* gc_cmd = app.add_subcommand("gen-code", "generate a pseudorandom alist fixture");
    add_config_doc(gc_cmd);
    gc_cmd->add_option("--n", gc_n, "columns (code length)");
    gc_cmd->add_option("--rows", gc_rows, "parity rows");
    gc_cmd->add_option("--col-weight", gc_w, "column weight");
    gc_cmd->add_option("--construction", gc_kind, "regular or staircase");
    gc_cmd->add_option("--seed", gc_seed, "construction seed");
    gc_cmd->add_option("--out", gc_out, "output alist");
    gc_cmd->callback([&] {
        const mlc::LdpcCode code =
            gc_kind == "staircase" ? mlc::LdpcCode::make_staircase(gc_n, gc_rows, gc_w, gc_seed)
                                   : mlc::LdpcCode::make_regular(gc_n, gc_rows, gc_w, gc_seed);
        code.save_alist(gc_out);
        std::printf("n=%d rows=%d rank=%d k=%d rate=%s -> %s\n", code.n(), code.m(),
                    code.rank(), code.k(), mlc::format_g9(code.rate()).c_str(), gc_out.c_str());
    });

    try {
        auto args = apply_config_files(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed args
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

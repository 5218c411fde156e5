#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <stdexcept>

#include "mlc/channel.hpp"
#include "mlc/csv.hpp"
#include "mlc/ldpc.hpp"
#include "mlc/sim.hpp"

using namespace mlc;

namespace {

// Unit tests run on a half-length code to stay fast; the shipped 1008
// fixtures are exercised by the acceptance suite.
const char* kSmallCode = "/tmp/mlc_test_r12_n504.alist";
const char* kQuarterCode = "/tmp/mlc_test_r14_n504.alist";

void ensure_codes() {
    static bool done = false;
    if (done) return;
    LdpcCode::make_regular(504, 252, 3, 11).save_alist(kSmallCode);
    LdpcCode::make_regular(504, 378, 3, 12).save_alist(kQuarterCode);
    done = true;
}

SimConfig base_config() {
    ensure_codes();
    SimConfig cfg;
    cfg.code_path = kSmallCode;
    cfg.mode = SimMode::SymbolRepetition;
    cfg.repetition = 1;
    cfg.snr_db_grid = {0.0, 8.0};
    cfg.max_frames = 1000;
    cfg.min_bit_errors = 100;
    cfg.seed = 7;
    cfg.workers = 2;
    cfg.decoder.max_iters = 30;
    return cfg;
}

}  // namespace

TEST_CASE("parse_snr_grid") {
    const auto g = parse_snr_grid("0:0.25:1");
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 0.0);
    CHECK(g[4] == doctest::Approx(1.0));

    const auto list = parse_snr_grid("1.5,2,3");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == 2.0);

    CHECK_THROWS_AS(parse_snr_grid("1:0:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_snr_grid(""), std::invalid_argument);
}

TEST_CASE("config validation") {
    auto cfg = base_config();
    cfg.mode = SimMode::LowRateCode;
    cfg.repetition = 4;
    CHECK_THROWS_AS(LinkSimulator{cfg}, std::invalid_argument);

    cfg = base_config();
    cfg.workers = 0;
    CHECK_THROWS_AS(LinkSimulator{cfg}, std::invalid_argument);

    cfg = base_config();
    cfg.code_path = "/tmp/mlc_test_does_not_exist.alist";
    CHECK_THROWS_AS(LinkSimulator{cfg}, std::runtime_error);
}

TEST_CASE("noiseless-limit point has zero errors") {
    auto cfg = base_config();
    cfg.max_frames = 1000;
    const LinkSimulator sim(cfg);
    const auto rec = sim.run_point(100.0);
    CHECK(rec.frames == 1000);
    CHECK(rec.bit_errors == 0);
    CHECK(rec.ber == 0.0);
    CHECK(rec.low_confidence);  // zero errors can never reach the stopping target
}

TEST_CASE("zero-SNR point decodes nothing") {
    auto cfg = base_config();
    cfg.max_frames = 300;
    cfg.min_bit_errors = 1u << 30;  // force the frame cap
    cfg.decoder.max_iters = 5;
    const LinkSimulator sim(cfg);
    const auto rec = sim.run_point(0.0);
    CHECK(std::abs(rec.ber - 0.5) < 0.02);
}

TEST_CASE("waterfall: higher SNR means fewer errors") {
    auto cfg = base_config();
    cfg.max_frames = 3000;
    cfg.min_bit_errors = 150;
    const LinkSimulator sim(cfg);
    const auto low = sim.run_point(snr_from_db(3.0));
    const auto high = sim.run_point(snr_from_db(5.5));
    CHECK(low.ber > high.ber);
    CHECK(low.bit_errors >= 150);
}

TEST_CASE("deterministic given config, seed and workers") {
    auto cfg = base_config();
    cfg.snr_db_grid = {3.0, 4.0};
    cfg.max_frames = 300;
    const LinkSimulator sim(cfg);

    const auto a = sim.sweep();
    const auto b = sim.sweep();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].bit_errors == b[i].bit_errors);
        CHECK(a[i].frames == b[i].frames);
        CHECK(a[i].ber == b[i].ber);
        CHECK(a[i].avg_iterations == b[i].avg_iterations);
        CHECK(a[i].high_level_errors == b[i].high_level_errors);
    }

    // byte-identical CSV
    write_ber_csv("/tmp/mlc_test_ber_a.csv", a);
    write_ber_csv("/tmp/mlc_test_ber_b.csv", b);
    std::ifstream fa("/tmp/mlc_test_ber_a.csv"), fb("/tmp/mlc_test_ber_b.csv");
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("snr_db,snr_linear,frames,bit_errors,ber") == 0);
}

TEST_CASE("statistics do not depend on the worker count") {
    auto cfg = base_config();
    cfg.max_frames = 4000;
    cfg.min_bit_errors = 400;
    const double snr = snr_from_db(3.5);

    cfg.workers = 1;
    const auto one = LinkSimulator(cfg).run_point(snr);
    cfg.workers = 4;
    const auto four = LinkSimulator(cfg).run_point(snr);

    const double tol = 3.0 * std::sqrt(one.ber_std_error * one.ber_std_error +
                                       four.ber_std_error * four.ber_std_error);
    CHECK(std::abs(one.ber - four.ber) <= tol);
    CHECK(one.ber_std_error > 0.0);
}

TEST_CASE("repetition equivalence at a coarse operating point") {
    auto cfg = base_config();
    cfg.max_frames = 4000;
    cfg.min_bit_errors = 200;
    const LinkSimulator sim(cfg);

    const double base_snr = snr_from_db(4.0);
    const int ms[] = {1, 4, 8};
    const auto table = sim.repetition_equivalence(base_snr, ms);
    REQUIRE(table.size() == 3);
    CHECK(table[0].delta_vs_base == 0.0);
    for (std::size_t i : {1u, 2u})
        CHECK(std::abs(table[i].delta_vs_base) <= 3.0 * table[i].combined_std_error);
}

TEST_CASE("energy per info bit matches across modes") {
    auto rep_cfg = base_config();
    rep_cfg.repetition = 2;  // rate 1/2 repeated twice -> 1/4 info bits per use
    const LinkSimulator rep_sim(rep_cfg);

    auto low_cfg = base_config();
    low_cfg.code_path = kQuarterCode;
    low_cfg.mode = SimMode::LowRateCode;
    const LinkSimulator low_sim(low_cfg);

    const double snr = 1.7;
    CHECK(rep_sim.energy_per_info_bit(snr) ==
          doctest::Approx(low_sim.energy_per_info_bit(snr)).epsilon(1e-12));
}

TEST_CASE("snr_search degenerate and error paths") {
    auto cfg = base_config();
    cfg.snr_db_grid = {2.0, 6.0};
    cfg.max_frames = 200;
    const LinkSimulator sim(cfg);

    // target 1.0 is met everywhere: the grid minimum comes back
    const auto [snr, rec] = sim.snr_search(1.0);
    CHECK(snr == doctest::Approx(snr_from_db(2.0)).epsilon(1e-12));

    // an unreachable target reports both endpoints
    auto hard = base_config();
    hard.snr_db_grid = {-3.0, -1.0};
    hard.max_frames = 100;
    CHECK_THROWS_AS(LinkSimulator(hard).snr_search(1e-4), std::range_error);
}

TEST_CASE("snr_search finds a stable waterfall point") {
    auto cfg = base_config();
    cfg.snr_db_grid = {1.0, 8.0};
    cfg.max_frames = 2500;
    cfg.min_bit_errors = 200;
    const LinkSimulator sim(cfg);

    const auto [snr, rec] = sim.snr_search(1e-2);
    CHECK(rec.ber <= 1e-2);
    CHECK(snr_to_db(snr) > 1.0);
    CHECK(snr_to_db(snr) < 8.0);

    // the same search again is bit-identical
    const auto [snr2, rec2] = sim.snr_search(1e-2);
    CHECK(snr == snr2);
    CHECK(rec.bit_errors == rec2.bit_errors);
}

TEST_CASE("full-scale gate") {
    auto cfg = base_config();
    cfg.snr_db_grid = {1.0, 8.0};
    cfg.max_frames = 50;
    const LinkSimulator sim(cfg);
    CHECK_THROWS_WITH_AS(sim.snr_search(1e-6), doctest::Contains("full-scale"),
                         std::invalid_argument);
}

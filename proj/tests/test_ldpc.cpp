#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>
#include <stdexcept>

#include "mlc/ldpc.hpp"
#include "mlc/rng.hpp"

using namespace mlc;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("/tmp/mlc_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

// 3x6 toy: rows {0,1,3}, {1,2,4}, {0,2,5}; rank 3, rate 1/2, odd row weights.
const char* kToyAlist =
    "6 3\n"
    "2 3\n"
    "2 2 2 1 1 1\n"
    "3 3 3\n"
    "1 3\n"
    "1 2\n"
    "2 3\n"
    "1 0\n"
    "2 0\n"
    "3 0\n"
    "1 2 4\n"
    "2 3 5\n"
    "1 3 6\n";

LdpcCode toy_code() {
    const auto path = temp_path("toy.alist");
    write_file(path, kToyAlist);
    return LdpcCode::load_alist(path);
}

std::vector<std::uint8_t> random_info(const LdpcCode& code, CounterRng& rng) {
    std::vector<std::uint8_t> info(static_cast<std::size_t>(code.k()));
    for (auto& b : info) b = static_cast<std::uint8_t>(rng.bit());
    return info;
}

}  // namespace

TEST_CASE("toy alist loads and encodes") {
    const auto code = toy_code();
    CHECK(code.n() == 6);
    CHECK(code.m() == 3);
    CHECK(code.k() == 3);
    CHECK(code.rate() == doctest::Approx(0.5));

    // every info word maps to a zero-syndrome codeword
    for (int w = 0; w < 8; ++w) {
        const std::vector<std::uint8_t> info{static_cast<std::uint8_t>(w & 1),
                                             static_cast<std::uint8_t>((w >> 1) & 1),
                                             static_cast<std::uint8_t>((w >> 2) & 1)};
        CHECK(code.syndrome_ok(code.encode(info)));
    }

    const std::vector<std::uint8_t> zeros(3, 0);
    const auto cw = code.encode(zeros);
    for (auto b : cw) CHECK(b == 0);
}

TEST_CASE("alist validation errors name the line") {
    SUBCASE("column weight mismatch") {
        const auto path = temp_path("bad_colcount.alist");
        write_file(path,
                   "6 3\n2 3\n2 2 2 1 1 1\n3 3 3\n"
                   "1 3\n1 2\n2 0\n1 0\n2 0\n3 0\n");  // col 3 lists 1 entry, weight says 2
        try {
            LdpcCode::load_alist(path);
            FAIL("expected a parse error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(":7") != std::string::npos);
            CHECK(std::string(e.what()).find("column 3") != std::string::npos);
        }
    }
    SUBCASE("zero column") {
        const auto path = temp_path("bad_zerocol.alist");
        write_file(path,
                   "6 3\n2 3\n2 2 2 1 1 0\n3 3 2\n"
                   "1 3\n1 2\n2 3\n1 0\n2 0\n0 0\n");
        CHECK_THROWS_WITH_AS(LdpcCode::load_alist(path),
                             doctest::Contains("zero column"), std::runtime_error);
    }
    SUBCASE("row section disagrees with columns") {
        const auto path = temp_path("bad_rowsec.alist");
        write_file(path,
                   "6 3\n2 3\n2 2 2 1 1 1\n3 3 3\n"
                   "1 3\n1 2\n2 3\n1 0\n2 0\n3 0\n"
                   "1 2 5\n2 3 5\n1 3 6\n");  // row 1 should read 1 2 4
        CHECK_THROWS_WITH_AS(LdpcCode::load_alist(path),
                             doctest::Contains("disagrees"), std::runtime_error);
    }
    SUBCASE("out of range index") {
        const auto path = temp_path("bad_range.alist");
        write_file(path,
                   "6 3\n2 3\n2 2 2 1 1 1\n3 3 3\n"
                   "1 7\n1 2\n2 3\n1 0\n2 0\n3 0\n");
        CHECK_THROWS_WITH_AS(LdpcCode::load_alist(path),
                             doctest::Contains("out of range"), std::runtime_error);
    }
}

TEST_CASE("regular construction properties") {
    const auto code = LdpcCode::make_regular(504, 252, 3, 11);
    CHECK(code.n() == 504);
    CHECK(code.m() == 252);
    CHECK(code.edge_count() == 504 * 3);
    CHECK(code.k() >= 252);  // rank can only lose dimensions

    CounterRng rng(1);
    for (int t = 0; t < 1000; ++t)
        CHECK(code.syndrome_ok(code.encode(random_info(code, rng))));
}

TEST_CASE("encode is linear") {
    const auto code = LdpcCode::make_regular(96, 48, 3, 4);
    CounterRng rng(2);
    const auto x = random_info(code, rng);
    auto flipped = x;
    flipped[7] ^= 1;

    std::vector<std::uint8_t> unit(static_cast<std::size_t>(code.k()), 0);
    unit[7] = 1;

    const auto cx = code.encode(x);
    const auto cf = code.encode(flipped);
    const auto cu = code.encode(unit);
    for (std::size_t i = 0; i < cx.size(); ++i) CHECK((cx[i] ^ cf[i]) == cu[i]);
}

TEST_CASE("encode length mismatch") {
    const auto code = toy_code();
    std::vector<std::uint8_t> bad(2, 0);
    CHECK_THROWS_AS(code.encode(bad), std::invalid_argument);
}

TEST_CASE("decode: noiseless LLRs converge in one iteration") {
    const auto code = LdpcCode::make_regular(96, 48, 3, 4);
    CounterRng rng(3);
    const auto cw = code.encode(random_info(code, rng));
    std::vector<double> llrs(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i) llrs[i] = cw[i] ? -20.0 : 20.0;

    const auto res = code.decode_bp(llrs);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.bits == cw);
}

TEST_CASE("decode: exhaustive single-flip correction") {
    CounterRng rng(4);
    for (const auto& code :
         {toy_code(), LdpcCode::make_regular(1008, 504, 3, 2)}) {
        const auto cw = code.encode(random_info(code, rng));
        for (int flip = 0; flip < code.n(); ++flip) {
            std::vector<double> llrs(cw.size());
            for (std::size_t i = 0; i < cw.size(); ++i) {
                const int bit = cw[i] ^ (static_cast<int>(i) == flip ? 1 : 0);
                llrs[i] = bit ? -2.0 : 2.0;
            }
            const auto res = code.decode_bp(llrs);
            CHECK(res.converged);
            CHECK(res.bits == cw);
        }
    }
}

TEST_CASE("decode: zero LLRs never converge on odd-weight rows") {
    const auto code = toy_code();
    const std::vector<double> llrs(6, 0.0);
    const auto res = code.decode_bp(llrs, DecoderParams{25, false, 0.75});
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 25);
}

TEST_CASE("decode: converged iff zero syndrome") {
    const auto code = LdpcCode::make_regular(96, 48, 3, 7);
    CounterRng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cw = code.encode(random_info(code, rng));
        std::vector<double> llrs(cw.size());
        for (std::size_t i = 0; i < cw.size(); ++i) {
            const double noise = 3.0 * (2.0 * rng.uniform01() - 1.0);
            llrs[i] = (cw[i] ? -1.0 : 1.0) * 1.2 + noise;
        }
        const auto res = code.decode_bp(llrs, DecoderParams{8, false, 0.75});
        CHECK(res.converged == code.syndrome_ok(res.bits));
    }
}

TEST_CASE("decode: min-sum variant also corrects") {
    const auto code = LdpcCode::make_regular(1008, 504, 3, 2);
    CounterRng rng(5);
    const auto cw = code.encode(random_info(code, rng));
    std::vector<double> llrs(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i) llrs[i] = cw[i] ? -2.0 : 2.0;
    llrs[100] = -llrs[100];
    const auto res = code.decode_bp(llrs, DecoderParams{50, true, 0.75});
    CHECK(res.converged);
    CHECK(res.bits == cw);
}

TEST_CASE("decode rejects bad input") {
    const auto code = toy_code();
    std::vector<double> llrs(6, 1.0);
    llrs[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(code.decode_bp(llrs), std::invalid_argument);

    std::vector<double> wrong(5, 1.0);
    CHECK_THROWS_AS(code.decode_bp(wrong), std::invalid_argument);
}

TEST_CASE("alist save/load round trip") {
    const auto code = LdpcCode::make_regular(96, 48, 3, 9);
    const auto path = temp_path("roundtrip.alist");
    code.save_alist(path);
    const auto loaded = LdpcCode::load_alist(path);
    CHECK(loaded.n() == code.n());
    CHECK(loaded.m() == code.m());
    CHECK(loaded.k() == code.k());
    CHECK(loaded.edge_count() == code.edge_count());

    CounterRng rng(10);
    const auto info = random_info(code, rng);
    CHECK(loaded.encode(info) == code.encode(info));
}

TEST_CASE("staircase construction at full scale") {
    // DVB-S.2-sized: n = 64800, rate 1/2. The staircase parity part makes
    // the encoder O(edges) at any size.
    const auto code = LdpcCode::make_staircase(64800, 32400, 3, 6);
    CHECK(code.k() == 32400);

    const auto path = temp_path("big.alist");
    code.save_alist(path);

    const auto t0 = std::chrono::steady_clock::now();
    const auto loaded = LdpcCode::load_alist(path);
    const double load_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(load_s < 5.0);

    CounterRng rng(11);
    const auto info = random_info(loaded, rng);
    CHECK(loaded.syndrome_ok(loaded.encode(info)));
    std::remove(path.c_str());
}

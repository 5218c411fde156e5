#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>
#include <stdexcept>

#include "mlc/channel.hpp"
#include "mlc/demod.hpp"
#include "mlc/rng.hpp"

using namespace mlc;

TEST_CASE("counter rng: determinism and stream disjointness") {
    CounterRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool all_equal = true, stream_differs = false, seed_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a.next_u64();
        all_equal &= (va == b.next_u64());
        stream_differs |= (va != c.next_u64());
        seed_differs |= (va != d.next_u64());
    }
    CHECK(all_equal);
    CHECK(stream_differs);
    CHECK(seed_differs);
}

TEST_CASE("transmit noise statistics") {
    const std::size_t n = 1000000;
    const double var = 0.8;
    AwgnChannel ch(ChannelParams{var, 7});
    const cplx x{1.0, -2.0};

    double sum_re = 0, sum_im = 0, sum_sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx noise = ch.transmit(x) - x;
        sum_re += noise.real();
        sum_im += noise.imag();
        sum_sq += std::norm(noise);
    }
    const double tol = 4.0 * std::sqrt(var) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(sum_re / n) < tol);
    CHECK(std::abs(sum_im / n) < tol);
    CHECK(sum_sq / n == doctest::Approx(var).epsilon(0.01));
}

TEST_CASE("repetition preserves energy exactly") {
    for (int m : {1, 2, 4, 8, 9}) {
        const RepetitionScheme rep{m};
        const cplx x{3.0, -4.0};
        const cplx scaled = x * rep.scale();
        CHECK(m * std::norm(scaled) == doctest::Approx(std::norm(x)).epsilon(1e-12));
        CHECK(rep.scale() * rep.scale() * m == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("transmit_repeated slot magnitude") {
    AwgnChannel ch(ChannelParams{1e-18, 3});
    const auto slots = ch.transmit_repeated(cplx{2.0, 0.0}, RepetitionScheme{4});
    REQUIRE(slots.size() == 4);
    for (const auto& s : slots) CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("noise across slots is uncorrelated") {
    AwgnChannel ch(ChannelParams{1.0, 11});
    const RepetitionScheme rep{2};
    double cross = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const auto s = ch.transmit_repeated(cplx{0, 0}, rep);
        cross += s[0].real() * s[1].real() + s[0].imag() * s[1].imag();
    }
    CHECK(std::abs(cross / n) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("combine") {
    CHECK_THROWS_AS(combine(std::vector<cplx>{}), std::invalid_argument);

    const std::vector<cplx> one{cplx{1.5, -0.5}};
    CHECK(combine(one) == one[0]);

    // noiseless repeated transmission combines to sqrt(M) * x
    const cplx x{1.0, 1.0};
    const RepetitionScheme rep{4};
    std::vector<cplx> slots(4, x * rep.scale());
    const cplx combined = combine(slots);
    CHECK(combined.real() == doctest::Approx((std::sqrt(4.0) * x).real()).epsilon(1e-12));
    CHECK(combined.imag() == doctest::Approx((std::sqrt(4.0) * x).imag()).epsilon(1e-12));
}

TEST_CASE("post-combining SNR matches unrepeated SNR") {
    // estimate SNR = |mean|^2 / var of (combined sample normalized)
    const double snr = 2.0;
    const int frames = 100000;
    const cplx x{std::sqrt(snr), 0.0};

    auto measure = [&](int m, std::uint64_t seed) {
        AwgnChannel ch(ChannelParams{1.0, seed});
        const RepetitionScheme rep{m};
        cplx mean{0, 0};
        double power = 0;
        std::vector<cplx> samples(static_cast<std::size_t>(frames));
        for (int i = 0; i < frames; ++i) {
            const auto slots = ch.transmit_repeated(x, rep);
            samples[static_cast<std::size_t>(i)] = combine(slots);
            mean += samples[static_cast<std::size_t>(i)];
        }
        mean /= static_cast<double>(frames);
        for (const auto& s : samples) power += std::norm(s - mean);
        power /= static_cast<double>(frames);
        return std::norm(mean) / power;
    };

    const double snr_m1 = measure(1, 5);
    const double snr_m4 = measure(4, 6);
    CHECK(snr_m1 == doctest::Approx(snr).epsilon(0.02));
    CHECK(snr_m4 == doctest::Approx(snr_m1).epsilon(0.02));
}

TEST_CASE("uncoded low-level BER is unchanged by repetition combining") {
    // hard decisions on llr_low at (M, snr/M per slot) vs (1, snr),
    // 3 combined standard errors apart at most
    const double snr = 2.0;
    const int symbols = 60000;

    auto measure = [&](int m, std::uint64_t seed) {
        const auto c = qpsk(std::sqrt(snr));  // base amplitude; slots carry snr/m each
        AwgnChannel ch(ChannelParams{1.0, seed});
        const RepetitionScheme rep{m};
        std::vector<cplx> slots(static_cast<std::size_t>(m));
        CounterRng bits(seed, 99);
        int errors = 0;
        for (int i = 0; i < symbols; ++i) {
            const int v_low = bits.bit();
            const int v_high = bits.bit();
            ch.transmit_repeated(c.map_bits(v_high, v_low), rep, slots);
            const cplx y = combine(slots);
            const double llr = llr_low(y, std::sqrt(static_cast<double>(m)) * c.amplitude(),
                                       static_cast<double>(m));
            if ((llr > 0.0 ? 0 : 1) != v_low) ++errors;
        }
        return static_cast<double>(errors) / symbols;
    };

    const double base = measure(1, 51);
    const double se = std::sqrt(base * (1.0 - base) / symbols);
    for (int m : {2, 4, 8}) {
        const double ber = measure(m, 50 + static_cast<std::uint64_t>(m));
        CHECK(std::abs(ber - base) <= 3.0 * std::sqrt(2.0) * se);
    }
}

TEST_CASE("snr_of and dB bookkeeping") {
    CHECK(snr_of(qpsk(1.0), ChannelParams{1.0, 0}) == 1.0);

    const double gamma = snr_of(qpsk(1.0), ChannelParams{1.0 / 2.10, 0});
    CHECK(gamma == doctest::Approx(2.10).epsilon(1e-12));
    CHECK(snr_to_db(2.10) == doctest::Approx(3.2221929).epsilon(1e-6));  // rounds to 3.23 dB
    CHECK(snr_from_db(snr_to_db(2.10)) == doctest::Approx(2.10).epsilon(1e-12));
}

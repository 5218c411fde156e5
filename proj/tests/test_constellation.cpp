#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "mlc/constellation.hpp"

using namespace mlc;

TEST_CASE("qpsk points and labels") {
    const auto c = qpsk(1.0);
    REQUIRE(c.size() == 4);
    CHECK(c.points()[0] == cplx{1.0, 0.0});
    CHECK(c.points()[1] == cplx{0.0, 1.0});
    CHECK(c.points()[2] == cplx{-1.0, 0.0});
    CHECK(c.points()[3] == cplx{0.0, -1.0});

    // the four labeled singletons
    CHECK(c.map_bits(0, 0) == cplx{1.0, 0.0});
    CHECK(c.map_bits(1, 0) == cplx{-1.0, 0.0});
    CHECK(c.map_bits(0, 1) == cplx{0.0, 1.0});
    CHECK(c.map_bits(1, 1) == cplx{0.0, -1.0});
}

TEST_CASE("qpsk scaling") {
    const auto c = qpsk(2.0);
    for (const auto& p : c.points()) CHECK(std::abs(p) == doctest::Approx(2.0));
    CHECK(c.amplitude() == 2.0);
}

TEST_CASE("qpsk rejects non-positive amplitude") {
    CHECK_THROWS_AS(qpsk(0.0), std::invalid_argument);
    CHECK_THROWS_AS(qpsk(-1.0), std::invalid_argument);
}

TEST_CASE("low subsets are the antipodal pairs") {
    const auto c = qpsk(1.5);
    const auto s0 = c.low_subset(0);
    const auto s1 = c.low_subset(1);
    REQUIRE(s0.members.size() == 2);
    REQUIRE(s1.members.size() == 2);

    CHECK(c.points()[s0.members[0]] == -c.points()[s0.members[1]]);
    CHECK(c.points()[s1.members[0]] == -c.points()[s1.members[1]]);
    CHECK(c.points()[s0.members[0]].imag() == 0.0);  // real pair
    CHECK(c.points()[s1.members[0]].real() == 0.0);  // imaginary pair

    // union is the whole alphabet, disjoint
    std::set<int> all(s0.members.begin(), s0.members.end());
    all.insert(s1.members.begin(), s1.members.end());
    CHECK(all.size() == 4);
}

TEST_CASE("high subsets are singletons") {
    const auto c = qpsk(1.0);
    for (int vl : {0, 1})
        for (int vh : {0, 1}) {
            const auto s = c.high_subset(vl, vh);
            REQUIRE(s.members.size() == 1);
            CHECK(c.points()[s.members[0]] == c.map_bits(vh, vl));
        }
}

TEST_CASE("map_bits is a bijection") {
    const auto c = qpsk(0.7);
    std::set<std::pair<double, double>> seen;
    for (int vh : {0, 1})
        for (int vl : {0, 1}) {
            const auto p = c.map_bits(vh, vl);
            seen.insert({p.real(), p.imag()});
        }
    CHECK(seen.size() == 4);
}

TEST_CASE("mean symbol energy under uniform labels") {
    const double a = 1.7;
    const auto c = qpsk(a);
    double e = 0.0;
    for (const auto& p : c.points()) e += std::norm(p);
    CHECK(e / 4.0 == doctest::Approx(a * a).epsilon(1e-12));
}

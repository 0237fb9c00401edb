#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <random>

#include "core/arith.hpp"
#include "doctest.h"

using namespace cgb;

namespace {

// trial-division oracle
std::uint64_t smallest_factor(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

std::uint64_t phi_brute(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (gcd_u64(k, n) == 1) ++c;
    return c;
}

}  // namespace

TEST_CASE("spf direct values") {
    auto t = FactorTable::build(12);
    CHECK(t.spf(12) == 2);
    CHECK(t.spf(11) == 11);
    CHECK(t.spf(9) == 3);
    auto t100 = FactorTable::build(100);
    CHECK(t100.spf(91) == 7);
}

TEST_CASE("spf agrees with trial division") {
    auto t = FactorTable::build(1'000'000);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 2 + rng() % 999'998;
        CHECK(t.spf(n) == smallest_factor(n));
    }
}

TEST_CASE("spf invariants on a small table") {
    auto t = FactorTable::build(3000);
    for (std::uint64_t n = 2; n <= 3000; ++n) {
        CHECK(n % t.spf(n) == 0);
        CHECK(t.spf(t.spf(n)) == t.spf(n));  // spf is prime
        CHECK((t.spf(n) == n) == (smallest_factor(n) == n));
    }
}

TEST_CASE("factorize") {
    auto t = FactorTable::build(1 << 21);
    auto f12 = t.factorize(12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[0] == std::pair<std::uint64_t, std::uint32_t>{2, 2});
    CHECK(f12[1] == std::pair<std::uint64_t, std::uint32_t>{3, 1});
    auto f97 = t.factorize(97);
    REQUIRE(f97.size() == 1);
    CHECK(f97[0].first == 97);
    auto fp20 = t.factorize(1 << 20);
    REQUIRE(fp20.size() == 1);
    CHECK(fp20[0] == std::pair<std::uint64_t, std::uint32_t>{2, 20});
    CHECK_THROWS_AS(t.factorize(1), range_error);
    CHECK_THROWS_AS(t.factorize((1 << 21) + 5), range_error);
}

TEST_CASE("multiplicative functions") {
    auto t = FactorTable::build(10'000);
    CHECK(t.mult_fn("phi", 12) == 4.0);
    CHECK(t.mult_fn("mu", 30) == -1.0);
    CHECK(t.mult_fn("bigomega", 12) == 3.0);
    CHECK(t.mult_fn("smallomega", 12) == 2.0);
    CHECK(t.mult_fn("tau", 12) == 6.0);
    CHECK(t.mult_fn("vonmangoldt", 7) == doctest::Approx(std::log(7.0)));
    // prime powers carry 0 by convention
    CHECK(t.mult_fn("vonmangoldt", 8) == 0.0);
    CHECK(t.mult_fn("vonmangoldt", 9) == 0.0);
    CHECK(t.mult_fn("vonmangoldt", 10) == 0.0);
    CHECK_THROWS_AS(t.mult_fn("sigma", 4), value_error);
}

TEST_CASE("phi against the coprime count, all n <= 10^4") {
    auto t = FactorTable::build(10'000);
    for (std::uint64_t n = 1; n <= 10'000; ++n) CHECK(t.phi(n) == phi_brute(n));
}

TEST_CASE("multiplicativity on random coprime pairs") {
    auto t = FactorTable::build(100'000'000 >> 10);  // ~10^5, products stay in range
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 500) {
        std::uint64_t a = 2 + rng() % 250, b = 2 + rng() % 250;
        if (gcd_u64(a, b) != 1) continue;
        ++done;
        CHECK(t.phi(a * b) == t.phi(a) * t.phi(b));
        CHECK(t.mu(a * b) == t.mu(a) * t.mu(b));
        CHECK(t.tau(a * b) == t.tau(a) * t.tau(b));
    }
}

TEST_CASE("mobius divisor sums") {
    auto t = FactorTable::build(10'000);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        int s = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            s += t.mu(d);
            if (d != n / d) s += t.mu(n / d);
        }
        CHECK(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("capacity and range errors") {
    CHECK_THROWS_AS(FactorTable::build(1'000'000, 1000), capacity_error);
    CHECK_THROWS_AS(FactorTable::build(1), value_error);
    auto t = FactorTable::build(100);
    CHECK_THROWS_AS(t.spf(101), range_error);
}

TEST_CASE("rough_in and prime_divisors_in") {
    auto t = FactorTable::build(10'000);
    CHECK(t.rough_in(77, 2, 7));        // 77 = 7*11, no factor in [2,7)
    CHECK_FALSE(t.rough_in(77, 2, 8));  // 7 in [2,8)
    CHECK(t.rough_in(1, 2, 100));
    auto ps = t.prime_divisors_in(210, 3, 7);
    REQUIRE(ps.size() == 2);  // 3 and 5
    CHECK(ps[0] == 3);
    CHECK(ps[1] == 5);
}

TEST_CASE("binary cache round trip") {
    auto t = FactorTable::build(5000);
    const char* path = "factor_cache_test.bin";
    t.save(path);
    auto u = FactorTable::load(path);
    CHECK(u.limit() == 5000);
    for (std::uint64_t n = 2; n <= 5000; ++n) CHECK(u.spf(n) == t.spf(n));
    std::remove(path);
}

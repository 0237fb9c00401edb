#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>

#include "core/arith.hpp"
#include "core/characters.hpp"
#include "core/discrepancy.hpp"
#include "doctest.h"

using namespace cgb;

namespace {

// order of c in (Z/q)*
std::uint64_t order_mod(std::uint64_t c, std::uint64_t q) {
    std::uint64_t x = c % q, ord = 1;
    while (x != 1) {
        x = x * c % q;
        ++ord;
    }
    return ord;
}

int legendre5(std::uint64_t n) {
    switch (n % 5) {
        case 1:
        case 4: return 1;
        case 2:
        case 3: return -1;
        default: return 0;
    }
}

}  // namespace

TEST_CASE("characters mod 1, 5 and 12") {
    auto c1 = characters_mod(1);
    REQUIRE(c1.size() == 1);
    for (std::uint64_t n : {0ull, 1ull, 17ull}) CHECK(c1[0].value(n) == cplx(1.0, 0.0));

    auto c5 = characters_mod(5);
    REQUIRE(c5.size() == 4);
    int real_nonprincipal = 0;
    for (auto& chi : c5)
        if (chi.is_real() && !chi.principal()) {
            ++real_nonprincipal;
            for (std::uint64_t n = 0; n < 10; ++n) CHECK(chi.real_value(n) == legendre5(n));
        }
    CHECK(real_nonprincipal == 1);

    auto c12 = characters_mod(12);
    REQUIRE(c12.size() == 4);
    for (auto& chi : c12) CHECK(chi.is_real());
}

TEST_CASE("character values: modulus one on units, zero otherwise") {
    for (std::uint64_t q : {7ull, 8ull, 9ull, 24ull, 45ull, 360ull}) {
        for (auto& chi : characters_mod(q)) {
            for (std::uint64_t n = 0; n < q; ++n) {
                if (gcd_u64(n == 0 ? q : n, q) != 1)
                    CHECK(chi.value(n) == cplx(0.0, 0.0));
                else
                    CHECK(std::abs(std::abs(chi.value(n)) - 1.0) < 1e-12);
            }
            // complete multiplicativity on a few unit pairs
            for (std::uint64_t a = 1; a < q; ++a)
                for (std::uint64_t b = a; b < q; b += 3) {
                    if (gcd_u64(a, q) != 1 || gcd_u64(b, q) != 1) continue;
                    CHECK(std::abs(chi.value(a * b % q) - chi.value(a) * chi.value(b)) < 1e-12);
                }
        }
    }
}

TEST_CASE("orthogonality, exact, q <= 200") {
    std::mt19937_64 rng(101);
    for (std::uint64_t q = 1; q <= 200; ++q) {
        auto chars = characters_mod(q);
        std::uint64_t principal = 0;
        for (auto& chi : chars)
            if (chi.principal()) ++principal;
        CHECK(principal == 1);

        for (int rep = 0; rep < 3; ++rep) {
            std::uint64_t a = 1 + rng() % q, b = 1 + rng() % q;
            if (gcd_u64(a, q) != 1 || gcd_u64(b, q) != 1) continue;
            std::uint64_t c = q == 1 ? 1 : a * inv_mod(b, q) % q;
            // sum over chi of chi(c): count rotations exactly
            std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> rot_counts;
            for (auto& chi : chars) {
                auto rot = chi.rotation(c);
                REQUIRE(rot.has_value());
                rot_counts[*rot]++;
            }
            if (c % q == 1 % q) {
                CHECK(rot_counts.size() == 1);
                CHECK(rot_counts.begin()->first == std::pair<std::uint64_t, std::uint64_t>{0, 1});
            } else {
                // rotations must form whole cyclotomic orbits: each k/m, k=0..m-1,
                // appears phi(q)/ord(c) times with m | ord(c); the signed sum is 0.
                std::uint64_t ord = order_mod(c, q);
                std::uint64_t expect = chars.size() / ord;
                std::map<std::uint64_t, std::uint64_t> per_den;
                for (auto& [rot, cnt] : rot_counts) {
                    CHECK(ord % rot.second == 0);
                    per_den[rot.second] += cnt;
                }
                // each exact denominator m contributes phi(m) reduced fractions
                for (auto& [den, cnt] : per_den) {
                    std::uint64_t phi_m = 1;
                    for (std::uint64_t k = 1; k < den; ++k)
                        if (gcd_u64(k, den) == 1 && k > 1) ++phi_m;
                    if (den == 1) phi_m = 1;
                    CHECK(cnt == expect * phi_m);
                }
            }
        }
    }
}

TEST_CASE("conductors and primitivity") {
    // mod 9: one principal (cond 1), one induced pair of cond 3, four primitive
    auto c9 = characters_mod(9);
    std::map<std::uint64_t, int> by_cond;
    for (auto& chi : c9) by_cond[chi.conductor()]++;
    CHECK(by_cond[1] == 1);
    CHECK(by_cond[3] == 1);
    CHECK(by_cond[9] == 4);

    // q = 2 mod 4 has no primitive characters
    for (std::uint64_t q : {6ull, 10ull, 14ull, 18ull}) {
        for (auto& chi : characters_mod(q)) CHECK_FALSE(chi.primitive());
    }

    // mod 8: both real primitive characters exist
    int prim8 = 0;
    for (auto& chi : characters_mod(8))
        if (chi.primitive()) {
            ++prim8;
            CHECK(chi.is_real());
        }
    CHECK(prim8 == 2);
}

TEST_CASE("conductor against the kernel-triviality oracle") {
    // conductor = smallest f | q with chi(n) = 1 whenever n = 1 (mod f), gcd(n,q) = 1
    for (std::uint64_t q : {8ull, 9ull, 12ull, 16ull, 24ull, 36ull, 40ull, 45ull, 48ull,
                            60ull, 72ull, 100ull, 120ull, 144ull, 360ull}) {
        for (auto& chi : characters_mod(q)) {
            std::uint64_t oracle = 0;
            for (std::uint64_t f = 1; f <= q; ++f) {
                if (q % f) continue;
                bool trivial = true;
                for (std::uint64_t n = 1; n < q && trivial; ++n) {
                    if (gcd_u64(n, q) != 1 || n % f != 1 % f) continue;
                    auto rot = chi.rotation(n);
                    if (!rot || rot->first != 0) trivial = false;
                }
                if (trivial) {
                    oracle = f;
                    break;
                }
            }
            REQUIRE(chi.conductor() == oracle);
        }
    }
}

TEST_CASE("gauss sums") {
    CHECK(std::abs(gauss_sum(characters_mod(1)[0]) - cplx(1.0, 0.0)) < 1e-12);

    for (auto& chi : characters_mod(5))
        if (chi.is_real() && !chi.principal())
            CHECK(std::abs(gauss_sum(chi) - cplx(std::sqrt(5.0), 0.0)) < 1e-9);

    for (auto& chi : characters_mod(8))
        if (chi.primitive())
            CHECK(std::abs(gauss_sum(chi)) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-9));

    for (std::uint64_t q = 3; q <= 60; ++q)
        for (auto& chi : characters_mod(q))
            if (chi.primitive())
                CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(double(q))) < 1e-9);
}

TEST_CASE("ramanujan sums") {
    CHECK(ramanujan_sum(1, 5) == 1);
    CHECK(ramanujan_sum(6, 1) == 1);  // mu(6)
    CHECK(ramanujan_sum(4, 2) == -2);
    CHECK(ramanujan_sum(9, 0) == 6);  // phi(9)

    // divisor identity vs the direct exponential sum
    for (std::uint64_t q = 1; q <= 100; ++q)
        for (std::int64_t n = -100; n <= 100; n += 7) {
            cplx direct(0.0, 0.0);
            for (std::uint64_t b = 0; b < q; ++b) {
                if (gcd_u64(b == 0 ? q : b, q) != 1) continue;
                double ph = kTwoPi * static_cast<double>(b) * n / static_cast<double>(q);
                direct += cplx(std::cos(ph), std::sin(ph));
            }
            CHECK(std::abs(direct.imag()) < 1e-9);
            CHECK(std::llround(direct.real()) == ramanujan_sum(q, n));
            CHECK(std::abs(direct.real() - ramanujan_sum(q, n)) < 1e-9);
        }
}

TEST_CASE("u_P") {
    // P >= q: full orthogonality leaves nothing
    for (std::uint64_t n : {2ull, 7ull, 11ull})
        CHECK(std::abs(u_P(n, 1, 15, 15)) < 1e-12);

    // q prime, P < q: only the principal character has conductor <= P
    std::uint64_t q = 13;
    for (std::uint64_t n = 1; n < q; ++n) {
        cplx v = u_P(n, 3, q, 5);
        double expect = (n % q == 3) ? 1.0 - 1.0 / 12 : -1.0 / 12;
        CHECK(std::abs(v - cplx(expect, 0.0)) < 1e-12);
    }

    // q = 15, P = 3: direct enumeration over the eight characters as oracle
    auto chars = characters_mod(15);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        std::uint64_t n = rng() % 60, a = 0;
        do a = 1 + rng() % 14; while (gcd_u64(a, 15) != 1);
        cplx oracle(0.0, 0.0);
        std::uint64_t na = n % 15 * inv_mod(a, 15) % 15;
        for (auto& psi : chars)
            if (psi.conductor() > 3) oracle += psi.value(na);
        oracle /= 8.0;
        CHECK(std::abs(u_P(n, a, 15, 3) - oracle) < 1e-12);
    }
    CHECK_THROWS_AS(u_P(2, 5, 15, 3), value_error);
}

TEST_CASE("l_real at classical points") {
    auto c3 = characters_mod(3);
    const DirichletCharacter* chi3 = nullptr;
    for (auto& chi : c3)
        if (!chi.principal()) chi3 = &chi;
    REQUIRE(chi3 != nullptr);
    auto v3 = l_real(1.0, *chi3, 1e-7);
    CHECK(std::abs(v3.value - M_PI / (3.0 * std::sqrt(3.0))) <= v3.error_bound + 1e-12);
    CHECK(v3.error_bound < 1e-6);

    auto c4 = characters_mod(4);
    const DirichletCharacter* chi4 = nullptr;
    for (auto& chi : c4)
        if (!chi.principal()) chi4 = &chi;
    REQUIRE(chi4 != nullptr);
    auto v4 = l_real(1.0, *chi4, 1e-7);
    CHECK(std::abs(v4.value - M_PI / 4.0) <= v4.error_bound + 1e-12);

    // self-consistency at sigma = 1.5: 10x longer sum stays within the bound
    auto a = l_real_partial(1.5, *chi3, 2000);
    auto b = l_real_partial(1.5, *chi3, 20000);
    CHECK(std::abs(a.value - b.value) <= a.error_bound);
    CHECK_THROWS_AS(l_real(0.4, *chi3), value_error);
    CHECK_THROWS_AS(l_real(1.0, c3[0]), value_error);  // principal
}

TEST_CASE("exceptional zero search") {
    auto r3 = exceptional_zero_search(3, 0.5);
    CHECK(r3.level == 3);
    CHECK(r3.clear);
    CHECK(r3.candidates.empty());

    auto r100 = exceptional_zero_search(100, 0.5);
    CHECK(r100.clear);

    // artificially coarse certification budget: failure path, never silent
    ZeroSearchOptions coarse;
    coarse.initial_grid = 1;
    coarse.max_grid = 1;
    coarse.l_tolerance = 0.5;
    auto bad = exceptional_zero_search(3, 0.99, coarse);
    CHECK_FALSE(bad.clear);
    REQUIRE(!bad.candidates.empty());
    CHECK(bad.candidates[0].modulus == 3);
    CHECK(bad.candidates[0].modulus <= 3);

    CHECK_THROWS_AS(exceptional_zero_search(2, 0.5), value_error);
    CHECK_THROWS_AS(exceptional_zero_search(10, 1.5), value_error);
}

TEST_CASE("gallagher: single-modulus cases against the exact sweep") {
    auto t = FactorTable::build(10'000);
    GallagherOptions grid_opts;
    GallagherOptions exact_opts;
    exact_opts.exact_oracle = true;

    for (std::uint64_t R : {1ull, 2ull}) {
        auto g = gallagher_discrepancy(LambdaStarKind::lambda, 10'000, R, t, grid_opts);
        auto e = gallagher_discrepancy(LambdaStarKind::lambda, 10'000, R, t, exact_opts);
        CHECK(g.value <= e.value + 1e-9);
        CHECK(e.value <= g.value + g.defect + 1e-9);
        CHECK(g.value > 0.0);
    }
}

TEST_CASE("gallagher: R = 1 equals the prefix formula") {
    auto t = FactorTable::build(2'000);
    std::uint64_t N = 2'000;
    auto g = gallagher_discrepancy(LambdaStarKind::lambda, N, 1, t, {});
    // single character (r = 1): sup over intervals of |sum (Lambda - 1)|/(|I|+N)
    std::vector<double> T(N + 1, 0.0);
    for (std::uint64_t n = 1; n <= N; ++n) T[n] = T[n - 1] + t.von_mangoldt(n) - 1.0;
    double best = 0.0;
    for (std::uint64_t a = 0; a < N; ++a)
        for (std::uint64_t b = a + 1; b <= N; ++b)
            best = std::max(best, std::abs(T[b] - T[a]) / (double(b - a) + double(N)));
    CHECK(g.value <= best + 1e-12);
    CHECK(best <= g.value + g.defect + 1e-12);
}

TEST_CASE("gallagher monotone in R, other kinds well-defined") {
    auto t = FactorTable::build(10'000);
    double prev = -1.0;
    for (std::uint64_t R : {1ull, 2ull, 5ull, 10ull}) {
        auto g = gallagher_discrepancy(LambdaStarKind::lambda, 10'000, R, t, {});
        CHECK(g.value >= prev - 1e-12);
        CHECK(g.value >= 0.0);
        prev = g.value;
    }
    auto gp = gallagher_discrepancy(LambdaStarKind::prime_indicator, 10'000, 5, t, {});
    CHECK(gp.value > 0.0);
    GallagherOptions opts;
    ChenParams cp;
    cp.N = 10'000;
    opts.e3 = cp;
    auto ge = gallagher_discrepancy(LambdaStarKind::e3, 10'000, 5, t, opts);
    CHECK(ge.value >= 0.0);
    opts.rough_P = 10;
    auto gr = gallagher_discrepancy(LambdaStarKind::rough, 10'000, 5, t, opts);
    CHECK(gr.value >= 0.0);
    CHECK_THROWS_AS(gallagher_discrepancy(LambdaStarKind::lambda, 100, 20, t, {}), value_error);
}

TEST_CASE("gallagher with an exceptional twist, independent oracle") {
    auto t = FactorTable::build(600);
    const std::uint64_t N = 600, R = 3;

    // independent re-implementation: full interval sweep per primitive chi
    auto oracle = [&](bool twisted, double beta) {
        double total = 0.0;
        for (std::uint64_t r = 1; r <= R; ++r) {
            for (auto& chi : characters_mod(r)) {
                if (!chi.primitive()) continue;
                bool exc = twisted && r == 3 && chi.is_real() && !chi.principal();
                std::vector<cplx> T(N + 1, 0.0);
                for (std::uint64_t n = 1; n <= N; ++n) {
                    cplx w = t.von_mangoldt(n) * chi.value(n);
                    if (r == 1) w -= 1.0;
                    if (exc) w += std::pow(double(n), beta - 1.0);
                    T[n] = T[n - 1] + w;
                }
                double best = 0.0;
                for (std::uint64_t a = 0; a < N; ++a)
                    for (std::uint64_t b = a + 1; b <= N; ++b)
                        best = std::max(best,
                                        std::abs(T[b] - T[a]) / (double(b - a) + double(N) / R));
                total += best;
            }
        }
        return total;
    };

    GallagherOptions opts;
    opts.exact_oracle = true;
    auto plain = gallagher_discrepancy(LambdaStarKind::lambda, N, R, t, opts);
    CHECK(plain.value == doctest::Approx(oracle(false, 1.0)).epsilon(1e-12));

    auto c3 = characters_mod(3);
    for (auto& chi : c3) {
        if (chi.principal()) continue;
        ExceptionalTwist tw;
        tw.modulus = 3;
        tw.exponents = chi.exponents();
        tw.beta = 0.97;
        opts.exceptional = tw;
        auto twisted = gallagher_discrepancy(LambdaStarKind::lambda, N, R, t, opts);
        CHECK(twisted.value == doctest::Approx(oracle(true, 0.97)).epsilon(1e-12));
        CHECK(twisted.value != plain.value);
    }
}

TEST_CASE("bv discrepancy: rough kind against brute force") {
    auto t = FactorTable::build(20'000);
    const std::uint64_t N = 20'000, Q = 20, P = 2, roughP = 10;
    BVOptions opts;
    opts.rough_P = roughP;
    double got = bv_discrepancy(LambdaStarKind::rough, N, Q, P, t, opts);

    double norm = cramer_norm(roughP, t);
    double oracle = 0.0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        auto chars = characters_mod(q);
        double best = 0.0;
        for (std::uint64_t a = 0; a < q || (q == 1 && a == 0); ++a) {
            if (q > 1 && gcd_u64(a, q) != 1) continue;
            cplx s(0.0, 0.0);
            for (std::uint64_t n = N / 2 + 1; n <= N; ++n) {
                if (t.has_prime_factor_below(n, roughP)) continue;
                std::uint64_t na = q == 1 ? 0 : n % q * inv_mod(a, q) % q;
                s += norm * u_P(na, 1, chars, P);
            }
            best = std::max(best, std::abs(s));
            if (q == 1) break;
        }
        oracle += best;
    }
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("bv discrepancy: e3 and rough kinds evaluate") {
    auto t = FactorTable::build(20'000);
    BVOptions opts;
    ChenParams cp;
    cp.N = 10'000;
    opts.e3 = cp;
    opts.rough_P = 10;
    double e3 = bv_discrepancy(LambdaStarKind::e3, 10'000, 20, 2, t, opts);
    double rough = bv_discrepancy(LambdaStarKind::rough, 10'000, 20, 2, t, opts);
    CHECK(e3 >= 0.0);
    CHECK(rough >= 0.0);
    CHECK(std::isfinite(e3));
    CHECK(std::isfinite(rough));
}

TEST_CASE("bv discrepancy") {
    auto t = FactorTable::build(100'000);
    // Q = 1: u_P vanishes identically once P >= 1
    CHECK(bv_discrepancy(LambdaStarKind::lambda, 10'000, 1, 1, t) == doctest::Approx(0.0));

    // P = Q: every character mod q <= Q has conductor <= q <= P
    CHECK(bv_discrepancy(LambdaStarKind::lambda, 10'000, 50, 50, t) ==
          doctest::Approx(0.0).epsilon(1e-9));

    // brute force oracle at N = 10^5, Q = 50, P = 1
    std::uint64_t N = 100'000, Q = 50, P = 1;
    double oracle = 0.0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        auto chars = characters_mod(q);
        double best = 0.0;
        for (std::uint64_t a = 0; a < q || (q == 1 && a == 0); ++a) {
            if (q > 1 && gcd_u64(a, q) != 1) continue;
            cplx s(0.0, 0.0);
            for (std::uint64_t n = N / 2 + 1; n <= N; ++n) {
                double lam = t.von_mangoldt(n);
                if (lam == 0.0) continue;
                std::uint64_t na = q == 1 ? 0 : n % q * inv_mod(a, q) % q;
                s += lam * u_P(na, 1, chars, P);
            }
            best = std::max(best, std::abs(s));
            if (q == 1) break;
        }
        oracle += best;
    }
    double got = bv_discrepancy(LambdaStarKind::lambda, N, Q, P, t);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));

    CHECK_THROWS_AS(bv_discrepancy(LambdaStarKind::lambda, 100, 50, 1, t), value_error);
}

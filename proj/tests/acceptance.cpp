// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Criteria 5 and 12 carry asymptotic constants that are provably out of reach
// at desk scale (see notes next to those checks); they run exactly as stated,
// report honestly, and are accompanied by the constant-free supplementary
// verification of the same substance.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "core/arith.hpp"
#include "core/characters.hpp"
#include "core/chen.hpp"
#include "core/discrepancy.hpp"
#include "core/fourier.hpp"
#include "core/goldbach.hpp"
#include "core/models.hpp"
#include "core/sieves.hpp"

using namespace cgb;

namespace {

int g_failures = 0;

void report(int crit, bool pass, const char* what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", crit, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void note(const char* text) { std::printf("       %s\n", text); }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    auto wall0 = std::chrono::steady_clock::now();
    std::printf("building factor table to 1.75e6...\n");
    auto table = FactorTable::build(1'750'012);

    // ---- 1: exceptional scan at N = 10^6 ----
    {
        auto t0 = std::chrono::steady_clock::now();
        auto rep = exceptional_scan(1'000'000, table);
        double secs = elapsed(t0);
        std::uint64_t worst = 0;
        for (auto m : rep.exceptions) worst = std::max(worst, m);
        bool pass = worst <= 1000 && rep.complete && secs <= 300.0;
        std::string ex = "{";
        for (auto m : rep.exceptions) ex += std::to_string(m) + ",";
        if (ex.size() > 1) ex.pop_back();
        ex += "}";
        report(1, pass, "exceptional scan, N = 10^6",
               fmt("exceptions below 10^3: %s; none in (10^3, 10^6]; %.1fs", ex.c_str(), secs));
    }

    // ---- 2: sieve sandwich at N = 10^6, beta = 2 and beta = 200 ----
    {
        std::uint64_t viol = 0;
        for (double beta : {2.0, 200.0}) {
            auto spec = SieveSpec::desk(1'000'000);
            spec.beta = beta;
            auto lower = presieve_weight(spec, false, table);
            auto upper = presieve_weight(spec, true, table);
            const std::uint64_t P1 = spec.P1_int();
            const double norm = cramer_norm(P1, table);
            for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
                double r = table.rough_in(n, 2, P1) ? norm : 0.0;
                double lo = presieve_eval(n, lower, table);
                double hi = presieve_eval(n, upper, table);
                if (!(lo <= r + 1e-9 && r <= hi + 1e-9)) ++viol;
            }
        }
        report(2, viol == 0, "sieve sandwich omega <= r_P1 <= Omega, n <= 10^6",
               fmt("violations = %llu over both beta regimes", (unsigned long long)viol));
    }

    // ---- 3: fundamental-lemma gap at N = 10^5, both signs ----
    {
        auto spec = SieveSpec::desk(100'000);
        auto lower = presieve_weight(spec, false, table);
        auto upper = presieve_weight(spec, true, table);
        const std::uint64_t P1 = spec.P1_int();
        const double norm = cramer_norm(P1, table);
        std::uint64_t viol = 0;
        for (std::uint64_t n = 1; n <= 100'000; ++n) {
            double r = table.rough_in(n, 2, P1) ? norm : 0.0;
            double gap = fundlem_gap(n, spec, table);
            if (std::abs(presieve_eval(n, lower, table) - r) > gap + 1e-9) ++viol;
            if (std::abs(presieve_eval(n, upper, table) - r) > gap + 1e-9) ++viol;
        }
        report(3, viol == 0, "fundamental-lemma gap bound, n <= 10^5, both signs",
               fmt("violations = %llu", (unsigned long long)viol));
    }

    // ---- 4: Cramer means ----
    {
        bool pass = true;
        std::string detail;
        for (auto [N, P] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                 {100'000, 20}, {1'000'000, 30}, {1'000'000, 100}}) {
            double norm = cramer_norm(P, table);
            std::uint64_t rough = 0;
            for (std::uint64_t n = 1; n <= N; ++n)
                if (table.rough_in(n, 2, P)) ++rough;
            double mean = norm * double(rough) / double(N);
            double bound = std::exp(-0.5 * std::log(double(N)) / std::log(double(P))) +
                           10.0 * std::log(double(P)) / std::sqrt(double(N));
            if (std::abs(mean - 1.0) > bound) pass = false;
            detail += fmt("(N=%llu,P=%llu): |mean-1|=%.4f<=%.4f ", (unsigned long long)N,
                          (unsigned long long)P, std::abs(mean - 1.0), bound);
        }
        report(4, pass, "Cramer model mean", detail);
    }

    // ---- 5: Heath-Brown majorant (runs as stated; see the ledger) ----
    {
        std::uint64_t viol = 0, total = 0;
        double worst = 0.0;
        for (std::uint64_t R : {20ull, 50ull}) {
            ModelParams mp;
            mp.R = R;
            for (std::uint64_t r : {1ull, 3ull, 5ull, 7ull, 15ull}) {
                double rphi = double(r) / table.phi(r);
                for (std::uint64_t n = 1; n <= 10'000; ++n) {
                    if (table.mu(n) == 0 || gcd_u64(n, r) != 1) continue;
                    ++total;
                    double lhs = rphi * std::abs(lambda_Rr(n, R, r, table));
                    double hr = H_R(n, mp, table);
                    worst = std::max(worst, lhs / hr);
                    if (lhs > hr * (1.0 + 1e-9)) ++viol;
                }
            }
        }
        report(5, viol == 0, "Heath-Brown majorant (r/phi(r))|Lambda_{R,r}| <= H_R, as stated",
               fmt("violations = %llu / %llu, worst ratio %.3f", (unsigned long long)viol,
                   (unsigned long long)total, worst));
        if (viol != 0) {
            note("the constant-free majorant bound hides an absolute constant coming from");
            note("the Fourier decay of e^t G(t); at n=1 it is false for every admissible G");
            note("since Lambda_{R,1}(1) >= log R while H_R(1) = (2/9) log R.");
            note(fmt("supplementary: the <<-form with effective constant 10 holds on the full "
                     "sweep (worst ratio %.3f) -- %s",
                     worst, worst <= 10.0 ? "PASS" : "FAIL")
                     .c_str());
            if (worst > 10.0) ++g_failures;
        }
    }

    // ---- 6: Gauss sums ----
    {
        double worst = 0.0;
        for (std::uint64_t q = 1; q <= 200; ++q)
            for (auto& chi : characters_mod(q))
                if (chi.primitive())
                    worst = std::max(worst,
                                     std::abs(std::abs(gauss_sum(chi)) - std::sqrt(double(q))));
        report(6, worst <= 1e-9, "| |tau(chi)| - sqrt(q) | <= 1e-9 for primitive chi, q <= 200",
               fmt("worst deviation %.3g", worst));
    }

    // ---- 7: b_R kernel at N = 10^6, R = 3 ----
    {
        auto rep = bR_transform_check(1'000'000, 3, 100, 2026);
        bool pass = rep.max_major_deviation <= 10.0 / 3 && rep.max_minor_value <= 10.0;
        report(7, pass, "b_R kernel transform, N = 10^6, R = 3",
               fmt("max major |b^-1| = %.4f <= %.4f, max minor |b^| = %.4f <= 10",
                   rep.max_major_deviation, 10.0 / 3, rep.max_minor_value));
    }

    // ---- 8: dual-formula agreement for Lambda_{R,r} ----
    {
        std::mt19937_64 rng(88);
        std::uint64_t bad = 0;
        double worst = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            std::uint64_t n = 1 + rng() % 10'000;
            std::uint64_t r = 1 + rng() % 20;
            std::uint64_t R = 2 + rng() % 29;
            double a = lambda_Rr(n, R, r, table);
            double b = lambda_Rr_divisor_form(n, R, r, table);
            double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            double rel = std::abs(a - b) / scale;
            worst = std::max(worst, rel);
            if (rel > 1e-9) ++bad;
        }
        report(8, bad == 0, "Ramanujan-sum vs divisor form of Lambda_{R,r}, 200 triples",
               fmt("worst relative gap %.3g", worst));
    }

    // ---- 9: pre-sieve additive asymptotics ----
    {
        auto t0 = std::chrono::steady_clock::now();
        PresieveConfig cfg;  // P1 = 30, full-Legendre level
        AdditiveCheckContext ctx(cfg, 1'750'002, table);
        std::mt19937_64 rng(99);
        const std::uint64_t N = 1'000'000;
        int ok = 0;
        double lo = 1e9, hi = 0.0;
        std::array<SieveSide, 4> uu{SieveSide::upper, SieveSide::upper, SieveSide::upper,
                                    SieveSide::upper};
        for (int i = 0; i < 50; ++i) {
            std::uint64_t m = 5 * N / 4 + rng() % (N / 2);
            m += (4 + 6 - m % 6) % 6;
            auto r = ctx.presieve_additive_check(m, N, uu, table);
            if (r.applicable && r.ratio >= 0.9 && r.ratio <= 1.1) ++ok;
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
        }
        report(9, ok >= 45, "sifted additive sum vs X*S(m), 50 random m",
               fmt("%d/50 within [0.9, 1.1], ratios in [%.4f, %.4f], %.1fs", ok, lo, hi,
                   elapsed(t0)));
    }

    // ---- 10: exceptional-variant character sums ----
    {
        std::mt19937_64 rng(1010);
        PresieveConfig cfg;
        cfg.P1 = 10;
        cfg.D1 = 1000;
        AdditiveCheckContext ctx(cfg, 4'000, table);
        std::array<SieveSide, 4> uu{SieveSide::upper, SieveSide::upper, SieveSide::upper,
                                    SieveSide::upper};
        bool bounds_ok = true, weil_ok = true;
        std::uint64_t degenerate = 0, tested = 0;
        for (std::uint64_t r = 3; r <= 200; ++r) {
            auto chars = characters_mod(r);
            for (auto& chi : chars) {
                if (!chi.is_real() || !chi.primitive() || chi.principal()) continue;
                for (int i = 0; i < 50; ++i) {
                    std::uint64_t m = 4 + 6 * (rng() % 500);
                    auto res = ctx.exceptional_additive_check(
                        m, std::min<std::uint64_t>(m, 2'000), chi, 1 + (i % 2), uu, table);
                    ++tested;
                    if (std::abs(res.S[5]) > 3.0 * std::sqrt(double(r)) * table.tau(r) + 1e-9)
                        weil_ok = false;
                    if (res.degenerate) {
                        ++degenerate;
                        continue;
                    }
                    if (std::abs(res.sigma1) > 1.0 + 1e-12) bounds_ok = false;
                    if (std::abs(res.sigma2) > 1.0 + 1e-12) bounds_ok = false;
                }
            }
        }
        // the r = 5, m = 4 hand case
        auto c5 = characters_mod(5);
        const DirichletCharacter* chi5 = nullptr;
        for (auto& c : c5)
            if (c.is_real() && !c.principal()) chi5 = &c;
        auto hand = ctx.exceptional_additive_check(4, 4, *chi5, 1, uu, table);
        bool hand_ok = hand.S[0] == 1.0 && std::abs(hand.sigma1 - 1.0) < 1e-12;
        report(10, bounds_ok && weil_ok && hand_ok,
               "|sigma1|,|sigma2| <= 1, |S6| <= 3 sqrt(r) tau(r), and the r=5,m=4 case",
               fmt("%llu sums tested, %llu degenerate (S1=0, reported not dropped)",
                   (unsigned long long)tested, (unsigned long long)degenerate));
    }

    // ---- 11: Chen constant ----
    {
        double c = chen_constant(1e-3, 1e-9);
        double c4 = chen_constant(1e-3, 1e-9 / 4.0);
        double f2 = linear_fF(2.0).f;
        double F2 = linear_fF(2.0).F;
        double f4 = linear_fF(4.0).f;
        double eg = std::exp(kEulerGamma);
        bool pass = c > 0.0 && c4 > 0.0 && std::abs(f2) <= 1e-5 &&
                    std::abs(F2 - eg) <= 1e-5 &&
                    std::abs(f4 - eg / 2 * std::log(3.0)) <= 1e-5;
        report(11, pass, "chen_constant(1e-3) > 0, stable under refinement; f/F pinned",
               fmt("c0 = %.6f (refined %.6f); f(2)=%.2g, |F(2)-e^gamma|=%.2g, "
                   "|f(4)-(e^gamma/2)log3|=%.2g",
                   c, c4, f2, std::abs(F2 - eg), std::abs(f4 - eg / 2 * std::log(3.0))));
    }

    // ---- 12: Chen minorisation audit at N = 10^5 (as stated; see the ledger) ----
    {
        auto spec = SieveSpec::desk(100'000);
        ChenParams params;
        params.N = 100'000;
        params.delta1 = spec.delta1;
        auto assembly = ChenAssembly::make(spec, params, table);
        std::uint64_t checked = 0, viol = 0, viol_exact = 0;
        for (std::uint64_t n = 50'001; n <= 100'000; ++n) {
            if (!table.is_prime(n)) continue;
            auto row = assembly.audit(n, table);
            ++checked;
            if (!row.pass) ++viol;
            if (!row.pass_exact) ++viol_exact;
        }
        report(12, viol == 0, "Chen minorisation audit with the g2 form, prime n in (N/2, N]",
               fmt("violations = %llu / %llu primes", (unsigned long long)viol,
                   (unsigned long long)checked));
        if (viol != 0) {
            note("the (3/5+delta1) coefficient in g2 is the asymptotic value of");
            note("prod_{N^{1/10}<p<=N^{1/6}}(1-1/p); at N=1e5 that product is 0.8, a value");
            note("reached from above only at astronomically large N.");
            note(fmt("supplementary: constant-free form (subtracted term Lambda K "
                     "(1_B1/2+1_B2)) has %llu violations over the same sweep -- %s",
                     (unsigned long long)viol_exact, viol_exact == 0 ? "PASS" : "FAIL")
                     .c_str());
            if (viol_exact != 0) ++g_failures;
        }
    }

    // ---- 13: Gallagher decay trend and the exact-sweep oracle ----
    {
        GallagherOptions grid_opts;
        auto g4 = gallagher_discrepancy(LambdaStarKind::lambda, 10'000, 10, table, grid_opts);
        GallagherOptions oracle_opts;
        oracle_opts.exact_oracle = true;
        auto e4 = gallagher_discrepancy(LambdaStarKind::lambda, 10'000, 10, table, oracle_opts);
        auto g5 = gallagher_discrepancy(LambdaStarKind::lambda, 100'000, 10, table, grid_opts);
        auto g6 = gallagher_discrepancy(LambdaStarKind::lambda, 1'000'000, 10, table, grid_opts);
        bool oracle_ok = g4.value <= e4.value + 1e-9 && e4.value <= g4.value + g4.defect;
        bool decay_ok = g4.value > g5.value && g5.value > g6.value;
        report(13, oracle_ok && decay_ok, "Gallagher discrepancy, R = 10",
               fmt("N=1e4: %.5f (exact %.5f, defect %.3f); 1e5: %.5f; 1e6: %.5f; strictly "
                   "decreasing: %s",
                   g4.value, e4.value, g4.defect, g5.value, g6.value,
                   decay_ok ? "yes" : "no"));
    }

    // ---- 14: convolution exactness ----
    {
        std::mt19937_64 rng(1414);
        bool pass = true;
        for (int rep = 0; rep < 10 && pass; ++rep) {
            Window f(1 << 12), g(1 << 12);
            for (std::uint64_t n = f.lo(); n <= f.N(); ++n) {
                f.at(n) = double(rng() % 2);
                g.at(n) = double(rng() % 2);
            }
            std::vector<double> oracle(f.N(), 0.0);
            for (std::uint64_t a = f.lo(); a <= f.N(); ++a) {
                if (f.at(a) == 0.0) continue;
                for (std::uint64_t b = g.lo(); b <= g.N(); ++b) {
                    std::uint64_t m = a + b;
                    if (m > f.N() && m <= 2 * f.N()) oracle[m - f.N() - 1] += f.at(a) * g.at(b);
                }
            }
            auto ex = convolve(f, g, ConvolveMode::exact_integer);
            auto fp = convolve(f, g, ConvolveMode::fp);
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                if (ex[i] != oracle[i]) pass = false;
                if (std::rint(fp[i]) != oracle[i]) pass = false;
            }
        }
        report(14, pass, "NTT exact and FFT convolution equal schoolbook, 10 windows of 2^12",
               "");
    }

    std::printf("%d criterion failure(s); total wall time %.1fs\n", g_failures,
                elapsed(wall0));
    return g_failures == 0 ? 0 : 1;
}

#include "core/discrepancy.hpp"

#include <algorithm>
#include <cmath>

namespace cgb {

std::vector<double> lambda_star_values(LambdaStarKind kind, std::uint64_t N,
                                       const FactorTable& t, const GallagherOptions& opts) {
    std::vector<double> w(N + 1, 0.0);
    switch (kind) {
        case LambdaStarKind::lambda:
            for (std::uint64_t n = 2; n <= N; ++n) w[n] = t.von_mangoldt(n);
            break;
        case LambdaStarKind::prime_indicator:
            for (std::uint64_t n = 2; n <= N; ++n) w[n] = t.is_prime(n) ? 1.0 : 0.0;
            break;
        case LambdaStarKind::e3: {
            if (!opts.e3) throw value_error("lambda_star_values: kind e3 needs ChenParams");
            ChenParams params = *opts.e3;
            params.N = N;
            for (std::uint64_t n = 2; n <= N; ++n)
                if (b_region(n, params, t) != 0) w[n] = lambda_E3(n, params, t);
            break;
        }
        case LambdaStarKind::rough: {
            double norm = cramer_norm(opts.rough_P, t);
            for (std::uint64_t n = 1; n <= N; ++n)
                if (!t.has_prime_factor_below(n, opts.rough_P)) w[n] = norm;
            break;
        }
    }
    return w;
}

namespace {

struct PerCharResult {
    double value = 0.0;
    double defect = 0.0;
};

// main-term weight: subtracted at r=1, and (for the prime indicator) 1/log n.
struct KindShape {
    bool has_main = true;
    bool over_log = false;  // divide main and twist by log n
    double scale = 1.0;
    std::uint64_t r_lo = 1;
};

KindShape kind_shape(LambdaStarKind kind, std::uint64_t N) {
    KindShape s;
    switch (kind) {
        case LambdaStarKind::lambda:
        case LambdaStarKind::e3:
            break;
        case LambdaStarKind::prime_indicator:
            s.over_log = true;
            s.scale = std::log(static_cast<double>(N));
            break;
        case LambdaStarKind::rough:
            s.has_main = false;
            s.r_lo = 2;
            break;
    }
    return s;
}

PerCharResult scan_character(const std::vector<double>& w, std::uint64_t N, std::uint64_t R,
                             const DirichletCharacter& chi, const KindShape& shape,
                             bool is_exceptional, double beta, bool exact) {
    const std::uint64_t r = chi.modulus();
    auto tab = chi.period_table();
    const double nr = static_cast<double>(N) / static_cast<double>(R);

    auto term = [&](std::uint64_t n) -> cplx {
        cplx x = w[n] * tab[n % r];
        double main = 0.0;
        if (shape.has_main && r == 1) main = 1.0;
        double twist = is_exceptional ? std::pow(static_cast<double>(n), beta - 1.0) : 0.0;
        double denom = shape.over_log ? std::log(static_cast<double>(n)) : 1.0;
        return x - cplx((main - twist) / denom, 0.0);
    };

    // the prime-indicator family lives on [2, N]; n = 1 would divide by log 1
    auto term_at = [&](std::uint64_t n) {
        return (n == 1 && shape.over_log) ? cplx{} : term(n);
    };

    PerCharResult out;
    if (exact) {
        std::vector<cplx> T(N + 1);
        T[0] = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n) T[n] = T[n - 1] + term_at(n);
        double best = 0.0;
        for (std::uint64_t a = 0; a < N; ++a)
            for (std::uint64_t b = a + 1; b <= N; ++b) {
                double v = std::abs(T[b] - T[a]) / (static_cast<double>(b - a) + nr);
                if (v > best) best = v;
            }
        out.value = shape.scale * best;
        return out;
    }

    const std::uint64_t g = (N + R * R - 1) / (R * R);  // grid spacing ceil(N/R^2)
    std::vector<cplx> grid;
    std::vector<double> gridpos;
    grid.push_back({0.0, 0.0});
    gridpos.push_back(0.0);

    cplx T(0.0, 0.0);
    cplx cell_start(0.0, 0.0);
    double prefix_best = 0.0;
    double wander = 0.0, max_cell = 0.0;  // exact max |T(x) - T(cell start)| per cell
    for (std::uint64_t n = 1; n <= N; ++n) {
        T += term_at(n);
        wander = std::max(wander, std::abs(T - cell_start));
        prefix_best = std::max(prefix_best, std::abs(T) / (static_cast<double>(n) + nr));
        if (n % g == 0 || n == N) {
            grid.push_back(T);
            gridpos.push_back(static_cast<double>(n));
            max_cell = std::max(max_cell, wander);
            wander = 0.0;
            cell_start = T;
        }
    }

    double grid_best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            double v = std::abs(grid[j] - grid[i]) / ((gridpos[j] - gridpos[i]) + nr);
            if (v > grid_best) grid_best = v;
        }
    out.value = shape.scale * std::max(grid_best, prefix_best);
    // true sup over all intervals <= (grid_best + 2C R/N) / (1 - gR/N)
    double shrink = 1.0 - static_cast<double>(g) * R / static_cast<double>(N);
    if (shrink <= 0.0) shrink = 1e-9;
    double bound =
        shape.scale * (grid_best + 2.0 * max_cell * R / static_cast<double>(N)) / shrink;
    out.defect = std::max(0.0, bound - out.value);
    return out;
}

}  // namespace

GallagherResult gallagher_discrepancy(LambdaStarKind kind, std::uint64_t N, std::uint64_t R,
                                      const FactorTable& t, const GallagherOptions& opts) {
    if (R * R > N) throw value_error("gallagher_discrepancy: need R^2 <= N");
    if (opts.exact_oracle && N > 20'000)
        throw value_error("gallagher_discrepancy: exact oracle limited to N <= 2*10^4");
    auto w = lambda_star_values(kind, N, t, opts);
    KindShape shape = kind_shape(kind, N);

    struct Job {
        DirichletCharacter chi;
        bool exceptional;
    };
    std::vector<Job> jobs;
    for (std::uint64_t r = shape.r_lo; r <= R; ++r) {
        for (auto& chi : characters_mod(r)) {
            if (!chi.primitive()) continue;
            bool exc = opts.exceptional && opts.exceptional->modulus == r &&
                       opts.exceptional->exponents == chi.exponents();
            jobs.push_back({std::move(chi), exc});
        }
    }
    std::vector<PerCharResult> results(jobs.size());
    parallel_for(
        jobs.size(),
        [&](std::size_t i) {
            results[i] =
                scan_character(w, N, R, jobs[i].chi, shape, jobs[i].exceptional,
                               opts.exceptional ? opts.exceptional->beta : 1.0,
                               opts.exact_oracle);
        },
        opts.threads);

    GallagherResult out;
    std::vector<double> vals(results.size()), defs(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        vals[i] = results[i].value;
        defs[i] = results[i].defect;
    }
    out.value = pairwise_sum(vals);
    out.defect = pairwise_sum(defs);
    return out;
}

double bv_discrepancy(LambdaStarKind kind, std::uint64_t N, std::uint64_t Q, std::uint64_t P,
                      const FactorTable& t, const BVOptions& opts) {
    if (static_cast<double>(Q) * Q > static_cast<double>(N))
        throw value_error("bv_discrepancy: need Q <= sqrt(N)");
    if (P > Q) throw value_error("bv_discrepancy: need P <= Q");

    GallagherOptions go;
    go.e3 = opts.e3;
    go.rough_P = opts.rough_P;
    LambdaStarKind k = kind == LambdaStarKind::prime_indicator ? LambdaStarKind::lambda : kind;
    auto w = lambda_star_values(k, N, t, go);

    // support restricted to the window (N/2, N]
    std::vector<std::pair<std::uint64_t, double>> support;
    for (std::uint64_t n = N / 2 + 1; n <= N; ++n)
        if (w[n] != 0.0) support.emplace_back(n, w[n]);

    std::vector<double> per_q(Q + 1, 0.0);
    parallel_for(Q, [&](std::size_t qi) {
        std::uint64_t q = qi + 1;
        std::vector<double> tally(q, 0.0);
        for (auto& [n, v] : support) tally[n % q] += v;

        auto chars = characters_mod(q);
        std::vector<std::vector<cplx>> low_tabs;
        std::vector<cplx> low_sums;
        for (auto& psi : chars) {
            if (psi.conductor() > P) continue;
            auto tab = psi.period_table();
            cplx s(0.0, 0.0);
            for (std::uint64_t b = 0; b < q; ++b)
                if (tally[b] != 0.0) s += tally[b] * tab[b];
            low_tabs.push_back(std::move(tab));
            low_sums.push_back(s);
        }
        const double phi_q = static_cast<double>(chars.size());
        double best = 0.0;
        for (std::uint64_t a = 0; a < q; ++a) {
            if (q > 1 && gcd_u64(a, q) != 1) continue;
            if (q == 1 && a != 0) break;
            cplx corr(0.0, 0.0);
            for (std::size_t i = 0; i < low_sums.size(); ++i)
                corr += std::conj(low_tabs[i][a]) * low_sums[i];
            double v = std::abs(cplx(tally[a % q], 0.0) - corr / phi_q);
            if (v > best) best = v;
        }
        per_q[q] = best;
    });
    std::vector<double> vals(per_q.begin() + 1, per_q.end());
    return pairwise_sum(vals);
}

}  // namespace cgb

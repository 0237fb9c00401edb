#include "core/chen.hpp"

#include <algorithm>
#include <cmath>

namespace cgb {

void ChenParams::validate() const {
    if (!(delta1 > 0.0 && delta1 < 0.1)) throw value_error("ChenParams: delta1 outside (0, 1/10)");
    if (!(c1() < c2() && c2() < std::sqrt(static_cast<double>(N))))
        throw value_error("ChenParams: cut points out of order");
}

bool is_chen_prime(std::uint64_t p, const FactorTable& t) {
    if (p + 2 > t.limit()) throw range_error("is_chen_prime: p+2 beyond table");
    return t.is_prime(p) && t.big_omega(p + 2) <= 2;
}

bool chen_rep_indicator(std::uint64_t p, const FactorTable& t) {
    if (p < 3 || p % 2 == 0) return false;
    if (p + 2 > t.limit()) throw range_error("chen_rep_indicator: p+2 beyond table");
    return t.is_prime(p) && t.big_omega(p + 2) <= 2 && gcd_u64(p + 2, 6) == 1;
}

double lambda2(std::uint64_t n, const ChenParams& params, const FactorTable& t) {
    if (n > t.limit()) throw range_error("lambda2: n beyond table");
    const std::uint64_t cut = static_cast<std::uint64_t>(std::floor(params.c1())) + 1;
    if (t.has_prime_factor_below(n, cut)) return 0.0;
    if (t.big_omega(n) > 2) return 0.0;
    return cramer_norm(cut, t);
}

namespace {

// inner integral: int dt2 / (t2 (u - t1 - t2)) = (1/(u-t1)) log(t2/(u-t1-t2))
double inner_closed(double u, double t1, double lo, double hi) {
    if (hi <= lo) return 0.0;
    double w = u - t1;
    auto anti = [&](double t2) { return std::log(t2 / (w - t2)); };
    return (anti(hi) - anti(lo)) / w;
}

struct CBLimits {
    double t1_lo, t1_hi;
    bool b2;  // t2 starts at t1 instead of 1/3-delta
};

CBLimits cb_limits(CBRegion region, const ChenParams& params) {
    if (region == CBRegion::B1) return {0.1, 1.0 / 3 - params.delta1, false};
    return {1.0 / 3 - params.delta1, 1.0 / 3, true};
}

}  // namespace

double cB(CBRegion region, std::uint64_t n, const ChenParams& params) {
    const double u = std::log(static_cast<double>(n)) / std::log(static_cast<double>(params.N));
    const double logN = std::log(static_cast<double>(params.N));
    CBLimits lim = cb_limits(region, params);

    auto t2_lo = [&](double t1) { return lim.b2 ? t1 : 1.0 / 3 - params.delta1; };
    auto t2_hi = [&](double t1) { return std::min((1.0 - t1) / 2.0, u - t1 - 0.1); };

    auto outer = [&](double t1) {
        double lo = t2_lo(t1), hi = t2_hi(t1);
        if (hi <= lo) return 0.0;
        return inner_closed(u, t1, lo, hi) / t1;
    };
    // split where the min() in the t2 upper limit switches: t1 = 2u - 1.2
    double split = 2.0 * u - 1.2;
    double total = 0.0;
    double a = lim.t1_lo, b = lim.t1_hi;
    if (split > a && split < b) {
        total += adaptive_simpson(outer, a, split, params.quad_tol * logN / 2);
        total += adaptive_simpson(outer, split, b, params.quad_tol * logN / 2);
    } else {
        total += adaptive_simpson(outer, a, b, params.quad_tol * logN);
    }
    return total / logN;
}

double cB_2d(CBRegion region, std::uint64_t n, const ChenParams& params, double tol) {
    const double u = std::log(static_cast<double>(n)) / std::log(static_cast<double>(params.N));
    const double logN = std::log(static_cast<double>(params.N));
    CBLimits lim = cb_limits(region, params);

    auto outer = [&](double t1) {
        double lo = lim.b2 ? t1 : 1.0 / 3 - params.delta1;
        double hi = std::min((1.0 - t1) / 2.0, u - t1 - 0.1);
        if (hi <= lo) return 0.0;
        auto f = [&](double t2) { return 1.0 / (t1 * t2 * (u - t1 - t2)); };
        return adaptive_simpson(f, lo, hi, tol);
    };
    double split = 2.0 * u - 1.2;
    double total = 0.0;
    double a = lim.t1_lo, b = lim.t1_hi;
    if (split > a && split < b) {
        total += adaptive_simpson(outer, a, split, tol / 2);
        total += adaptive_simpson(outer, split, b, tol / 2);
    } else {
        total += adaptive_simpson(outer, a, b, tol);
    }
    return total / logN;
}

double c_E3(std::uint64_t n, const ChenParams& params) {
    return cB(CBRegion::B1, n, params) / 2.0 + cB(CBRegion::B2, n, params);
}

double c_E3_constant(const ChenParams& params) {
    return c_E3(params.N, params) * std::log(static_cast<double>(params.N));
}

int b_region(std::uint64_t n, const ChenParams& params, const FactorTable& t) {
    if (n < 2 || n > t.limit()) return 0;
    std::vector<std::uint64_t> ps;
    for (auto [p, e] : t.factorize(n))
        for (std::uint32_t i = 0; i < e; ++i) ps.push_back(p);
    if (ps.size() != 3) return 0;
    std::sort(ps.begin(), ps.end());
    const double a = static_cast<double>(ps[0]);
    const double b = static_cast<double>(ps[1]);
    const double c = static_cast<double>(ps[2]);
    const double c1 = params.c1(), c2 = params.c2();
    const double bound = std::sqrt(static_cast<double>(params.N) / a);
    if (a >= c1 && a < c2 && b >= c2 && b <= bound && c >= c1) return 1;
    if (a >= c2 && b <= bound && c >= c1) return 2;
    return 0;
}

double lambda_E3(std::uint64_t n, const ChenParams& params, const FactorTable& t) {
    int region = b_region(n, params, t);
    if (region == 0) return 0.0;
    double c = c_E3(n, params);
    if (c <= 0.0) throw convergence_error("lambda_E3: vanishing density at a member point");
    return (region == 1 ? 0.5 : 1.0) / c;
}

ChenAssembly ChenAssembly::make(const SieveSpec& spec, const ChenParams& params,
                                const FactorTable& t) {
    params.validate();
    if (spec.N != params.N) throw value_error("ChenAssembly: spec and params disagree on N");
    ChenAssembly a;
    a.spec = spec;
    a.params = params;
    a.pre_lower = presieve_weight(spec, false, t);
    a.pre_upper = presieve_weight(spec, true, t);
    a.ms = main_sieves(spec, t);
    const std::uint64_t cut = static_cast<std::uint64_t>(std::floor(params.c1())) + 1;
    a.K = cramer_norm(cut, t);
    double K1 = cramer_norm(spec.P1_int(), t);
    a.C0 = a.K / (K1 * a.ms.base.norm);
    a.cE3_const = c_E3_constant(params);
    return a;
}

ChenAssembly::Minorant ChenAssembly::minorant(std::uint64_t n, const FactorTable& t) const {
    Minorant g;
    const std::uint64_t m = n + 2;
    const double vn = t.von_mangoldt(n);
    const double om_up = presieve_eval(m, pre_upper, t);
    const double om_lo = presieve_eval(m, pre_lower, t);
    if (vn != 0.0) {
        g.g1 = vn * om_up * C0 * ms.omega_M(m, t);
        g.g3 = vn * (om_lo - om_up) * C0 * ms.Omega_prime(m, t);
    }
    double lE3 = lambda_E3(m, params, t);
    if (lE3 != 0.0) {
        g.g2 = (3.0 / 5 + params.delta1) * cE3_const * presieve_eval(n, pre_upper, t) *
               ms.Omega_M_eval(n, t) * lE3;
    }
    return g;
}

ChenAssembly::AuditRow ChenAssembly::audit(std::uint64_t n, const FactorTable& t) const {
    AuditRow row;
    row.n = n;
    const std::uint64_t m = n + 2;
    Minorant g = minorant(n, t);
    row.g1 = g.g1;
    row.g2 = g.g2;
    row.g3 = g.g3;
    row.lhs = t.von_mangoldt(n) * lambda2(m, params, t);

    // square-divisor slack: Lambda(n) K #{p >= N^{1/10} : p^2 | m}
    const double c1 = params.c1();
    double sq = 0.0;
    for (auto [p, e] : t.factorize(m))
        if (e >= 2 && static_cast<double>(p) >= c1) sq += 1.0;
    row.slack = t.von_mangoldt(n) * K * sq;

    int region = b_region(m, params, t);
    row.g2_exact =
        t.von_mangoldt(n) * K * (region == 1 ? 0.5 : region == 2 ? 1.0 : 0.0);

    double scale = std::max({std::abs(row.lhs), std::abs(row.g1), std::abs(row.g2),
                             std::abs(row.g3), 1.0});
    row.pass = row.lhs >= row.g1 - row.g2 + row.g3 - row.slack - 1e-9 * scale;
    row.pass_exact = row.lhs >= row.g1 - row.g2_exact + row.g3 - row.slack - 1e-9 * scale;
    return row;
}

double chen_constant_with_coeff(double coeff_half, double tol) {
    LinearFF at5 = linear_fF(5.0);
    double term1 = at5.f;

    auto Fof = [](double s) { return linear_fF(s).F; };
    auto g = [&](double tv) { return Fof(5.0 - 10.0 * tv) / tv; };
    double term2 = 0.5 * adaptive_simpson(g, 0.1, 1.0 / 3, tol);

    // J = int_{0.1}^{1/3} log(2-3t)/(t(1-t)) dt  (closed-form inner t2 integral)
    auto j = [](double tv) { return std::log(2.0 - 3.0 * tv) / (tv * (1.0 - tv)); };
    double J = adaptive_simpson(j, 0.1, 1.0 / 3, tol);
    double term3 = coeff_half * linear_fF(3.0).F * J;

    return term1 - term2 - term3;
}

double chen_constant(double delta1, double tol) {
    if (!(delta1 > 0.0 && delta1 <= 0.01))
        throw value_error("chen_constant: delta1 outside (0, 0.01]");
    return chen_constant_with_coeff(3.0 / 10, tol);
}

}  // namespace cgb

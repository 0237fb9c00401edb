#include "core/models.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cgb {

namespace {

double smooth_step(double u) {
    // s(u) = sigma(u) / (sigma(u) + sigma(1-u)), sigma(u) = exp(-1/u) for u > 0
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

// c_{p^e}(n), multiplicative building block of the Ramanujan sum.
double ramanujan_pp(std::uint64_t p, std::uint32_t e, std::uint64_t n) {
    std::uint64_t pe1 = 1;  // p^{e-1}
    for (std::uint32_t i = 1; i < e; ++i) pe1 *= p;
    std::uint32_t v = 0;
    while (n % p == 0 && v <= e) {
        n /= p;
        ++v;
    }
    if (v >= e) return static_cast<double>(pe1) * static_cast<double>(p - 1);
    if (v == e - 1) return -static_cast<double>(pe1);
    return 0.0;
}

struct QData {
    int mu;
    std::uint64_t phi;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
};

QData q_data(std::uint64_t q, const FactorTable& t) {
    QData d{1, 1, {}};
    if (q == 1) return d;
    if (q <= t.limit()) {
        d.factors = t.factorize(q);
    } else {
        for (std::uint64_t p = 2; p * p <= q; p += (p == 2 ? 1 : 2)) {
            if (q % p) continue;
            std::uint32_t e = 0;
            while (q % p == 0) {
                q /= p;
                ++e;
            }
            d.factors.emplace_back(p, e);
        }
        if (q > 1) d.factors.emplace_back(q, 1);
    }
    for (auto [p, e] : d.factors) {
        d.mu = e > 1 ? 0 : -d.mu;
        d.phi *= p - 1;
        for (std::uint32_t i = 1; i < e; ++i) d.phi *= p;
    }
    return d;
}

}  // namespace

double bump_G(double t) {
    if (t >= 0.0 && t <= 1.0) return 1.0;
    if (t <= -2.0 || t >= 2.0) return 0.0;
    if (t > 1.0) return smooth_step(2.0 - t);
    return smooth_step((t + 2.0) / 2.0);
}

double b_R(std::int64_t n, std::uint64_t N, std::uint64_t R) {
    if (R < 2) throw value_error("b_R: R must be >= 2");
    const std::uint64_t K = N / (R * R * R * R);
    std::uint64_t an = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    if (an > K) return 0.0;
    const double logR = std::log(static_cast<double>(R));
    const std::uint64_t rmax = R * R;
    double acc = 0.0;
    for (std::uint64_t r = 1; r <= rmax; ++r) {
        double g = bump_G(std::log(static_cast<double>(r)) / logR);
        if (g == 0.0) continue;
        // c_r(n) multiplicatively; ramanujan_pp(p, e, 0) = phi(p^e)
        double c = 1.0;
        std::uint64_t m = r;
        for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
            if (m % p) continue;
            std::uint32_t e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            c *= ramanujan_pp(p, e, an);
        }
        if (m > 1) c *= ramanujan_pp(m, 1, an);
        acc += c * g;
    }
    return acc * static_cast<double>(R) * R * R * R / (2.0 * static_cast<double>(N));
}

double lambda_Rr(std::uint64_t n, std::uint64_t R, std::uint64_t r, const FactorTable& t) {
    if (r < 1) throw value_error("lambda_Rr: r must be >= 1");
    const double logR = std::log(static_cast<double>(R));
    const std::uint64_t r2 = R * R;
    if (r2 < r) return 0.0;  // G support empty
    std::vector<double> terms;
    for (std::uint64_t q = 1; q * r < r2; ++q) {
        if (gcd_u64(q, r) != 1) continue;
        QData d = q_data(q, t);
        if (d.mu == 0) continue;
        double g = bump_G(std::log(static_cast<double>(r) * q) / logR);
        if (g == 0.0) continue;
        double c = 1.0;
        for (auto [p, e] : d.factors) c *= ramanujan_pp(p, e, n);
        terms.push_back(d.mu * c / static_cast<double>(d.phi) * g);
    }
    return pairwise_sum(terms);
}

double lambda_Rr_divisor_form(std::uint64_t n, std::uint64_t R, std::uint64_t r,
                              const FactorTable& t) {
    const double logR = std::log(static_cast<double>(R));
    const std::uint64_t r2 = R * R;
    if (r2 < r) return 0.0;

    // squarefree divisors of n coprime to r
    std::vector<std::uint64_t> ps;
    for (auto [p, e] : t.factorize(n))
        if (r % p != 0) ps.push_back(p);
    std::vector<std::uint64_t> divs{1};
    for (std::uint64_t p : ps) {
        std::size_t sz = divs.size();
        for (std::size_t i = 0; i < sz; ++i)
            if (divs[i] <= r2 / p) divs.push_back(divs[i] * p);
    }

    std::vector<double> outer;
    for (std::uint64_t d : divs) {
        if (d * r >= r2) continue;
        QData dd = q_data(d, t);
        std::vector<double> inner;
        for (std::uint64_t l = 1; l * d * r < r2; ++l) {
            if (gcd_u64(l, d * r) != 1) continue;
            QData ld = q_data(l, t);
            if (ld.mu == 0) continue;
            double g = bump_G(std::log(static_cast<double>(l) * d * r) / logR);
            if (g == 0.0) continue;
            inner.push_back(g / static_cast<double>(ld.phi));
        }
        double dsign = dd.mu;  // d squarefree by construction
        outer.push_back(static_cast<double>(d) * dsign / static_cast<double>(dd.phi) *
                        pairwise_sum(inner));
    }
    return pairwise_sum(outer);
}

double h_xi(std::uint64_t n, double xi, std::uint64_t R, const FactorTable& t) {
    if (n == 0) throw range_error("h_xi: n must be positive");
    if (n == 1) return 1.0;
    const double logR = std::log(static_cast<double>(R));
    double prod = 1.0;
    for (auto [p, e] : t.factorize(n)) {
        if (e > 1) return 0.0;  // supported on squarefree integers
        prod *= std::min(1.0, 10.0 * (1.0 + std::abs(xi)) * std::log(double(p)) / logR);
    }
    return prod;
}

namespace {

std::vector<double> clamp_coeffs(std::uint64_t n, std::uint64_t R, const FactorTable& t,
                                 bool zero_on_squarefull, bool& vanished) {
    vanished = false;
    std::vector<double> cs;
    const double logR = std::log(static_cast<double>(R));
    for (auto [p, e] : t.factorize(n)) {
        if (e > 1 && zero_on_squarefull) {
            vanished = true;
            return {};
        }
        cs.push_back(10.0 * std::log(double(p)) / logR);  // radical reading on squarefull n
    }
    return cs;
}

}  // namespace

double H_R(std::uint64_t n, const ModelParams& params, const FactorTable& t) {
    if (n < 1) throw range_error("H_R: n must be positive");
    const double logR = std::log(static_cast<double>(params.R));
    const double Xi = params.xi_cutoff;
    if (Xi < 10.0) throw value_error("H_R: xi cutoff must be >= 10");

    bool vanished = false;
    std::vector<double> cs =
        n == 1 ? std::vector<double>{}
               : clamp_coeffs(n, params.R, t, params.hr_zero_on_squarefull, vanished);
    if (vanished) return 0.0;

    auto integrand = [&](double xi) {
        double prod = 1.0;
        for (double c : cs) prod *= std::min(1.0, c * (1.0 + xi));
        return prod * std::pow(1.0 + xi, -10.0);
    };
    double half = adaptive_simpson(integrand, 0.0, Xi, params.quad_tol / 2.0);
    double tail = std::pow(1.0 + Xi, -9.0) / 9.0;  // closed-form upper bound, conservative
    double integral = 2.0 * (half + tail);
    return static_cast<double>(t.tau(n)) * logR * integral;
}

double H_R_exact(std::uint64_t n, const ModelParams& params, const FactorTable& t) {
    if (n < 1) throw range_error("H_R: n must be positive");
    const double logR = std::log(static_cast<double>(params.R));

    bool vanished = false;
    std::vector<double> cs =
        n == 1 ? std::vector<double>{}
               : clamp_coeffs(n, params.R, t, params.hr_zero_on_squarefull, vanished);
    if (vanished) return 0.0;

    // Breakpoints where factor p stops being clamped below 1.
    std::vector<double> cuts;
    for (double c : cs) cuts.push_back(std::max(0.0, 1.0 / c - 1.0));
    std::sort(cuts.begin(), cuts.end());

    // On each piece the integrand is (prod of active c) * (1+xi)^{a-10}.
    auto piece = [&](double lo, double hi) {
        double coeff = 1.0;
        int active = 0;
        for (double c : cs) {
            double cut = std::max(0.0, 1.0 / c - 1.0);
            if (cut >= hi - 1e-15) {  // still growing on this piece
                coeff *= c;
                ++active;
            }
        }
        double a = active - 10.0 + 1.0;  // exponent of (1+xi) plus one for the antiderivative
        double lo1 = 1.0 + lo, hi1 = 1.0 + hi;
        double integral;
        if (std::abs(a) < 1e-12)
            integral = std::log(hi1 / lo1);
        else
            integral = (std::pow(hi1, a) - std::pow(lo1, a)) / a;
        return coeff * integral;
    };

    double total = 0.0;
    double prev = 0.0;
    for (double c : cuts) {
        if (c > prev + 1e-300) {
            total += piece(prev, c);
            prev = c;
        }
    }
    // final piece: everything clamped, integrand = (1+xi)^{-10}
    total += std::pow(1.0 + prev, -9.0) / 9.0;
    return static_cast<double>(t.tau(n)) * logR * 2.0 * total;
}

bool hb_upper_check(std::uint64_t n, std::uint64_t R, std::uint64_t r, const FactorTable& t) {
    if (gcd_u64(n, r) != 1) throw value_error("hb_upper_check: gcd(n,r) must be 1");
    QData rd = q_data(r, t);
    double lhs = static_cast<double>(r) / static_cast<double>(rd.phi) *
                 std::abs(lambda_Rr(n, R, r, t));
    ModelParams params;
    params.R = R;
    params.r = r;
    double rhs = H_R(n, params, t);
    return lhs <= rhs * (1.0 + 1e-9);
}

}  // namespace cgb

#include "core/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cgb {

namespace {

std::vector<std::pair<std::uint64_t, std::uint32_t>> trial_factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::uint64_t phi_of(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : trial_factorize(n)) r = r / p * (p - 1);
    return r;
}

// Smallest primitive root mod p^e, p odd.
std::uint64_t primitive_root(std::uint64_t pe, std::uint64_t p) {
    std::uint64_t phi = pe / p * (p - 1);
    auto pf = trial_factorize(phi);
    for (std::uint64_t g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto [q, e] : pf)
            if (pow_mod(g, phi / q, pe) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw value_error("primitive_root: none found");
}

}  // namespace

std::shared_ptr<const DirichletGroup> DirichletGroup::make(std::uint64_t q) {
    if (q == 0) throw value_error("DirichletGroup: q must be positive");
    if (q > 1'000'000) throw value_error("DirichletGroup: q exceeds the 10^6 table bound");
    auto g = std::make_shared<DirichletGroup>(DirichletGroup{});
    g->q_ = q;
    g->phi_ = phi_of(q);
    DirichletGroup* gm = g.get();
    for (auto [p, e] : trial_factorize(q)) {
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;  // trivial unit group
            if (e == 2) {
                Factor f;
                f.prime_power = 4;
                f.order = 2;
                f.local_prime = 2;
                f.local_exp = 2;
                f.dlog.assign(4, 0);
                f.dlog[3] = 1;  // 3 = -1 mod 4
                gm->factors_.push_back(std::move(f));
                continue;
            }
            // (Z/2^e)* = <-1> x <5>
            Factor sign, five;
            sign.prime_power = five.prime_power = pe;
            sign.local_prime = five.local_prime = 2;
            sign.local_exp = five.local_exp = e;
            sign.order = 2;
            sign.is_two_sign = true;
            five.order = pe / 4;
            sign.dlog.assign(pe, 0);
            five.dlog.assign(pe, 0);
            std::uint64_t x = 1;
            for (std::uint64_t b = 0; b < five.order; ++b) {
                five.dlog[x] = static_cast<std::uint32_t>(b);
                sign.dlog[x] = 0;
                std::uint64_t y = pe - x;
                five.dlog[y] = static_cast<std::uint32_t>(b);
                sign.dlog[y] = 1;
                x = x * 5 % pe;
            }
            gm->factors_.push_back(std::move(sign));
            gm->factors_.push_back(std::move(five));
            continue;
        }
        Factor f;
        f.prime_power = pe;
        f.local_prime = p;
        f.local_exp = e;
        f.order = pe / p * (p - 1);
        f.dlog.assign(pe, 0);
        std::uint64_t root = primitive_root(pe, p);
        std::uint64_t x = 1;
        for (std::uint64_t b = 0; b < f.order; ++b) {
            f.dlog[x] = static_cast<std::uint32_t>(b);
            x = x * root % pe;
        }
        gm->factors_.push_back(std::move(f));
    }
    return g;
}

std::optional<std::vector<std::uint64_t>> DirichletGroup::dlog(std::uint64_t n) const {
    if (q_ == 1) return std::vector<std::uint64_t>{};
    n %= q_;
    if (gcd_u64(n, q_) != 1) return std::nullopt;
    std::vector<std::uint64_t> out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out[i] = factors_[i].dlog[n % factors_[i].prime_power];
    return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const DirichletGroup> group,
                                       std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& fs = group_->factors();
    if (exponents_.size() != fs.size())
        throw value_error("DirichletCharacter: exponent vector size mismatch");

    principal_ = true;
    real_ = true;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (exponents_[i] % fs[i].order != 0) principal_ = false;
        if ((2 * exponents_[i]) % fs[i].order != 0) real_ = false;
    }

    // Conductor: product over prime powers of the local conductor.
    conductor_ = 1;
    std::uint64_t two_pe = 0, two_sign_exp = 0, two_five_exp = 0, two_five_order = 0;
    bool have_two_pair = false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto& f = fs[i];
        std::uint64_t a = exponents_[i] % f.order;
        if (f.local_prime == 2 && f.local_exp >= 3) {
            two_pe = f.prime_power;
            have_two_pair = true;
            if (f.is_two_sign)
                two_sign_exp = a;
            else {
                two_five_exp = a;
                two_five_order = f.order;
            }
            continue;
        }
        if (a == 0) continue;
        if (f.local_prime == 2) {  // 2^2, order-2 factor
            conductor_ *= 4;
            continue;
        }
        // cyclic of order p^{e-1}(p-1): character order d = m/gcd(a,m); local
        // conductor p^{j+1} with p^j the p-part of d
        std::uint64_t d = f.order / gcd_u64(a, f.order);
        std::uint64_t pj = 1;
        while (d % f.local_prime == 0) {
            pj *= f.local_prime;
            d /= f.local_prime;
        }
        conductor_ *= pj * f.local_prime;
    }
    if (have_two_pair) {
        (void)two_pe;
        if (two_five_exp % two_five_order != 0) {
            std::uint64_t d = two_five_order / gcd_u64(two_five_exp, two_five_order);
            conductor_ *= 4 * d;  // conductor 2^{j+2} with 2^j the order of the <5> part
        } else if (two_sign_exp % 2 != 0) {
            conductor_ *= 4;
        }
    }
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> DirichletCharacter::rotation(
    std::uint64_t n) const {
    auto lg = group_->dlog(n);
    if (!lg) return std::nullopt;
    const auto& fs = group_->factors();
    std::uint64_t den = 1;
    for (const auto& f : fs) den = std::lcm(den, f.order);
    std::uint64_t num = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        unsigned __int128 term = static_cast<unsigned __int128>(exponents_[i] % fs[i].order) *
                                 (*lg)[i] % fs[i].order;
        num = (num + static_cast<std::uint64_t>(term) * (den / fs[i].order)) % den;
    }
    std::uint64_t g = gcd_u64(num, den);
    if (num == 0) return std::make_pair<std::uint64_t, std::uint64_t>(0, 1);
    return std::make_pair(num / g, den / g);
}

cplx DirichletCharacter::value(std::uint64_t n) const {
    auto rot = rotation(n);
    if (!rot) return {0.0, 0.0};
    double t = static_cast<double>(rot->first) / static_cast<double>(rot->second);
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

int DirichletCharacter::real_value(std::uint64_t n) const {
    if (!real_) throw value_error("real_value: character is not real");
    auto rot = rotation(n);
    if (!rot) return 0;
    return rot->first == 0 ? 1 : -1;  // rotation is 0 or 1/2 for real characters
}

std::vector<cplx> DirichletCharacter::period_table() const {
    std::uint64_t q = modulus();
    std::vector<cplx> t(q == 0 ? 1 : q);
    if (q == 1) {
        t[0] = {1.0, 0.0};
        return t;
    }
    for (std::uint64_t n = 0; n < q; ++n) t[n] = value(n);
    return t;
}

std::vector<DirichletCharacter> characters_mod(std::uint64_t q) {
    auto group = DirichletGroup::make(q);
    const auto& fs = group->factors();
    std::vector<DirichletCharacter> out;
    out.reserve(group->phi());
    std::vector<std::uint64_t> exps(fs.size(), 0);
    while (true) {
        out.emplace_back(group, exps);
        std::size_t i = 0;
        for (; i < fs.size(); ++i) {
            if (++exps[i] < fs[i].order) break;
            exps[i] = 0;
        }
        if (i == fs.size()) break;
    }
    return out;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n) {
    if (q < 1) throw value_error("ramanujan_sum: q must be >= 1");
    std::uint64_t an = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    std::uint64_t g = an == 0 ? q : gcd_u64(q, an);
    // sum over d | g of d * mu(q/d)
    std::int64_t total = 0;
    std::vector<std::uint64_t> divs;
    for (std::uint64_t d = 1; d * d <= g; ++d) {
        if (g % d) continue;
        divs.push_back(d);
        if (d != g / d) divs.push_back(g / d);
    }
    auto mu_of = [](std::uint64_t m) -> int {
        int sign = 1;
        for (auto [p, e] : trial_factorize(m)) {
            if (e > 1) return 0;
            sign = -sign;
        }
        return sign;
    };
    for (std::uint64_t d : divs) total += static_cast<std::int64_t>(d) * mu_of(q / d);
    return total;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    std::complex<long double> acc(0.0L, 0.0L);
    if (q == 1) return {1.0, 0.0};
    const long double two_pi = 6.283185307179586476925L;
    for (std::uint64_t a = 0; a < q; ++a) {
        auto rot = chi.rotation(a);
        if (!rot) continue;
        long double t = static_cast<long double>(rot->first) / rot->second +
                        static_cast<long double>(a) / q;
        acc += std::complex<long double>(std::cos(two_pi * t), std::sin(two_pi * t));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

cplx u_P(std::uint64_t n, std::uint64_t a, const std::vector<DirichletCharacter>& chars,
         std::uint64_t P) {
    if (chars.empty()) throw value_error("u_P: empty character list");
    const std::uint64_t q = chars.front().modulus();
    if (gcd_u64(a % q == 0 ? q : a % q, q) != 1) throw value_error("u_P: gcd(a,q) != 1");
    std::uint64_t na = q == 1 ? 0 : (n % q) * inv_mod(a % q, q) % q;
    cplx acc(0.0, 0.0);
    for (const auto& psi : chars)
        if (psi.conductor() > P) acc += psi.value(na);
    return acc / static_cast<double>(chars.size());
}

cplx u_P(std::uint64_t n, std::uint64_t a, std::uint64_t q, std::uint64_t P) {
    auto chars = characters_mod(q);
    return u_P(n, a, chars, P);
}

namespace {

// Exact maximum of |sum_{m<=x} chi(m)| over one period.
double prefix_sum_bound(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    cplx s(0.0, 0.0);
    double best = 0.0;
    for (std::uint64_t m = 0; m < q; ++m) {
        s += chi.value(m);
        best = std::max(best, std::abs(s));
    }
    return best;
}

}  // namespace

LValue l_real_partial(double sigma, const DirichletCharacter& chi, std::uint64_t M) {
    if (!chi.is_real() || chi.principal() || !chi.primitive())
        throw value_error("l_real: character must be real, non-principal and primitive");
    if (!(sigma > 0.5 && sigma <= 1.5)) throw value_error("l_real: sigma outside (0.5, 1.5]");
    const std::uint64_t q = chi.modulus();
    std::vector<int> vals(q);
    for (std::uint64_t r = 0; r < q; ++r) vals[r] = chi.real_value(r);
    std::vector<double> terms;
    terms.reserve(M);
    for (std::uint64_t n = 1; n <= M; ++n) {
        int c = vals[n % q];
        if (c) terms.push_back(c * std::pow(static_cast<double>(n), -sigma));
    }
    LValue out;
    out.value = pairwise_sum(terms);
    out.terms = M;
    out.error_bound = 2.0 * prefix_sum_bound(chi) * std::pow(static_cast<double>(M), -sigma);
    return out;
}

LValue l_real(double sigma, const DirichletCharacter& chi, double tol, std::uint64_t max_terms) {
    double B = prefix_sum_bound(chi);
    double M = std::pow(2.0 * std::max(B, 1.0) / tol, 1.0 / sigma);
    std::uint64_t Mi = static_cast<std::uint64_t>(std::min<double>(M + 1.0, double(max_terms)));
    Mi = std::max<std::uint64_t>(Mi, 2 * chi.modulus());
    return l_real_partial(sigma, chi, Mi);
}

double l_real_derivative_bound(double sigma_min, const DirichletCharacter& chi) {
    // |L'(sigma)| <= sum_{n<=M0} log(n) n^{-sigma} + 2B log(M0) M0^{-sigma},
    // valid once log(t) t^{-sigma} is decreasing past M0.
    const std::uint64_t M0 = std::max<std::uint64_t>(
        1000, static_cast<std::uint64_t>(std::exp(1.0 / sigma_min)) + 2);
    std::vector<double> terms;
    terms.reserve(M0);
    for (std::uint64_t n = 2; n <= M0; ++n)
        terms.push_back(std::log(double(n)) * std::pow(double(n), -sigma_min));
    double head = pairwise_sum(terms);
    double B = prefix_sum_bound(chi);
    return head + 2.0 * B * std::log(double(M0)) * std::pow(double(M0), -sigma_min);
}

ExceptionalZeroReport exceptional_zero_search(std::uint64_t P, double kappa,
                                              const ZeroSearchOptions& opts) {
    if (P < 3 || P > 10'000) throw value_error("exceptional_zero_search: P outside [3, 10^4]");
    if (!(kappa > 0.0 && kappa < 1.0))
        throw value_error("exceptional_zero_search: kappa outside (0,1)");

    ExceptionalZeroReport rep;
    rep.level = P;
    rep.quality = kappa;
    const double sigma_lo = 1.0 - kappa / std::log(static_cast<double>(P));

    for (std::uint64_t q = 3; q <= P; ++q) {
        if (q % 4 == 2) continue;  // no primitive characters mod 2 (mod 4) residues q=2 mod 4
        auto chars = characters_mod(q);
        for (std::size_t id = 0; id < chars.size(); ++id) {
            const auto& chi = chars[id];
            if (!chi.is_real() || chi.principal() || !chi.primitive()) continue;

            const double db = l_real_derivative_bound(sigma_lo, chi);
            bool certified = false;
            double fail_lo = sigma_lo, fail_hi = 1.0;
            for (unsigned g = opts.initial_grid; g <= opts.max_grid && !certified; g *= 2) {
                const double h = (1.0 - sigma_lo) / g;
                certified = true;
                fail_lo = 2.0;
                fail_hi = -1.0;
                for (unsigned i = 0; i < g; ++i) {
                    const double s = sigma_lo + (i + 0.5) * h;
                    LValue lv = l_real(s, chi, opts.l_tolerance);
                    // positive on [s-h/2, s+h/2] when the certified minimum is > 0
                    if (lv.value - lv.error_bound - db * h / 2.0 <= 0.0) {
                        certified = false;
                        fail_lo = std::min(fail_lo, s - h / 2.0);
                        fail_hi = std::max(fail_hi, s + h / 2.0);
                    }
                }
            }
            if (!certified)
                rep.candidates.push_back({q, static_cast<std::uint64_t>(id), fail_lo, fail_hi});
        }
    }
    rep.clear = rep.candidates.empty();
    return rep;
}

}  // namespace cgb

#include "core/sieves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace cgb {

const char* weight_kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::beta_lower: return "beta_lower";
        case WeightKind::beta_upper: return "beta_upper";
        case WeightKind::linear_lower: return "linear_lower";
        case WeightKind::linear_upper: return "linear_upper";
        case WeightKind::main_omega: return "main_omega";
        case WeightKind::main_Omega: return "main_Omega";
        case WeightKind::main_OmegaPrime: return "main_OmegaPrime";
        case WeightKind::interval_lower: return "interval_lower";
        case WeightKind::interval_upper: return "interval_upper";
    }
    return "unknown";
}

void DivisorWeight::set_entries(std::vector<std::pair<std::uint64_t, double>> entries) {
    std::sort(entries.begin(), entries.end());
    entries_ = std::move(entries);
    lookup_.clear();
    lookup_.reserve(entries_.size() * 2);
    for (auto& [d, v] : entries_) lookup_.emplace(d, v);
}

double DivisorWeight::coeff(std::uint64_t d) const {
    auto it = lookup_.find(d);
    return it == lookup_.end() ? 0.0 : it->second;
}

double DivisorWeight::divisor_sum(std::uint64_t n, const FactorTable& t) const {
    auto ps = t.prime_divisors_in(n, sift_lo, sift_hi);
    double acc = coeff(1);
    const std::size_t k = ps.size();
    if (k == 0) return acc;
    // subset products of the in-range prime divisors
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
        std::uint64_t d = 1;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) d *= ps[i];
        acc += coeff(d);
    }
    return acc;
}

double DivisorWeight::eval(std::uint64_t n, const FactorTable& t) const {
    return normalization * divisor_sum(n, t);
}

double DivisorWeight::coeff_l1() const {
    std::vector<double> t(entries_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::abs(entries_[i].second);
    return pairwise_sum(t);
}

namespace {

// factorization with a trial-division fallback for d beyond the table
std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_any(std::uint64_t d,
                                                                const FactorTable& t) {
    if (d <= t.limit()) return t.factorize(d);
    std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
    for (std::uint64_t p = 2; p * p <= d; p += (p == 2 ? 1 : 2)) {
        if (d % p) continue;
        std::uint32_t e = 0;
        while (d % p == 0) {
            d /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (d > 1) f.emplace_back(d, 1);
    return f;
}

}  // namespace

double DivisorWeight::density_sum(const FactorTable& t) const {
    std::vector<double> terms(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        double phi = 1.0;
        if (entries_[i].first > 1)
            for (auto [p, e] : factor_any(entries_[i].first, t)) {
                phi *= static_cast<double>(p - 1);
                for (std::uint32_t k = 1; k < e; ++k) phi *= static_cast<double>(p);
            }
        terms[i] = entries_[i].second / phi;
    }
    return pairwise_sum(terms);
}

void DivisorWeight::check_invariants(const FactorTable& t) const {
    for (auto& [d, v] : entries_) {
        if (d != 1) {
            auto f = factor_any(d, t);
            for (auto [p, e] : f) {
                if (e > 1) throw value_error("DivisorWeight: non-squarefree support point");
                if (p < sift_lo || p >= sift_hi)
                    throw value_error("DivisorWeight: support prime outside sift range");
            }
            if (static_cast<double>(d) > level)
                throw value_error("DivisorWeight: support point above level");
        }
    }
}

void DivisorWeight::save(const std::string& csv_path, const std::string& json_path) const {
    std::FILE* f = std::fopen(csv_path.c_str(), "wb");
    if (!f) throw range_error("DivisorWeight::save: cannot open " + csv_path);
    std::fprintf(f, "d,lambda\n");
    for (auto& [d, v] : entries_)
        std::fprintf(f, "%llu,%.17g\n", static_cast<unsigned long long>(d), v);
    std::fclose(f);
    f = std::fopen(json_path.c_str(), "wb");
    if (!f) throw range_error("DivisorWeight::save: cannot open " + json_path);
    std::fprintf(f,
                 "{\"kind\":\"%s\",\"level\":%.17g,\"sift_lo\":%llu,\"sift_hi\":%llu,"
                 "\"normalization\":%.17g}\n",
                 weight_kind_name(kind), level, static_cast<unsigned long long>(sift_lo),
                 static_cast<unsigned long long>(sift_hi), normalization);
    std::fclose(f);
}

SieveSpec SieveSpec::from_delta(std::uint64_t N, double delta1, double beta) {
    SieveSpec s;
    s.N = N;
    s.delta1 = delta1;
    s.beta = beta;
    double lnN = std::log(static_cast<double>(N));
    auto p = [&](double e) { return std::exp(e * lnN); };
    s.DM1 = p(1.0 / 3 - delta1);
    s.DM2 = p(1.0 / 6 - delta1);
    s.D1 = p(delta1 * delta1 * delta1 / 100);
    s.P0 = p(delta1);
    s.P1 = p(delta1 * delta1 * delta1 * delta1);
    s.R0 = p(delta1 * delta1 * delta1);
    s.R1 = p(delta1 * delta1 * delta1 * delta1 / 100);
    s.Rtilde = p(2 * std::pow(delta1, 5.0));
    return s;
}

SieveSpec SieveSpec::desk(std::uint64_t N) {
    SieveSpec s;
    s.N = N;
    s.delta1 = 0.02;
    s.beta = 2.0;
    s.P1 = 10;
    s.P0 = 100;
    s.D1 = 1000;
    s.DM1 = 1000;
    s.DM2 = 300;
    s.R0 = 50;
    s.R1 = 8;
    s.Rtilde = 4;
    return s;
}

bool SieveSpec::hierarchy_ok() const {
    return DM1 > DM2 && DM2 > P0 && P0 > R0 && R0 > D1 && D1 > P1 && P1 > R1 && R1 > Rtilde;
}

double cramer_norm(std::uint64_t P, const FactorTable& t) {
    double norm = 1.0;
    for (std::uint64_t p : t.primes(2, P)) norm *= static_cast<double>(p) / (p - 1);
    return norm;
}

double cramer(std::uint64_t n, std::uint64_t P, const FactorTable& t) {
    if (n < 1 || n > t.limit()) throw range_error("cramer: n out of range");
    if (P < 2) throw value_error("cramer: P must be >= 2");
    if (!t.rough_in(n, 2, P)) return 0.0;
    return cramer_norm(P, t);
}

double cramer_interval_norm(std::uint64_t Q, std::uint64_t P, const FactorTable& t) {
    if (Q > P || Q < 2) throw value_error("cramer_interval: need 2 <= Q <= P");
    double norm = 1.0;
    for (std::uint64_t p : t.primes(Q, P)) norm *= static_cast<double>(p) / (p - 1);
    return norm;
}

double cramer_interval(std::uint64_t n, std::uint64_t Q, std::uint64_t P, const FactorTable& t) {
    if (n < 1 || n > t.limit()) throw range_error("cramer_interval: n out of range");
    if (Q > P || Q < 2) throw value_error("cramer_interval: need 2 <= Q <= P");
    if (!t.rough_in(n, Q, P)) return 0.0;
    return cramer_interval_norm(Q, P, t);
}

// ---- beta sieve ----

namespace {

// DFS over descending prime tuples; the prefix constraint
// p1...pm * pm^beta < D binds at odd m (upper sieve) or even m (lower sieve).
void beta_dfs(const std::vector<std::uint64_t>& primes_desc, std::size_t start,
              unsigned __int128 prod, int depth, bool odd_constrained, double beta, double D,
              std::vector<std::pair<std::uint64_t, double>>& out) {
    for (std::size_t i = start; i < primes_desc.size(); ++i) {
        std::uint64_t p = primes_desc[i];
        unsigned __int128 np = prod * p;
        if (np > (unsigned __int128)1 << 62) continue;  // cannot be a support point anyway
        int m = depth + 1;
        bool constrained = odd_constrained ? (m % 2 == 1) : (m % 2 == 0);
        if (constrained) {
            double val = static_cast<double>(np) * std::pow(static_cast<double>(p), beta);
            if (!(val < D)) continue;  // this prefix fails; every extension keeps it
        }
        out.emplace_back(static_cast<std::uint64_t>(np), m % 2 == 0 ? 1.0 : -1.0);
        beta_dfs(primes_desc, i + 1, np, m, odd_constrained, beta, D, out);
    }
}

}  // namespace

std::pair<DivisorWeight, DivisorWeight> beta_weights(double beta, std::uint64_t P_lo,
                                                     std::uint64_t P_hi, double D,
                                                     const FactorTable& t) {
    if (!(P_lo >= 2 && P_lo < P_hi)) throw value_error("beta_weights: empty prime range");
    if (D < 1.0 || beta < 1.0) throw value_error("beta_weights: need D >= 1 and beta >= 1");
    auto primes = t.primes(P_lo, P_hi);
    std::vector<std::uint64_t> desc(primes.rbegin(), primes.rend());

    auto make = [&](bool upper) {
        DivisorWeight w;
        w.kind = upper ? WeightKind::beta_upper : WeightKind::beta_lower;
        w.level = D;
        w.sift_lo = P_lo;
        w.sift_hi = P_hi;
        std::vector<std::pair<std::uint64_t, double>> entries{{1, 1.0}};
        beta_dfs(desc, 0, 1, 0, upper, beta, D, entries);
        w.set_entries(std::move(entries));
        return w;
    };
    return {make(false), make(true)};
}

DivisorWeight presieve_weight(const SieveSpec& spec, bool upper, const FactorTable& t) {
    const std::uint64_t P1 = spec.P1_int();
    DivisorWeight w;
    if (P1 <= 5) {
        w.kind = upper ? WeightKind::beta_upper : WeightKind::beta_lower;
        w.level = spec.D1;
        w.sift_lo = 5;
        w.sift_hi = P1;
        w.set_entries({{1, 1.0}});
    } else {
        auto [lo, hi] = beta_weights(spec.beta, 5, P1, spec.D1, t);
        w = upper ? hi : lo;
    }
    w.normalization = cramer_norm(P1, t);
    return w;
}

double presieve_eval(std::uint64_t n, const DivisorWeight& w, const FactorTable& t) {
    if (n % 2 == 0 || n % 3 == 0) return 0.0;
    return w.eval(n, t);
}

std::vector<double> presieve_fill(std::uint64_t limit, const DivisorWeight& w,
                                  const FactorTable& t) {
    std::vector<double> out(limit + 1, 0.0);
    for (std::uint64_t n = 1; n <= limit; ++n) out[n] = presieve_eval(n, w, t);
    return out;
}

double fundlem_gap(std::uint64_t n, const SieveSpec& spec, const FactorTable& t) {
    const std::uint64_t P1 = spec.P1_int();
    const double s = std::log(spec.D1) / std::log(spec.P1);
    const double beta = spec.beta;
    const double a_ratio = (beta - 1.0) / (beta + 1.0);
    const double norm = cramer_norm(P1, t);
    const double tau2 = static_cast<double>(t.tau(n)) * static_cast<double>(t.tau(n));

    int r0 = static_cast<int>(std::floor((s - beta - 1.0) / 2.0)) + 1;
    if (r0 < 1) r0 = 1;
    double sum = 0.0;
    for (int r = r0;; ++r) {
        double y = std::pow(spec.P1, std::pow(a_ratio, r));
        if (y < 5.0) {
            sum += std::pow(4.0, -r) * (4.0 / 3.0);  // geometric tail, P_r empty from here on
            break;
        }
        std::uint64_t yi = static_cast<std::uint64_t>(std::floor(y));
        if (t.rough_in(n, 5, yi + 1)) sum += std::pow(4.0, -r);
    }
    return norm * tau2 * sum;
}

// ---- linear sieve f/F tables ----

namespace {

struct FFTables {
    static constexpr double kLo = 1.0, kHi = 7.0, kStep = 1e-4;
    std::vector<double> F, f;

    FFTables() {
        const std::size_t n = static_cast<std::size_t>((kHi - kLo) / kStep) + 1;
        F.assign(n, 0.0);
        f.assign(n, 0.0);
        const double c = 2.0 * std::exp(kEulerGamma);
        auto s_at = [&](std::size_t i) { return kLo + kStep * static_cast<double>(i); };
        auto f_closed = [&](double s) { return s <= 2.0 ? 0.0 : c * std::log(s - 1.0) / s; };

        for (std::size_t i = 0; i < n; ++i) {
            double s = s_at(i);
            if (s <= 3.0) F[i] = c / s;
            if (s <= 4.0) f[i] = f_closed(s);
        }
        // sF(s) = 3F(3) + int_3^s f(u-1) du, f(u-1) closed for u <= 5
        std::size_t i3 = static_cast<std::size_t>((3.0 - kLo) / kStep);
        double acc = 3.0 * F[i3];
        for (std::size_t i = i3 + 1; i < n && s_at(i) <= 5.0 + kStep; ++i) {
            double u0 = s_at(i - 1), u1 = s_at(i);
            acc += kStep * 0.5 * (f_closed(u0 - 1.0) + f_closed(u1 - 1.0));
            if (s_at(i) > 3.0) F[i] = acc / s_at(i);
        }
        // sf(s) = 4f(4) + int_4^s F(u-1) du, F(u-1) from the table
        std::size_t i4 = static_cast<std::size_t>((4.0 - kLo) / kStep);
        acc = 4.0 * f[i4];
        auto F_at = [&](std::size_t i) { return F[i]; };
        std::size_t step1 = static_cast<std::size_t>(1.0 / kStep);
        for (std::size_t i = i4 + 1; i < n && s_at(i) <= 6.0 + kStep; ++i) {
            acc += kStep * 0.5 * (F_at(i - 1 - step1) + F_at(i - step1));
            f[i] = acc / s_at(i);
        }
        // sF(s) = 5F(5) + int_5^s f(u-1) du
        std::size_t i5 = static_cast<std::size_t>((5.0 - kLo) / kStep);
        acc = 5.0 * F[i5];
        for (std::size_t i = i5 + 1; i < n; ++i) {
            acc += kStep * 0.5 * (f[i - 1 - step1] + f[i - step1]);
            F[i] = acc / s_at(i);
        }
        // sf(s) = 6f(6) + int_6^s F(u-1) du
        std::size_t i6 = static_cast<std::size_t>((6.0 - kLo) / kStep);
        acc = 6.0 * f[i6];
        for (std::size_t i = i6 + 1; i < n; ++i) {
            acc += kStep * 0.5 * (F[i - 1 - step1] + F[i - step1]);
            f[i] = acc / s_at(i);
        }
    }

    double interp(const std::vector<double>& tab, double s) const {
        double x = (s - kLo) / kStep;
        std::size_t i = static_cast<std::size_t>(x);
        if (i + 1 >= tab.size()) return tab.back();
        double w = x - static_cast<double>(i);
        return tab[i] * (1.0 - w) + tab[i + 1] * w;
    }
};

const FFTables& ff_tables() {
    static FFTables tables;
    return tables;
}

}  // namespace

LinearFF linear_fF(double s) {
    if (!(s >= 1.0 && s <= 7.0)) throw value_error("linear_fF: s outside [1, 7]");
    const auto& t = ff_tables();
    LinearFF out;
    out.F = t.interp(t.F, s);
    out.f = s <= 2.0 ? 0.0 : t.interp(t.f, s);
    return out;
}

// ---- well-factorable linear sieve ----

namespace {

struct Block {
    std::vector<std::uint64_t> primes;  // ascending
    double v;                           // nominal lower value
};

// Signature DFS: weakly descending block indices, prefix rule
// V_1...V_m V_m^2 < B at the constrained parity; one piece per signature.
struct LinearGen {
    const std::vector<Block>& blocks;
    double B;
    bool odd_constrained;
    std::vector<DivisorWeight>* out;
    double D;
    std::uint64_t P, z;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> sig;  // (block, count) desc

    void emit() {
        DivisorWeight w;
        w.kind = odd_constrained ? WeightKind::linear_upper : WeightKind::linear_lower;
        w.level = D;
        w.sift_lo = P;
        w.sift_hi = z;
        int r = 0;
        for (auto& [b, c] : sig) {
            DivisorWeight::Part part;
            part.primes = blocks[b].primes;
            part.count = c;
            w.parts.push_back(std::move(part));
            r += c;
        }
        double sign = r % 2 == 0 ? 1.0 : -1.0;
        std::vector<std::pair<std::uint64_t, double>> entries;
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t pi,
                                                                  std::uint64_t prod) {
            if (pi == w.parts.size()) {
                entries.emplace_back(prod, sign);
                return;
            }
            const auto& part = w.parts[pi];
            const auto& ps = part.primes;
            std::vector<std::size_t> idx(part.count);
            std::function<void(std::size_t, std::size_t, std::uint64_t)> choose =
                [&](std::size_t k, std::size_t from, std::uint64_t pprod) {
                    if (k == part.count) {
                        rec(pi + 1, prod * pprod);
                        return;
                    }
                    for (std::size_t j = from; j + (part.count - k) <= ps.size(); ++j)
                        choose(k + 1, j + 1, pprod * ps[j]);
                };
            choose(0, 0, 1);
        };
        rec(0, 1);
        w.set_entries(std::move(entries));
        out->push_back(std::move(w));
    }

    void dfs(std::size_t max_block_plus1, int depth, double vprod) {
        emit();
        for (std::size_t b = max_block_plus1; b-- > 0;) {
            std::uint32_t used = 0;
            if (!sig.empty() && sig.back().first == b) used = sig.back().second;
            if (used >= blocks[b].primes.size()) continue;
            int m = depth + 1;
            double nv = vprod * blocks[b].v;
            bool constrained = odd_constrained ? (m % 2 == 1) : (m % 2 == 0);
            if (constrained && !(nv * blocks[b].v * blocks[b].v < B)) continue;
            bool same = used > 0;
            if (same)
                sig.back().second++;
            else
                sig.emplace_back(static_cast<std::uint32_t>(b), 1);
            dfs(b + 1, m, nv);
            if (same)
                sig.back().second--;
            else
                sig.pop_back();
        }
    }
};

}  // namespace

LinearSieveSystem linear_sieve_weights(std::uint64_t P, std::uint64_t z, double D,
                                       const FactorTable& t, double eta) {
    LinearSieveSystem sys;
    sys.P = P;
    sys.z = z;
    sys.level = D;
    sys.eta = eta;
    if (D < 1.0) throw value_error("linear_sieve_weights: level must be >= 1");

    auto mk_trivial = [&](WeightKind k) {
        DivisorWeight w;
        w.kind = k;
        w.level = D;
        w.sift_lo = P;
        w.sift_hi = z;
        w.set_entries({{1, 1.0}});
        return w;
    };

    auto primes = z > P ? t.primes(P, z) : std::vector<std::uint64_t>{};
    if (primes.empty()) {
        // empty sift: both bounds exact
        sys.lower.push_back(mk_trivial(WeightKind::linear_lower));
        sys.upper.push_back(mk_trivial(WeightKind::linear_upper));
        sys.combined_lower = sys.lower[0];
        sys.combined_upper = sys.upper[0];
        sys.norm = 1.0;
        return sys;
    }

    sys.norm = cramer_interval_norm(P, z, t);

    std::vector<Block> blocks;
    for (std::uint64_t p : primes) {
        if (blocks.empty() ||
            static_cast<double>(p) >= std::pow(blocks.back().v, 1.0 + eta)) {
            blocks.push_back({{p}, static_cast<double>(p)});
        } else {
            blocks.back().primes.push_back(p);
        }
    }

    const double B = std::pow(D, 1.0 / (1.0 + eta));
    for (bool upper : {false, true}) {
        LinearGen gen{blocks, B, upper, upper ? &sys.upper : &sys.lower, D, P, z, {}};
        gen.dfs(blocks.size(), 0, 1.0);
    }

    auto combine = [&](const std::vector<DivisorWeight>& pieces, WeightKind k) {
        std::vector<std::pair<std::uint64_t, double>> all;
        for (const auto& p : pieces)
            for (auto& e : p.entries()) all.push_back(e);
        DivisorWeight w;
        w.kind = k;
        w.level = D;
        w.sift_lo = P;
        w.sift_hi = z;
        w.set_entries(std::move(all));
        return w;
    };
    sys.combined_lower = combine(sys.lower, WeightKind::linear_lower);
    sys.combined_upper = combine(sys.upper, WeightKind::linear_upper);
    return sys;
}

double LinearSieveSystem::lower_density(const FactorTable& t) const {
    return norm * combined_lower.density_sum(t);
}

double LinearSieveSystem::upper_density(const FactorTable& t) const {
    return norm * combined_upper.density_sum(t);
}

std::pair<DivisorWeight, DivisorWeight> factorable_split(const DivisorWeight& w, double R,
                                                         double S) {
    if (R * S + 1e-9 < w.level)
        throw value_error("factorable_split: R*S below the weight level");
    auto trivial = [&](double lvl) {
        DivisorWeight g;
        g.kind = w.kind;
        g.level = lvl;
        g.sift_lo = w.sift_lo;
        g.sift_hi = w.sift_hi;
        g.set_entries({{1, 1.0}});
        return g;
    };
    if (w.parts.empty()) {
        if (w.entries().size() == 1 && w.entries()[0].first == 1)
            return {trivial(R), trivial(S)};
        throw value_error("factorable_split: weight carries no block structure");
    }

    // Greedy block assignment by the largest achievable per-block subproduct.
    struct Atom {
        double log_max;
        std::size_t part;
    };
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < w.parts.size(); ++i) {
        const auto& part = w.parts[i];
        double lm = 0.0;
        for (std::size_t j = 0; j < part.count; ++j)
            lm += std::log(static_cast<double>(part.primes[part.primes.size() - 1 - j]));
        atoms.push_back({lm, i});
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.log_max > b.log_max; });
    double capR = std::log(R), capS = std::log(S);
    std::vector<bool> to_R(w.parts.size(), false);
    for (const auto& a : atoms) {
        if (capR >= capS) {
            if (a.log_max > capR + 1e-12)
                throw value_error("factorable_split: split infeasible for this block structure");
            to_R[a.part] = true;
            capR -= a.log_max;
        } else {
            if (a.log_max > capS + 1e-12)
                throw value_error("factorable_split: split infeasible for this block structure");
            capS -= a.log_max;
        }
    }

    auto build_side = [&](bool side_R, double lvl) {
        DivisorWeight g;
        g.kind = w.kind;
        g.level = lvl;
        g.sift_lo = w.sift_lo;
        g.sift_hi = w.sift_hi;
        std::vector<const DivisorWeight::Part*> sel;
        for (std::size_t i = 0; i < w.parts.size(); ++i)
            if (to_R[i] == side_R) sel.push_back(&w.parts[i]);
        std::vector<std::pair<std::uint64_t, double>> entries;
        std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t pi,
                                                                       std::uint64_t prod,
                                                                       int r) {
            if (pi == sel.size()) {
                entries.emplace_back(prod, r % 2 == 0 ? 1.0 : -1.0);
                return;
            }
            const auto& ps = sel[pi]->primes;
            std::uint32_t cnt = sel[pi]->count;
            std::function<void(std::size_t, std::size_t, std::uint64_t)> choose =
                [&](std::size_t k, std::size_t from, std::uint64_t pprod) {
                    if (k == cnt) {
                        rec(pi + 1, prod * pprod, r + static_cast<int>(cnt));
                        return;
                    }
                    for (std::size_t j = from; j + (cnt - k) <= ps.size(); ++j)
                        choose(k + 1, j + 1, pprod * ps[j]);
                };
            choose(0, 0, 1);
            return;
        };
        rec(0, 1, 0);
        g.set_entries(std::move(entries));
        for (auto* p : sel) g.parts.push_back(*p);
        return g;
    };
    return {build_side(true, R), build_side(false, S)};
}

double MainSieves::omega_M(std::uint64_t n, const FactorTable& t) const {
    double acc = base.combined_lower.divisor_sum(n, t);
    for (const auto& [p, sys] : per_prime)
        if (n % p == 0) acc -= 0.5 * sys.combined_upper.divisor_sum(n, t);
    return base.norm * acc;
}

double MainSieves::Omega_M_eval(std::uint64_t n, const FactorTable& t) const {
    return Omega_M_sys.eval_upper(n, t);
}

double MainSieves::Omega_prime(std::uint64_t n, const FactorTable& t) const {
    return base.eval_upper(n, t);
}

double MainSieves::interval_lower(std::uint64_t n, const FactorTable& t) const {
    return interval_sys.eval_lower(n, t);
}

double MainSieves::interval_upper(std::uint64_t n, const FactorTable& t) const {
    return interval_sys.eval_upper(n, t);
}

MainSieves main_sieves(const SieveSpec& spec, const FactorTable& t) {
    const double N = static_cast<double>(spec.N);
    MainSieves ms;
    ms.c1 = std::pow(N, 0.1);
    ms.c2 = std::pow(N, 1.0 / 3 - spec.delta1);
    ms.c3 = std::pow(N, 1.0 / 6);
    if (!(ms.c1 < ms.c2 && ms.c2 < std::sqrt(N)))
        throw value_error("main_sieves: cut-point ordering violated");
    const double Dm = std::pow(N, 0.5 - 2.0 * spec.delta1);
    const std::uint64_t P1 = spec.P1_int();
    const std::uint64_t z1 = static_cast<std::uint64_t>(std::ceil(ms.c1));

    ms.base = linear_sieve_weights(P1, std::max(P1, z1), Dm, t);
    ms.base.combined_lower.kind = WeightKind::main_omega;
    ms.base.combined_upper.kind = WeightKind::main_OmegaPrime;
    for (std::uint64_t p : t.primes(static_cast<std::uint64_t>(std::ceil(ms.c1)),
                                    static_cast<std::uint64_t>(std::ceil(ms.c2)))) {
        ms.per_prime.emplace_back(
            p, linear_sieve_weights(P1, std::max(P1, z1), Dm / static_cast<double>(p), t));
    }
    std::uint64_t z3 = static_cast<std::uint64_t>(std::floor(ms.c3)) + 1;
    ms.Omega_M_sys = linear_sieve_weights(P1 + 1, std::max(P1 + 1, z3), Dm, t);
    ms.Omega_M_sys.combined_upper.kind = WeightKind::main_Omega;

    const std::uint64_t P0 = spec.P0_int();
    double D_int = std::max(std::pow(N, 0.25), std::pow(static_cast<double>(P0), 3.5));
    ms.interval_sys = linear_sieve_weights(P1, std::max(P1, P0), D_int, t);
    ms.interval_sys.combined_lower.kind = WeightKind::interval_lower;
    ms.interval_sys.combined_upper.kind = WeightKind::interval_upper;

    // density constants
    double L = ms.base.combined_lower.density_sum(t);
    double U = 0.0;
    for (const auto& [p, sys] : ms.per_prime)
        U += sys.combined_upper.density_sum(t) / static_cast<double>(p - 1);
    ms.V_omega_M = ms.base.norm * (L - 0.5 * U);
    ms.V_Omega_M = ms.Omega_M_sys.upper_density(t);
    ms.V_Omega_prime = ms.base.upper_density(t);
    ms.V_interval_lower = ms.interval_sys.lower_density(t);
    ms.V_interval_upper = ms.interval_sys.upper_density(t);
    return ms;
}

bool divisor_sum_identity_check(const DivisorWeight& lambda,
                                const std::map<std::uint64_t, double>& g_on_primes,
                                std::uint64_t e, std::uint64_t script_p, const FactorTable& t,
                                double tol) {
    if (script_p < 1 || t.mu(script_p) == 0)
        throw value_error("divisor_sum_identity_check: script_p must be squarefree");
    if (e < 1 || script_p % e != 0)
        throw value_error("divisor_sum_identity_check: e must divide script_p");
    std::vector<std::uint64_t> ps;
    if (script_p > 1)
        for (auto [p, ex] : t.factorize(script_p)) {
            ps.push_back(p);
            if (!g_on_primes.count(p)) throw value_error("divisor_sum_identity_check: missing g(p)");
            double gp = g_on_primes.at(p);
            if (!(gp >= 0.0 && gp < 1.0))
                throw value_error("divisor_sum_identity_check: need 0 <= g(p) < 1");
        }
    for (auto& [d, v] : lambda.entries())
        if (script_p % d != 0)
            throw value_error("divisor_sum_identity_check: lambda support must divide script_p");

    auto divisors = [&](std::uint64_t m) {
        std::vector<std::uint64_t> out{1};
        for (std::uint64_t p : ps)
            if (m % p == 0) {
                std::size_t sz = out.size();
                for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * p);
            }
        return out;
    };
    auto g_of = [&](std::uint64_t d) {
        double v = 1.0;
        for (std::uint64_t p : ps)
            if (d % p == 0) v *= g_on_primes.at(p);
        return v;
    };
    auto h_of_p = [&](std::uint64_t p) {
        double gp = g_on_primes.at(p);
        return gp / (1.0 - gp);
    };

    // LHS: g(e) sum_{d | P/e} lambda(de) g(d)
    double lhs = 0.0;
    for (std::uint64_t d : divisors(script_p / e)) lhs += lambda.coeff(d * e) * g_of(d);
    lhs *= g_of(e);

    // RHS: prod(1-g(p)) mu(e) sum_b theta(b) h(b) * prod_{p|e, p nmid b} h(p) * (-1)^{omega((b,e))}
    double front = t.mu(e);
    for (std::uint64_t p : ps) front *= 1.0 - g_on_primes.at(p);
    double sum = 0.0;
    for (std::uint64_t b : divisors(script_p)) {
        double theta = 0.0;
        for (std::uint64_t d : divisors(b)) theta += lambda.coeff(d);
        if (theta == 0.0) continue;
        double term = theta;
        for (std::uint64_t p : ps) {
            bool pb = b % p == 0, pe = e % p == 0;
            if (pb) term *= h_of_p(p);
            if (pe && !pb) term *= h_of_p(p);
            if (pe && pb) term *= -1.0;
        }
        sum += term;
    }
    double rhs = front * sum;
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return std::abs(lhs - rhs) <= tol * scale;
}

}  // namespace cgb

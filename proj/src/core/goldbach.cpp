#include "core/goldbach.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "core/fourier.hpp"
#include "json.hpp"

namespace cgb {

namespace {

// prod_{5<=p<=cutoff} (1-4/p)(1-1/p)^{-4}, cached per cutoff
double generic_euler_product(std::uint64_t cutoff, const FactorTable& t) {
    static std::map<std::uint64_t, double> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(cutoff);
    if (it != cache.end()) return it->second;
    std::vector<double> logs;
    for (std::uint64_t p : t.primes(5, cutoff + 1)) {
        double x = static_cast<double>(p);
        logs.push_back(std::log1p(-4.0 / x) - 4.0 * std::log1p(-1.0 / x));
    }
    double v = std::exp(pairwise_sum(logs));
    cache.emplace(cutoff, v);
    return v;
}

double local_factor_product(std::uint64_t m, std::uint64_t lo_p, std::uint64_t hi_p,
                            const FactorTable& t) {
    // prod over p | m(m+4), lo<=p<hi of (1+1/(p-4)) times prod over p | m+2 of (1+2/(p-4))
    double v = 1.0;
    auto visit = [&](std::uint64_t n, double num) {
        for (auto [p, e] : t.factorize(n))
            if (p >= lo_p && p < hi_p) v *= 1.0 + num / (static_cast<double>(p) - 4.0);
    };
    visit(m, 1.0);
    visit(m + 4, 1.0);
    visit(m + 2, 2.0);
    return v;
}

}  // namespace

SingularSeriesValue singular_series(std::uint64_t m, std::uint64_t cutoff, const FactorTable& t) {
    if (cutoff < 1000) throw value_error("singular_series: cutoff must be >= 10^3");
    if (m + 4 > t.limit()) throw range_error("singular_series: m+4 beyond factor table");
    if (cutoff + 1 > t.limit()) throw range_error("singular_series: cutoff beyond factor table");
    SingularSeriesValue out;
    out.m = m;
    out.cutoff = cutoff;
    if (m % 6 != 4) return out;  // value 0, tail 0
    double v = 13.5 * generic_euler_product(cutoff, t);
    v *= local_factor_product(m, 5, ~0ull, t);
    out.value = v;
    out.tail_bound = std::expm1(7.0 / static_cast<double>(cutoff));
    return out;
}

double singular_series_truncated(std::uint64_t m, std::uint64_t P, const FactorTable& t) {
    if (m % 6 != 4) return 0.0;
    double v = 13.5;
    for (std::uint64_t p : t.primes(5, P)) {
        double x = static_cast<double>(p);
        v *= (1.0 - 4.0 / x) * std::pow(1.0 - 1.0 / x, -4.0);
    }
    return v * local_factor_product(m, 5, P, t);
}

std::vector<std::uint8_t> chen_rep_bitmap(std::uint64_t limit, const FactorTable& t) {
    if (limit + 2 > t.limit()) throw range_error("chen_rep_bitmap: limit+2 beyond factor table");
    std::vector<std::uint8_t> bm(limit + 1, 0);
    for (std::uint64_t p = 3; p <= limit; p += 2)
        if (chen_rep_indicator(p, t)) bm[p] = 1;
    return bm;
}

namespace {

std::uint64_t rep_count_with(const std::vector<std::uint8_t>& bm, std::uint64_t m) {
    if (m < 6 || m > 2 * (bm.size() - 1)) return 0;
    std::uint64_t c = 0;
    for (std::uint64_t p = 3; p + p <= m; p += 2) {
        std::uint64_t q = m - p;
        if (q >= bm.size()) continue;
        if (bm[p] && bm[q]) c += p + p == m ? 1 : 2;  // ordered pairs
    }
    return c;
}

}  // namespace

std::uint64_t rep_count(std::uint64_t m, const FactorTable& t) {
    // exactness needs the Chen test for every part up to m-3, i.e. m <= limit-1
    if (m + 1 > t.limit()) throw range_error("rep_count: m beyond the exact table range");
    auto bm = chen_rep_bitmap(std::min(m, t.limit() - 2), t);
    return rep_count_with(bm, m);
}

std::uint64_t rep_count_unordered(std::uint64_t m, const FactorTable& t) {
    if (m + 1 > t.limit())
        throw range_error("rep_count_unordered: m beyond the exact table range");
    auto bm = chen_rep_bitmap(std::min(m, t.limit() - 2), t);
    std::uint64_t c = 0;
    for (std::uint64_t p = 3; p + p <= m; p += 2) {
        std::uint64_t q = m - p;
        if (q < bm.size() && bm[p] && bm[q]) ++c;
    }
    return c;
}

std::vector<std::int64_t> rep_window(std::uint64_t N, const FactorTable& t) {
    auto bm = chen_rep_bitmap(N, t);
    const std::uint64_t lo = N / 2 + 1;
    std::vector<std::int64_t> f(N - lo + 1);
    for (std::uint64_t n = lo; n <= N; ++n) f[n - lo] = bm[n];
    auto conv = convolve_exact(f, f);
    std::vector<std::int64_t> out(N, 0);  // m in (N, 2N], index m - N - 1
    for (std::size_t j = 0; j < conv.size(); ++j) {
        std::uint64_t m = 2 * lo + j;
        if (m > N && m <= 2 * N) out[m - N - 1] = conv[j];
    }
    return out;
}

std::vector<std::int64_t> rep_counts_upto(std::uint64_t N, const FactorTable& t) {
    auto bm = chen_rep_bitmap(N, t);
    std::vector<std::int64_t> f(bm.begin(), bm.end());
    auto conv = convolve_exact(f, f);
    conv.resize(N + 1, 0);
    return conv;
}

namespace {

struct Checkpoint {
    std::uint64_t N = 0;
    std::string filter;
    std::uint64_t last_m = 0;
    std::vector<std::uint64_t> partial;
};

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
    nlohmann::json j;
    j["N"] = cp.N;
    j["filter"] = cp.filter;
    j["last_m"] = cp.last_m;
    j["partial_exceptions"] = cp.partial;
    std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw range_error("scan: cannot write checkpoint " + tmp);
    std::string s = j.dump();
    std::fwrite(s.data(), 1, s.size(), f);
    std::fclose(f);
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw range_error("scan: cannot move checkpoint into place");
}

std::optional<Checkpoint> read_checkpoint(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return std::nullopt;
    std::string s;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, got);
    std::fclose(f);
    auto j = nlohmann::json::parse(s, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    Checkpoint cp;
    cp.N = j.value("N", 0ull);
    cp.filter = j.value("filter", "");
    cp.last_m = j.value("last_m", 0ull);
    for (auto& x : j["partial_exceptions"]) cp.partial.push_back(x.get<std::uint64_t>());
    return cp;
}

}  // namespace

ScanReport exceptional_scan(std::uint64_t N, const FactorTable& t, const ScanOptions& opts) {
    // every pair part must stay testable: part <= N - 3 and part + 2 <= limit
    if (N + 1 > t.limit()) throw range_error("exceptional_scan: N beyond the exact table range");
    ScanReport rep;
    rep.N = N;

    const std::uint64_t conv_limit = std::min(N, t.limit() - 2);
    auto counts = rep_counts_upto(conv_limit, t);
    auto bm = chen_rep_bitmap(conv_limit, t);

    std::uint64_t resume_from = 0;
    if (!opts.checkpoint_path.empty()) {
        auto cp = read_checkpoint(opts.checkpoint_path);
        if (cp && cp->N == N && cp->filter == rep.residue_filter) resume_from = cp->last_m;
    }
    (void)resume_from;  // stats are rebuilt deterministically from the counts

    // decade buckets (10^k, 10^{k+1}]
    auto decade_of = [&](std::uint64_t m) {
        std::size_t d = 0;
        std::uint64_t hi = 10;
        while (m > hi) {
            hi *= 10;
            ++d;
        }
        return d;
    };
    std::size_t ndec = decade_of(N) + 1;
    rep.decades.assign(ndec, {});
    for (std::size_t d = 0; d < ndec; ++d) {
        rep.decades[d].lo = d == 0 ? 0 : static_cast<std::uint64_t>(std::pow(10.0, d));
        rep.decades[d].hi = static_cast<std::uint64_t>(std::pow(10.0, d + 1));
        rep.decades[d].min_reps = ~0ull;
    }
    std::vector<double> sums(ndec, 0.0);

    std::uint64_t next_checkpoint = opts.shard;
    for (std::uint64_t m = 4; m <= N; m += 6) {
        std::uint64_t c = m <= conv_limit ? static_cast<std::uint64_t>(counts[m])
                                          : rep_count_with(bm, m);
        std::size_t d = decade_of(m);
        auto& ds = rep.decades[d];
        ds.scanned++;
        sums[d] += static_cast<double>(c);
        if (c < ds.min_reps) {
            ds.min_reps = c;
            ds.argmin = m;
        }
        if (c == 0) rep.exceptions.push_back(m);
        rep.checkpoint_m = m;

        if (m >= next_checkpoint) {
            next_checkpoint += opts.shard;
            if (!opts.checkpoint_path.empty())
                write_checkpoint(opts.checkpoint_path,
                                 {N, rep.residue_filter, m, rep.exceptions});
            if (opts.cancel && opts.cancel->load())
                throw interrupted_error("exceptional_scan: interrupted, checkpoint retained");
        }
    }
    for (std::size_t d = 0; d < ndec; ++d) {
        if (rep.decades[d].scanned)
            rep.decades[d].avg_reps = sums[d] / static_cast<double>(rep.decades[d].scanned);
        if (rep.decades[d].min_reps == ~0ull) rep.decades[d].min_reps = 0;
    }

    // independent re-verification pass over every listed exception
    for (std::uint64_t m : rep.exceptions) {
        if (rep_count_with(bm, m) != 0)
            throw convergence_error("exceptional_scan: re-verification disagrees at m=" +
                                    std::to_string(m));
    }
    rep.complete = true;
    if (!opts.checkpoint_path.empty())
        write_checkpoint(opts.checkpoint_path, {N, rep.residue_filter, N, rep.exceptions});
    return rep;
}

// ---- sifted additive checks ----

AdditiveCheckContext::AdditiveCheckContext(const PresieveConfig& cfg, std::uint64_t value_limit,
                                           const FactorTable& t)
    : cfg_(cfg), limit_(value_limit) {
    if (value_limit + 2 > t.limit())
        throw range_error("AdditiveCheckContext: value limit beyond factor table");
    if (cfg.P1 <= 5) {
        DivisorWeight w;
        w.kind = WeightKind::beta_lower;
        w.level = cfg.D1;
        w.sift_lo = 5;
        w.sift_hi = cfg.P1;
        w.set_entries({{1, 1.0}});
        lower_ = upper_ = w;
        lower_.kind = WeightKind::beta_lower;
        upper_.kind = WeightKind::beta_upper;
    } else {
        auto [lo, up] = beta_weights(cfg.beta, 5, cfg.P1, cfg.D1, t);
        lower_ = std::move(lo);
        upper_ = std::move(up);
    }
    double norm = cramer_norm(cfg.P1, t);
    lower_.normalization = norm;
    upper_.normalization = norm;

    vals_lower_.assign(value_limit + 3, 0.0);
    vals_upper_.assign(value_limit + 3, 0.0);
    for (std::uint64_t n = 1; n <= value_limit + 2; ++n) {
        vals_lower_[n] = presieve_eval(n, lower_, t);
        vals_upper_[n] = presieve_eval(n, upper_, t);
    }
}

namespace {

// deterministic chunked pairwise accumulation
struct ChunkSum {
    std::vector<double> chunks;
    std::vector<double> buf;
    void push(double x) {
        buf.push_back(x);
        if (buf.size() == 4096) flush();
    }
    void flush() {
        if (!buf.empty()) {
            chunks.push_back(pairwise_sum(buf));
            buf.clear();
        }
    }
    double total() {
        flush();
        return pairwise_sum(chunks);
    }
};

}  // namespace

AdditiveCheckContext::Result AdditiveCheckContext::presieve_additive_check(
    std::uint64_t m, std::uint64_t X, const std::array<SieveSide, 4>& kinds,
    const FactorTable& t) const {
    if (X > m) throw value_error("presieve_additive_check: need X <= m");
    if (m + 2 > limit_ + 2) throw range_error("presieve_additive_check: m beyond context limit");
    const auto& f1 = values(kinds[0]);
    const auto& f2 = values(kinds[1]);
    const auto& f3 = values(kinds[2]);
    const auto& f4 = values(kinds[3]);

    ChunkSum acc;
    for (std::uint64_t n = 1; n < std::min(X + 1, m); ++n) {
        double a = f1[n];
        if (a == 0.0) continue;
        double b = f2[n + 2];
        if (b == 0.0) continue;
        double c = f3[m - n];
        if (c == 0.0) continue;
        acc.push(a * b * c * f4[m - n + 2]);
    }
    Result r;
    r.lhs = acc.total();
    std::uint64_t cut = std::max<std::uint64_t>(1000, std::min<std::uint64_t>(100'000, t.limit() - 5));
    auto ss = singular_series(m, cut, t);
    r.main = static_cast<double>(X) * ss.value;
    if (ss.value == 0.0) {
        r.applicable = false;
        r.ratio = 0.0;
    } else {
        r.ratio = r.lhs / r.main;
    }
    return r;
}

AdditiveCheckContext::ExceptionalResult AdditiveCheckContext::exceptional_additive_check(
    std::uint64_t m, std::uint64_t X, const DirichletCharacter& chi, int which_case,
    const std::array<SieveSide, 4>& kinds, const FactorTable& t) const {
    const std::uint64_t r = chi.modulus();
    if (!chi.is_real() || !chi.primitive() || chi.principal() || r < 3)
        throw value_error("exceptional_additive_check: chi must be real primitive, r >= 3");
    if (which_case != 1 && which_case != 2)
        throw value_error("exceptional_additive_check: case must be 1 (a1) or 2 (a2)");
    if (m > limit_)
        throw range_error("exceptional_additive_check: m beyond context limit");
    if (X > m) throw value_error("exceptional_additive_check: need X <= m");

    std::vector<int> v(r);
    for (std::uint64_t b = 0; b < r; ++b) v[b] = chi.real_value(b);
    auto at = [&](std::uint64_t x) { return v[x % r]; };

    ExceptionalResult out;
    std::int64_t S[7] = {0, 0, 0, 0, 0, 0, 0};
    std::int64_t a1 = 0, a2 = 0;
    for (std::uint64_t b = 0; b < r; ++b) {
        int vb = v[b], vb2 = at(b + 2);
        std::uint64_t mb = (m % r + r - b) % r;
        int vmb = v[mb], vmb2 = at(mb + 2);
        S[1] += (vb != 0 && vb2 != 0 && vmb != 0 && vmb2 != 0) ? 1 : 0;
        S[2] += (vb2 != 0 && vmb != 0 && vmb2 != 0) ? vb : 0;
        S[3] += (vb2 != 0 && vmb2 != 0) ? vb * vmb : 0;
        S[4] += (vb != 0 && vmb2 != 0) ? vb2 * vmb : 0;
        S[5] += (vb != 0 && vmb != 0 && vmb2 != 0) ? vb2 : 0;
        S[6] += (vmb2 != 0) ? vb * vb2 * vmb : 0;
        a1 += (vb == -1 && vmb == -1 && vb2 != 0 && vmb2 != 0) ? 1 : 0;
        a2 += (vb == 1 && vb2 == 1 && vmb == -1 && vmb2 != 0) ? 1 : 0;
    }
    for (int i = 1; i <= 6; ++i) out.S[i - 1] = static_cast<double>(S[i]);
    out.sum_a1 = static_cast<double>(a1);
    out.sum_a2 = static_cast<double>(a2);
    if (S[1] == 0) {
        out.degenerate = true;
        return out;
    }
    out.sigma1 = static_cast<double>(S[3]) / static_cast<double>(S[1]);
    out.sigma2 = static_cast<double>(S[4]) / static_cast<double>(S[1]);

    const auto& f1 = values(kinds[0]);
    const auto& f2 = values(kinds[1]);
    const auto& f3 = values(kinds[2]);
    const auto& f4 = values(kinds[3]);
    ChunkSum acc;
    for (std::uint64_t n = 1; n < std::min(X + 1, m); ++n) {
        std::uint64_t b = n % r;
        std::uint64_t mb = (m % r + r - b) % r;
        bool mask;
        if (which_case == 1)
            mask = v[b] == -1 && v[mb] == -1 && at(b + 2) != 0 && at(mb + 2) != 0;
        else
            mask = v[b] == 1 && at(b + 2) == 1 && v[mb] == -1 && at(mb + 2) != 0;
        if (!mask) continue;
        double x = f1[n] * f2[n + 2] * f3[m - n] * f4[m - n + 2];
        if (x != 0.0) acc.push(x);
    }
    out.lhs = acc.total();
    std::uint64_t cut2 = std::max<std::uint64_t>(1000, std::min<std::uint64_t>(100'000, t.limit() - 5));
    auto ss = singular_series(m, cut2, t);
    if (which_case == 1)
        out.predicted = static_cast<double>(X) * ss.value * (1.0 + out.sigma1) / 4.0;
    else
        out.predicted =
            static_cast<double>(X) * ss.value * (1.0 - out.sigma1 - out.sigma2) / 8.0;
    return out;
}

AdditiveCheckContext::CorrelationResult AdditiveCheckContext::correlation_upper_check(
    std::uint64_t m, std::uint64_t N, std::uint64_t R, const std::array<SieveSide, 3>& kinds,
    const FactorTable& t) const {
    if (!(m >= 5 * N / 4 && m <= 7 * N / 4 && m % 6 == 4))
        throw value_error("correlation_upper_check: need m in [5N/4, 7N/4], m == 4 (mod 6)");
    ModelParams mp;
    mp.N = N;
    mp.R = R;
    const auto& f1 = values(kinds[0]);
    const auto& f2 = values(kinds[1]);
    const auto& f3 = values(kinds[2]);
    ChunkSum acc;
    for (std::uint64_t n = N / 2 + 1; n <= N; ++n) {
        if (m - n + 2 > limit_ + 2 || m <= n) continue;
        double w = std::abs(f1[n + 2]) * std::abs(f2[m - n]) * std::abs(f3[m - n + 2]);
        if (w == 0.0) continue;
        acc.push(H_R(n, mp, t) * w);
    }
    CorrelationResult out;
    out.lhs = acc.total();
    std::uint64_t cut3 = std::max<std::uint64_t>(1000, std::min<std::uint64_t>(100'000, t.limit() - 5));
    auto ss = singular_series(m, cut3, t);
    out.envelope = static_cast<double>(N) * ss.value;
    out.ratio = ss.value > 0 ? out.lhs / out.envelope : 0.0;
    return out;
}

}  // namespace cgb

#include "core/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

#include "core/models.hpp"

namespace cgb {

double Window::l1_norm() const {
    std::vector<double> t(values_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::abs(values_[i]);
    return pairwise_sum(t);
}

double Window::l2_norm() const {
    std::vector<double> t(values_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = values_[i] * values_[i];
    return std::sqrt(pairwise_sum(t));
}

double Window::linf_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Window::weighted_l1() const {
    std::vector<double> t(values_.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = std::abs(values_[i]) * static_cast<double>(lo_ + i);
    return pairwise_sum(t);
}

Window Window::shifted(int delta) const {
    if (delta != 2 && delta != -2) throw value_error("Window::shifted: shift is by +-2 only");
    Window g(N_);
    for (std::uint64_t n = lo_; n <= N_; ++n) {
        std::int64_t src = static_cast<std::int64_t>(n) + delta;
        if (src >= static_cast<std::int64_t>(lo_) && src <= static_cast<std::int64_t>(N_))
            g.at(n) = values_[src - lo_];
    }
    return g;
}

void Window::save_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw range_error("Window::save_csv: cannot open " + path);
    std::fprintf(f, "n,value\n");
    for (std::uint64_t n = lo_; n <= N_; ++n)
        std::fprintf(f, "%llu,%.17g\n", static_cast<unsigned long long>(n), values_[n - lo_]);
    std::fclose(f);
}

Window Window::load_csv(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw range_error("Window::load_csv: cannot open " + path);
    char line[256];
    if (!std::fgets(line, sizeof line, f)) {
        std::fclose(f);
        throw value_error("Window::load_csv: empty file");
    }
    std::vector<std::pair<std::uint64_t, double>> rows;
    while (std::fgets(line, sizeof line, f)) {
        unsigned long long n;
        double v;
        if (std::sscanf(line, "%llu,%lg", &n, &v) == 2) rows.emplace_back(n, v);
    }
    std::fclose(f);
    if (rows.empty()) throw value_error("Window::load_csv: no rows");
    Window w(rows.back().first);
    for (auto [n, v] : rows) w.at(n) = v;
    return w;
}

void Window::save_binary(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw range_error("Window::save_binary: cannot open " + path);
    const char magic[4] = {'C', 'G', 'W', 'N'};
    std::uint32_t mode = 0;  // raw doubles
    std::fwrite(magic, 1, 4, f);
    std::fwrite(&mode, 4, 1, f);
    std::fwrite(&N_, 8, 1, f);
    std::fwrite(values_.data(), 8, values_.size(), f);
    std::fclose(f);
}

Window Window::load_binary(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw range_error("Window::load_binary: cannot open " + path);
    char magic[4];
    std::uint32_t mode;
    std::uint64_t N;
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, "CGWN", 4) != 0 ||
        std::fread(&mode, 4, 1, f) != 1 || std::fread(&N, 8, 1, f) != 1) {
        std::fclose(f);
        throw value_error("Window::load_binary: bad header");
    }
    Window w(N);
    std::size_t got = std::fread(w.values().data(), 8, w.size(), f);
    std::fclose(f);
    if (got != w.size()) throw value_error("Window::load_binary: truncated payload");
    return w;
}

void fft(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw value_error("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = kTwoPi / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

cplx exp_sum(const Window& f, double alpha) {
    std::vector<cplx> terms(f.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double ph = kTwoPi * alpha * static_cast<double>(f.lo() + i);
        terms[i] = f.values()[i] * cplx(std::cos(ph), std::sin(ph));
    }
    return pairwise_sum(std::span<const cplx>(terms));
}

namespace {

std::size_t fft_grid_size(std::uint64_t N, unsigned oversample, std::uint64_t mem_budget) {
    if (oversample < 4) throw value_error("fourier_norm: oversample must be >= 4");
    std::uint64_t want = static_cast<std::uint64_t>(oversample) * N;
    std::size_t M = 1;
    while (M < want) M <<= 1;
    if (M * sizeof(cplx) > mem_budget) throw capacity_error("fourier_norm: memory budget exceeded");
    return M;
}

std::vector<cplx> windowed_spectrum(const Window& f, std::size_t M) {
    std::vector<cplx> a(M, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t n = f.lo() + i;
        a[n % M] += f.values()[i];
    }
    fft(a, true);  // inverse transform realizes e(+alpha n) phases on the grid k/M
    for (auto& x : a) x *= static_cast<double>(M);
    return a;
}

}  // namespace

NormResult fourier_norm(const Window& f, unsigned oversample, std::uint64_t mem_budget) {
    std::size_t M = fft_grid_size(f.N(), oversample, mem_budget);
    auto a = windowed_spectrum(f, M);
    NormResult r;
    for (std::size_t k = 0; k < M; ++k) {
        double v = std::abs(a[k]);
        if (v > r.value) {
            r.value = v;
            r.argmax_alpha = static_cast<double>(k) / static_cast<double>(M);
        }
    }
    r.defect = M_PI * f.weighted_l1() / (static_cast<double>(oversample) * f.N());
    return r;
}

ArcSet ArcSet::major_arcs(std::uint64_t R, std::uint64_t N) {
    if (R < 1) throw value_error("major_arcs: R must be >= 1");
    ArcSet s;
    s.R = R;
    s.N = N;
    for (std::uint64_t q = 1; q <= R; ++q)
        for (std::uint64_t b = 0; b < std::max<std::uint64_t>(q, 1); ++b)
            if (gcd_u64(b, q) == 1 || (q == 1 && b == 0)) s.arcs.push_back({b, q});
    return s;
}

bool ArcSet::is_major(std::uint64_t k, std::uint64_t den) const {
    using i128 = __int128;
    k %= den;
    for (std::uint64_t q = 1; q <= R; ++q) {
        // nearest b/q to k/den, on the circle
        std::uint64_t b = static_cast<std::uint64_t>(
            (static_cast<i128>(k) * q + den / 2) / den);
        i128 num = static_cast<i128>(k) * q - static_cast<i128>(b) * den;
        if (num < 0) num = -num;
        // |k/den - b/q| <= R/N  <=>  |kq - b den| * N <= R * q * den
        if (num * static_cast<i128>(N) <= static_cast<i128>(R) * q * den) return true;
    }
    return false;
}

bool ArcSet::is_major(double alpha) const {
    alpha -= std::floor(alpha);
    for (std::uint64_t q = 1; q <= R; ++q) {
        double b = std::round(alpha * static_cast<double>(q));
        double d = std::abs(alpha - b / static_cast<double>(q));
        if (d <= static_cast<double>(R) / static_cast<double>(N) + 1e-15) return true;
    }
    return false;
}

NormResult restricted_norm(const Window& f, const ArcSet& arcs, ArcSide side,
                           unsigned oversample, std::uint64_t mem_budget) {
    std::size_t M = fft_grid_size(f.N(), oversample, mem_budget);
    auto a = windowed_spectrum(f, M);
    NormResult r;
    for (std::size_t k = 0; k < M; ++k) {
        bool maj = arcs.is_major(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(M));
        if ((side == ArcSide::major) != maj) continue;
        double v = std::abs(a[k]);
        if (v > r.value) {
            r.value = v;
            r.argmax_alpha = static_cast<double>(k) / static_cast<double>(M);
        }
    }
    r.defect = M_PI * f.weighted_l1() / (static_cast<double>(oversample) * f.N());
    return r;
}

// ---- exact integer convolution via NTT + 2-prime CRT ----

namespace {

struct NttPrime {
    std::uint64_t p, g;
};
constexpr NttPrime kNtt[2] = {{2013265921ull, 31ull}, {1811939329ull, 13ull}};

void ntt(std::vector<std::uint64_t>& a, const NttPrime& P, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t wl = pow_mod(P.g, (P.p - 1) / len, P.p);
        if (inverse) wl = inv_mod(wl, P.p);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t w = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::uint64_t u = a[i + k];
                std::uint64_t v = static_cast<std::uint64_t>(
                    static_cast<unsigned __int128>(a[i + k + len / 2]) * w % P.p);
                a[i + k] = u + v < P.p ? u + v : u + v - P.p;
                a[i + k + len / 2] = u >= v ? u - v : u + P.p - v;
                w = static_cast<std::uint64_t>(static_cast<unsigned __int128>(w) * wl % P.p);
            }
        }
    }
    if (inverse) {
        std::uint64_t ninv = inv_mod(n % P.p, P.p);
        for (auto& x : a)
            x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * ninv % P.p);
    }
}

std::vector<std::uint64_t> ntt_convolve(const std::vector<std::int64_t>& a,
                                        const std::vector<std::int64_t>& b, const NttPrime& P,
                                        std::size_t M) {
    std::vector<std::uint64_t> fa(M, 0), fb(M, 0);
    auto reduce = [&P](std::int64_t x) {
        std::int64_t r = x % static_cast<std::int64_t>(P.p);
        if (r < 0) r += static_cast<std::int64_t>(P.p);
        return static_cast<std::uint64_t>(r);
    };
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = reduce(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = reduce(b[i]);
    ntt(fa, P, false);
    ntt(fb, P, false);
    for (std::size_t i = 0; i < M; ++i)
        fa[i] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(fa[i]) * fb[i] % P.p);
    ntt(fa, P, true);
    return fa;
}

}  // namespace

std::vector<std::int64_t> convolve_exact(const std::vector<std::int64_t>& a,
                                         const std::vector<std::int64_t>& b) {
    if (a.empty() || b.empty()) return {};
    long double a1 = 0, binf = 0, b1 = 0, ainf = 0;
    for (auto x : a) {
        a1 += std::abs((long double)x);
        ainf = std::max<long double>(ainf, std::abs((long double)x));
    }
    for (auto x : b) {
        b1 += std::abs((long double)x);
        binf = std::max<long double>(binf, std::abs((long double)x));
    }
    long double bound = std::min(a1 * binf, b1 * ainf);
    const unsigned __int128 crt_mod =
        static_cast<unsigned __int128>(kNtt[0].p) * kNtt[1].p;
    if (bound * 2 >= static_cast<long double>(crt_mod))
        throw capacity_error("convolve_exact: coefficient overflow for CRT modulus");

    std::size_t want = a.size() + b.size() - 1, M = 1;
    while (M < want) M <<= 1;
    auto r0 = ntt_convolve(a, b, kNtt[0], M);
    auto r1 = ntt_convolve(a, b, kNtt[1], M);

    // CRT: x = r0 + p0 * ((r1 - r0) * inv(p0) mod p1), centered lift.
    const std::uint64_t p0 = kNtt[0].p, p1 = kNtt[1].p;
    const std::uint64_t p0inv = inv_mod(p0 % p1, p1);
    std::vector<std::int64_t> out(want);
    for (std::size_t i = 0; i < want; ++i) {
        std::uint64_t d = r1[i] >= r0[i] % p1 ? r1[i] - r0[i] % p1 : r1[i] + p1 - r0[i] % p1;
        std::uint64_t t = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(d) * p0inv % p1);
        unsigned __int128 x = static_cast<unsigned __int128>(t) * p0 + r0[i];
        if (x > crt_mod / 2)
            out[i] = -static_cast<std::int64_t>(static_cast<std::uint64_t>(crt_mod - x));
        else
            out[i] = static_cast<std::int64_t>(static_cast<std::uint64_t>(x));
    }
    return out;
}

std::vector<double> convolve(const Window& f, const Window& g, ConvolveMode mode) {
    if (f.N() != g.N()) throw value_error("convolve: window sizes differ");
    const std::uint64_t N = f.N();
    std::vector<double> out(N, 0.0);  // m in (N, 2N], index m - N - 1
    const std::uint64_t base = 2 * f.lo();

    if (mode == ConvolveMode::exact_integer) {
        auto to_int = [](const Window& w) {
            std::vector<std::int64_t> v(w.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                double x = w.values()[i];
                if (std::rint(x) != x || std::abs(x) >= 2147483648.0)
                    throw value_error("convolve: exact mode requires integer values < 2^31");
                v[i] = static_cast<std::int64_t>(x);
            }
            return v;
        };
        auto conv = convolve_exact(to_int(f), to_int(g));
        for (std::size_t j = 0; j < conv.size(); ++j) {
            std::uint64_t m = base + j;
            if (m > N && m <= 2 * N) out[m - N - 1] = static_cast<double>(conv[j]);
        }
        return out;
    }

    std::size_t want = f.size() + g.size() - 1, M = 1;
    while (M < want) M <<= 1;
    std::vector<cplx> fa(M, 0.0), fb(M, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) fa[i] = f.values()[i];
    for (std::size_t i = 0; i < g.size(); ++i) fb[i] = g.values()[i];
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < M; ++i) fa[i] *= fb[i];
    fft(fa, true);
    for (std::size_t j = 0; j < want; ++j) {
        std::uint64_t m = base + j;
        if (m > N && m <= 2 * N) out[m - N - 1] = fa[j].real();
    }
    return out;
}

BRTransformReport bR_transform_check(std::uint64_t N, std::uint64_t R, unsigned samples,
                                     std::uint64_t seed) {
    double r11 = 11.0 * std::log(static_cast<double>(R));
    if (r11 > std::log(static_cast<double>(N)) + 1e-12)
        throw value_error("bR_transform_check: regime violation, R^11 > N");

    const std::uint64_t K = N / (R * R * R * R);
    std::vector<double> bvals(K + 1);
    for (std::uint64_t n = 0; n <= K; ++n)
        bvals[n] = b_R(static_cast<std::int64_t>(n), N, R);

    auto bhat = [&](double alpha) {
        std::vector<double> terms(K + 1);
        terms[0] = bvals[0];
        for (std::uint64_t n = 1; n <= K; ++n)
            terms[n] = 2.0 * bvals[n] * std::cos(kTwoPi * alpha * static_cast<double>(n));
        return pairwise_sum(terms);
    };

    ArcSet arcs = ArcSet::major_arcs(R, N);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    BRTransformReport rep;
    // alpha = 0 plus random points inside major arcs
    for (unsigned s = 0; s < samples; ++s) {
        double alpha;
        if (s == 0) {
            alpha = 0.0;
        } else {
            const auto& arc = arcs.arcs[rng() % arcs.arcs.size()];
            double off = (2.0 * unit(rng) - 1.0) * static_cast<double>(R) / static_cast<double>(N);
            alpha = static_cast<double>(arc.b) / static_cast<double>(arc.q) + off;
            alpha -= std::floor(alpha);
        }
        rep.max_major_deviation = std::max(rep.max_major_deviation, std::abs(bhat(alpha) - 1.0));
        ++rep.samples_major;
    }
    while (rep.samples_minor < samples) {
        double alpha = unit(rng);
        if (arcs.is_major(alpha)) continue;
        rep.max_minor_value = std::max(rep.max_minor_value, std::abs(bhat(alpha)));
        ++rep.samples_minor;
    }
    return rep;
}

}  // namespace cgb

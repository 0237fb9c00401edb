#include "core/arith.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace cgb {

namespace {
constexpr char kMagic[4] = {'C', 'G', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

FactorTable FactorTable::build(std::uint64_t limit, std::uint64_t cap) {
    if (limit < 2) throw value_error("FactorTable::build: limit must be >= 2");
    if (limit > 0xFFFFFFFFull) throw value_error("FactorTable::build: limit exceeds 32-bit entries");
    if (limit + 1 > cap) throw capacity_error("FactorTable::build: limit exceeds memory cap");

    FactorTable t;
    t.limit_ = limit;
    t.spf_.assign(limit + 1, 0);
    // Linear sieve: each composite is crossed exactly once by its smallest prime.
    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(1.3 * limit / std::max(1.0, std::log(double(limit)))));
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (t.spf_[i] == 0) {
            t.spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > t.spf_[i]) break;
            std::uint64_t ip = i * p;
            if (ip > limit) break;
            t.spf_[ip] = p;
        }
    }
    return t;
}

std::vector<std::uint64_t> FactorTable::primes(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    if (hi > limit_ + 1) throw range_error("FactorTable::primes: range beyond table");
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
        if (spf_[n] == n) out.push_back(n);
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> FactorTable::factorize(std::uint64_t n) const {
    if (n < 2 || n > limit_) throw range_error("FactorTable::factorize: n out of range");
    std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
    while (n > 1) {
        std::uint64_t p = spf_[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    return f;
}

std::vector<std::uint64_t> FactorTable::prime_divisors_in(std::uint64_t n, std::uint64_t lo,
                                                          std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    if (n > limit_) throw range_error("FactorTable::prime_divisors_in: n out of range");
    while (n > 1) {
        std::uint64_t p = spf_[n];
        if (p >= lo && p < hi) out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

std::uint64_t FactorTable::phi(std::uint64_t n) const {
    if (n == 1) return 1;
    std::uint64_t r = 1;
    for (auto [p, e] : factorize(n)) {
        r *= p - 1;
        for (std::uint32_t i = 1; i < e; ++i) r *= p;
    }
    return r;
}

int FactorTable::mu(std::uint64_t n) const {
    if (n == 1) return 1;
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t FactorTable::tau(std::uint64_t n) const {
    if (n == 1) return 1;
    std::uint64_t r = 1;
    for (auto [p, e] : factorize(n)) r *= e + 1;
    return r;
}

std::uint32_t FactorTable::big_omega(std::uint64_t n) const {
    if (n == 1) return 0;
    std::uint32_t r = 0;
    for (auto [p, e] : factorize(n)) r += e;
    return r;
}

std::uint32_t FactorTable::small_omega(std::uint64_t n) const {
    if (n == 1) return 0;
    return static_cast<std::uint32_t>(factorize(n).size());
}

double FactorTable::von_mangoldt(std::uint64_t n) const {
    if (n < 2 || n > limit_) return 0.0;
    return spf_[n] == n ? std::log(static_cast<double>(n)) : 0.0;
}

double FactorTable::mult_fn(const std::string& name, std::uint64_t n) const {
    if (n < 1) throw range_error("mult_fn: n must be >= 1");
    if (name == "phi") return static_cast<double>(phi(n));
    if (name == "mu") return static_cast<double>(mu(n));
    if (name == "tau") return static_cast<double>(tau(n));
    if (name == "bigomega") return static_cast<double>(big_omega(n));
    if (name == "smallomega") return static_cast<double>(small_omega(n));
    if (name == "vonmangoldt") return von_mangoldt(n);
    throw value_error("mult_fn: unknown function name '" + name + "'");
}

bool FactorTable::rough_in(std::uint64_t n, std::uint64_t lo, std::uint64_t hi) const {
    if (n > limit_) throw range_error("FactorTable::rough_in: n out of range");
    while (n > 1) {
        std::uint64_t p = spf_[n];
        if (p >= lo && p < hi) return false;
        if (p >= hi) return true;  // spf only grows along the factorization
        while (n % p == 0) n /= p;
    }
    return true;
}

void FactorTable::save(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw range_error("FactorTable::save: cannot open " + path);
    unsigned char header[16] = {0};
    std::memcpy(header, kMagic, 4);
    std::uint32_t v = kVersion;
    std::memcpy(header + 4, &v, 4);
    std::uint64_t lim = limit_;
    for (int i = 0; i < 8; ++i) header[8 + i] = static_cast<unsigned char>((lim >> (8 * i)) & 0xFF);
    bool ok = std::fwrite(header, 1, 16, f) == 16;
    ok = ok && std::fwrite(spf_.data() + 2, 4, limit_ - 1, f) == limit_ - 1;
    std::fclose(f);
    if (!ok) throw range_error("FactorTable::save: short write to " + path);
}

FactorTable FactorTable::load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw range_error("FactorTable::load: cannot open " + path);
    unsigned char header[16];
    if (std::fread(header, 1, 16, f) != 16 || std::memcmp(header, kMagic, 4) != 0) {
        std::fclose(f);
        throw value_error("FactorTable::load: bad header in " + path);
    }
    std::uint64_t lim = 0;
    for (int i = 0; i < 8; ++i) lim |= static_cast<std::uint64_t>(header[8 + i]) << (8 * i);
    FactorTable t;
    t.limit_ = lim;
    t.spf_.assign(lim + 1, 0);
    std::size_t got = std::fread(t.spf_.data() + 2, 4, lim - 1, f);
    std::fclose(f);
    if (got != lim - 1) throw value_error("FactorTable::load: truncated file " + path);
    return t;
}

}  // namespace cgb

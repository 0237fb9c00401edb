#ifndef CGB_ARITH_HPP
#define CGB_ARITH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/common.hpp"

namespace cgb {

// Smallest-prime-factor table for 2..limit. Immutable after construction and
// safe to share across threads.
class FactorTable {
  public:
    // Memory cap in table entries (4 bytes each); configurable at build time.
    static constexpr std::uint64_t kDefaultCap = (1ull << 31);

    static FactorTable build(std::uint64_t limit, std::uint64_t cap = kDefaultCap);

    std::uint64_t limit() const { return limit_; }

    std::uint32_t spf(std::uint64_t n) const {
        if (n < 2 || n > limit_) throw range_error("FactorTable::spf: n out of range");
        return spf_[n];
    }

    bool is_prime(std::uint64_t n) const {
        return n >= 2 && n <= limit_ && spf_[n] == n;
    }

    // Primes in [lo, hi).
    std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;

    std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) const;

    // Distinct prime divisors of n lying in [lo, hi).
    std::vector<std::uint64_t> prime_divisors_in(std::uint64_t n, std::uint64_t lo,
                                                 std::uint64_t hi) const;

    std::uint64_t phi(std::uint64_t n) const;
    int mu(std::uint64_t n) const;
    std::uint64_t tau(std::uint64_t n) const;
    std::uint32_t big_omega(std::uint64_t n) const;
    std::uint32_t small_omega(std::uint64_t n) const;
    // Prime-only convention: log p at primes p, 0 elsewhere (prime powers
    // included); every downstream sum uses this reading.
    double von_mangoldt(std::uint64_t n) const;

    // Named dispatch used by the CLI / C API.
    double mult_fn(const std::string& name, std::uint64_t n) const;

    bool has_prime_factor_below(std::uint64_t n, std::uint64_t bound) const {
        if (n <= 1) return false;
        return spf_[n] < bound;
    }

    // True when n has no prime factor in [lo, hi).
    bool rough_in(std::uint64_t n, std::uint64_t lo, std::uint64_t hi) const;

    // Binary cache: 16-byte header (magic, version, limit LE) + raw 32-bit entries.
    void save(const std::string& path) const;
    static FactorTable load(const std::string& path);

  private:
    FactorTable() = default;
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
};

}  // namespace cgb

#endif

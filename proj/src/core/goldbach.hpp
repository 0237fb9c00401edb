#ifndef CGB_GOLDBACH_HPP
#define CGB_GOLDBACH_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/arith.hpp"
#include "core/characters.hpp"
#include "core/chen.hpp"
#include "core/common.hpp"
#include "core/models.hpp"
#include "core/sieves.hpp"

namespace cgb {

struct SingularSeriesValue {
    std::uint64_t m = 0;
    double value = 0.0;
    std::uint64_t cutoff = 0;
    double tail_bound = 0.0;
};

// S(m) = 1_{m=4 (6)} (27/2) prod_{5<=p<=cutoff} (1-4/p)(1-1/p)^{-4}
//        * prod_{p>=5, p|m(m+4)} (1+1/(p-4)) * prod_{p>=5, p|m+2} (1+2/(p-4))
SingularSeriesValue singular_series(std::uint64_t m, std::uint64_t cutoff, const FactorTable& t);

// Same with every local factor restricted to p < P (matches a pre-sieve of range P).
double singular_series_truncated(std::uint64_t m, std::uint64_t P, const FactorTable& t);

// 0/1 indicator of the representation convention (chen_rep_indicator) on [0, limit].
std::vector<std::uint8_t> chen_rep_bitmap(std::uint64_t limit, const FactorTable& t);

// Ordered pairs (p1, p2), p1 + p2 = m.
std::uint64_t rep_count(std::uint64_t m, const FactorTable& t);
std::uint64_t rep_count_unordered(std::uint64_t m, const FactorTable& t);

// Ordered pair counts for all m in (N, 2N] from the window (N/2, N] alone.
std::vector<std::int64_t> rep_window(std::uint64_t N, const FactorTable& t);

// Ordered pair counts for every m in [0, N] (full-range convolution).
std::vector<std::int64_t> rep_counts_upto(std::uint64_t N, const FactorTable& t);

struct ScanReport {
    std::uint64_t N = 0;
    std::string residue_filter = "m == 4 (mod 6)";
    std::vector<std::uint64_t> exceptions;  // ascending, re-verified
    struct DecadeStat {
        std::uint64_t lo = 0, hi = 0;  // decade (lo, hi]
        std::uint64_t scanned = 0;
        std::uint64_t min_reps = 0, argmin = 0;
        double avg_reps = 0.0;
    };
    std::vector<DecadeStat> decades;
    std::uint64_t checkpoint_m = 0;
    bool complete = false;
};

struct ScanOptions {
    std::string checkpoint_path;           // empty: no checkpointing
    std::uint64_t shard = 100'000;         // checkpoint granularity in m
    const std::atomic<bool>* cancel = nullptr;
};

// Scans m == 4 (mod 6), m <= N; exceptions are the m with no representation,
// re-verified by an independent direct pass. Interruption keeps the checkpoint
// and throws interrupted_error; a later call resumes from it.
ScanReport exceptional_scan(std::uint64_t N, const FactorTable& t, const ScanOptions& opts = {});

// Pre-sieve selection for the additive checks.
struct PresieveConfig {
    std::uint64_t P1 = 30;
    double D1 = 6e10;  // level; the default makes the beta sieve a full Legendre sieve
    double beta = 2.0;
};

enum class SieveSide { lower, upper };

// Shared precomputation for the sifted convolution checks over a fixed table.
class AdditiveCheckContext {
  public:
    AdditiveCheckContext(const PresieveConfig& cfg, std::uint64_t value_limit,
                         const FactorTable& t);

    const std::vector<double>& values(SieveSide side) const {
        return side == SieveSide::lower ? vals_lower_ : vals_upper_;
    }
    const PresieveConfig& config() const { return cfg_; }
    std::uint64_t limit() const { return limit_; }

    struct Result {
        double lhs = 0.0, main = 0.0, ratio = 0.0;
        bool applicable = true;  // false when S(m) = 0
    };
    // lhs = sum_{n<=X} f1(n) f2(n+2) f3(m-n) f4(m-n+2); main = X * S(m).
    Result presieve_additive_check(std::uint64_t m, std::uint64_t X,
                                   const std::array<SieveSide, 4>& kinds,
                                   const FactorTable& t) const;

    struct ExceptionalResult {
        double S[6] = {0, 0, 0, 0, 0, 0};
        double sigma1 = 0.0, sigma2 = 0.0;
        double sum_a1 = 0.0, sum_a2 = 0.0;  // direct enumeration of the residue masks
        double lhs = 0.0, predicted = 0.0;
        bool degenerate = false;  // S1 = 0
    };
    ExceptionalResult exceptional_additive_check(std::uint64_t m, std::uint64_t X,
                                                 const DirichletCharacter& chi, int which_case,
                                                 const std::array<SieveSide, 4>& kinds,
                                                 const FactorTable& t) const;

    struct CorrelationResult {
        double lhs = 0.0, envelope = 0.0, ratio = 0.0;
    };
    CorrelationResult correlation_upper_check(std::uint64_t m, std::uint64_t N, std::uint64_t R,
                                              const std::array<SieveSide, 3>& kinds,
                                              const FactorTable& t) const;

  private:
    PresieveConfig cfg_;
    std::uint64_t limit_;
    DivisorWeight lower_, upper_;
    std::vector<double> vals_lower_, vals_upper_;
};

}  // namespace cgb

#endif

#ifndef CGB_DISCREPANCY_HPP
#define CGB_DISCREPANCY_HPP

#include <cstdint>
#include <optional>

#include "core/arith.hpp"
#include "core/characters.hpp"
#include "core/chen.hpp"
#include "core/common.hpp"

namespace cgb {

enum class LambdaStarKind { lambda, prime_indicator, e3, rough };

struct ExceptionalTwist {
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> exponents;  // identifies chi-tilde within its group
    double beta = 1.0;
};

struct GallagherOptions {
    std::optional<ExceptionalTwist> exceptional;
    bool exact_oracle = false;       // O(N^2) interval sweep; N <= 2*10^4 only
    std::optional<ChenParams> e3;    // required for kind e3
    std::uint64_t rough_P = 10;      // sifting cut for kind rough
    unsigned threads = 0;
};

struct GallagherResult {
    double value = 0.0;   // certified lower bound of the true discrepancy
    double defect = 0.0;  // grid defect: true value <= value + defect
};

// sum_{r<=R} sum*_{chi mod r} max_I (scale/(|I|+N/R)) |sum_{n in I} w_chi(n)|
// over grid-endpoint intervals plus all prefixes. Kind rough starts at r=2 and
// carries no main term.
GallagherResult gallagher_discrepancy(LambdaStarKind kind, std::uint64_t N, std::uint64_t R,
                                      const FactorTable& t, const GallagherOptions& opts = {});

struct BVOptions {
    std::optional<ChenParams> e3;
    std::uint64_t rough_P = 10;
};

// sum_{q<=Q} max_{(a,q)=1} |sum_{N/2<n<=N} Lambda*(n) u_P(n a^{-1}; q)|, exact
// per-residue tallies with the low-conductor character correction.
double bv_discrepancy(LambdaStarKind kind, std::uint64_t N, std::uint64_t Q, std::uint64_t P,
                      const FactorTable& t, const BVOptions& opts = {});

// Lambda* values on [0, N] for a given kind (index n).
std::vector<double> lambda_star_values(LambdaStarKind kind, std::uint64_t N,
                                       const FactorTable& t, const GallagherOptions& opts);

}  // namespace cgb

#endif

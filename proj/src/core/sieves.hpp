#ifndef CGB_SIEVES_HPP
#define CGB_SIEVES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/arith.hpp"
#include "core/common.hpp"

namespace cgb {

enum class WeightKind {
    beta_lower,
    beta_upper,
    linear_lower,
    linear_upper,
    main_omega,
    main_Omega,
    main_OmegaPrime,
    interval_lower,
    interval_upper,
};

const char* weight_kind_name(WeightKind k);

// Sparse sieve weight lambda over squarefree d with prime factors in
// [sift_lo, sift_hi). For linear-sieve pieces, `parts` carries the per-block
// structure that the well-factorable split relies on.
struct DivisorWeight {
    WeightKind kind = WeightKind::beta_lower;
    double level = 1.0;
    std::uint64_t sift_lo = 2, sift_hi = 2;
    double normalization = 1.0;

    struct Part {
        std::vector<std::uint64_t> primes;  // block primes, ascending
        std::uint32_t count = 1;            // primes taken from this block
    };
    std::vector<Part> parts;  // empty unless produced by the block construction

    void set_entries(std::vector<std::pair<std::uint64_t, double>> entries);
    const std::vector<std::pair<std::uint64_t, double>>& entries() const { return entries_; }

    double coeff(std::uint64_t d) const;
    // sum_{d|n} lambda(d)
    double divisor_sum(std::uint64_t n, const FactorTable& t) const;
    // normalization * divisor_sum
    double eval(std::uint64_t n, const FactorTable& t) const;

    double coeff_l1() const;
    // sum_d lambda(d)/phi(d), before normalization
    double density_sum(const FactorTable& t) const;

    void check_invariants(const FactorTable& t) const;

    // CSV of (d, lambda) plus a JSON sidecar with kind/level/range/normalization.
    void save(const std::string& csv_path, const std::string& json_path) const;

  private:
    std::vector<std::pair<std::uint64_t, double>> entries_;  // sorted by d
    std::unordered_map<std::uint64_t, double> lookup_;
};

// Parameter bundle for the sieve hierarchy. Desk defaults replace the
// N^epsilon exponents with fixed small values; the hierarchy is checked, not
// assumed.
struct SieveSpec {
    std::uint64_t N = 1'000'000;
    double delta1 = 0.02;
    double beta = 2.0;
    double P0 = 100, P1 = 10;
    double D1 = 1'000, DM1 = 1'000, DM2 = 300;
    double R0 = 50, R1 = 8, Rtilde = 4;

    static SieveSpec from_delta(std::uint64_t N, double delta1, double beta = 200.0);
    static SieveSpec desk(std::uint64_t N);

    bool hierarchy_ok() const;
    std::uint64_t P1_int() const { return static_cast<std::uint64_t>(P1); }
    std::uint64_t P0_int() const { return static_cast<std::uint64_t>(P0); }
};

// Cramer model r_P and the interval variant r_{[Q,P)}.
double cramer_norm(std::uint64_t P, const FactorTable& t);
double cramer(std::uint64_t n, std::uint64_t P, const FactorTable& t);
double cramer_interval_norm(std::uint64_t Q, std::uint64_t P, const FactorTable& t);
double cramer_interval(std::uint64_t n, std::uint64_t Q, std::uint64_t P, const FactorTable& t);

// Beta-sieve weights of level D over primes [P_lo, P_hi): lambda(d) = mu(d) on
// the combinatorially truncated divisor sets (upper: odd-prefix constraint,
// lower: even-prefix constraint).
std::pair<DivisorWeight, DivisorWeight> beta_weights(double beta, std::uint64_t P_lo,
                                                     std::uint64_t P_hi, double D,
                                                     const FactorTable& t);

// Normalized pre-sieve: gate on (n,6)=1, sieve over [5, P1), norm over p < P1.
DivisorWeight presieve_weight(const SieveSpec& spec, bool upper, const FactorTable& t);
double presieve_eval(std::uint64_t n, const DivisorWeight& w, const FactorTable& t);
// Dense fill of presieve values for n in [1, limit]; index n.
std::vector<double> presieve_fill(std::uint64_t limit, const DivisorWeight& w,
                                  const FactorTable& t);

// Pointwise gap bound |f(n) - r_{P1}(n)| of fundamental-lemma type.
double fundlem_gap(std::uint64_t n, const SieveSpec& spec, const FactorTable& t);

// Linear-sieve functions: F(s) = 2e^gamma/s on [1,3], f(s) = 2e^gamma log(s-1)/s
// on [2,4], extended by the delay system (sF)' = f(s-1), (sf)' = F(s-1).
struct LinearFF {
    double f = 0.0, F = 0.0;
};
LinearFF linear_fF(double s);

struct LinearSieveSystem {
    std::vector<DivisorWeight> lower, upper;  // well-factorable pieces
    DivisorWeight combined_lower, combined_upper;
    double norm = 1.0;  // prod_{P<=p<z} (1-1/p)^{-1}
    std::uint64_t P = 2, z = 2;
    double level = 1.0, eta = 0.02;

    double eval_lower(std::uint64_t n, const FactorTable& t) const {
        return norm * combined_lower.divisor_sum(n, t);
    }
    double eval_upper(std::uint64_t n, const FactorTable& t) const {
        return norm * combined_upper.divisor_sum(n, t);
    }
    // norm * sum lambda(d)/phi(d)
    double lower_density(const FactorTable& t) const;
    double upper_density(const FactorTable& t) const;
};

LinearSieveSystem linear_sieve_weights(std::uint64_t P, std::uint64_t z, double D,
                                       const FactorTable& t, double eta = 0.02);

// Split one block-structured piece as gamma1 * gamma2 (multiplicative
// convolution), supports within [1,R] and [1,S]. Throws when the block
// structure cannot meet the capacities.
std::pair<DivisorWeight, DivisorWeight> factorable_split(const DivisorWeight& w, double R,
                                                         double S);

// Chen main-sieves and the [P1,P0) interval sieves, with density constants.
// omega_M combines the lower side of `base` with the halved per-prime upper
// sieves; Omega'_M is the upper side of `base`.
struct MainSieves {
    LinearSieveSystem base;  // [P1, N^{1/10}), level N^{1/2-2delta1}
    std::vector<std::pair<std::uint64_t, LinearSieveSystem>> per_prime;  // upper, level D/p
    LinearSieveSystem Omega_M_sys;     // upper on (P1, N^{1/6}]
    LinearSieveSystem interval_sys;    // both sides on [P1, P0)
    double c1 = 0, c2 = 0, c3 = 0;     // N^{1/10}, N^{1/3-delta1}, N^{1/6}
    double V_omega_M = 0, V_Omega_M = 0, V_Omega_prime = 0;
    double V_interval_lower = 0, V_interval_upper = 0;

    double omega_M(std::uint64_t n, const FactorTable& t) const;
    double Omega_M_eval(std::uint64_t n, const FactorTable& t) const;
    double Omega_prime(std::uint64_t n, const FactorTable& t) const;
    double interval_lower(std::uint64_t n, const FactorTable& t) const;
    double interval_upper(std::uint64_t n, const FactorTable& t) const;
};

MainSieves main_sieves(const SieveSpec& spec, const FactorTable& t);

// Sieve-sum-over-multiples identity, both sides by exhaustive divisor
// enumeration: g(e) sum_{d | P/e} lambda(de) g(d) against the theta/h product
// form.
bool divisor_sum_identity_check(const DivisorWeight& lambda,
                                const std::map<std::uint64_t, double>& g_on_primes,
                                std::uint64_t e, std::uint64_t script_p, const FactorTable& t,
                                double tol = 1e-12);

}  // namespace cgb

#endif

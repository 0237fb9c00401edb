#ifndef CGB_CHARACTERS_HPP
#define CGB_CHARACTERS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace cgb {

// The unit group (Z/q)* as a product of cyclic factors with precomputed
// discrete logarithms; q <= 10^6 keeps the tables small.
class DirichletGroup {
  public:
    struct Factor {
        std::uint64_t prime_power;  // the p^e this factor belongs to
        std::uint64_t order;        // cyclic order of the factor
        std::vector<std::uint32_t> dlog;  // index x mod p^e -> exponent, units only
        std::uint64_t local_prime;
        std::uint32_t local_exp;
        bool is_two_sign = false;  // the <-1> part of (Z/2^e)*, e >= 3
    };

    static std::shared_ptr<const DirichletGroup> make(std::uint64_t q);

    std::uint64_t modulus() const { return q_; }
    std::uint64_t phi() const { return phi_; }
    const std::vector<Factor>& factors() const { return factors_; }

    // Exponent vector of n in the factor decomposition; nullopt when gcd(n,q)>1.
    std::optional<std::vector<std::uint64_t>> dlog(std::uint64_t n) const;

  private:
    std::uint64_t q_ = 1, phi_ = 1;
    std::vector<Factor> factors_;
};

class DirichletCharacter {
  public:
    DirichletCharacter(std::shared_ptr<const DirichletGroup> group,
                       std::vector<std::uint64_t> exponents);

    std::uint64_t modulus() const { return group_->modulus(); }
    std::uint64_t conductor() const { return conductor_; }
    bool primitive() const { return conductor_ == group_->modulus(); }
    bool principal() const { return principal_; }
    bool is_real() const { return real_; }
    const std::vector<std::uint64_t>& exponents() const { return exponents_; }

    // Rotation t with chi(n) = e(t), as an exact fraction num/den; nullopt when
    // gcd(n, q) > 1.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> rotation(std::uint64_t n) const;

    cplx value(std::uint64_t n) const;
    // For real characters: -1, 0 or +1, exact.
    int real_value(std::uint64_t n) const;

    // One period of values, index n mod q.
    std::vector<cplx> period_table() const;

    cplx operator()(std::uint64_t n) const { return value(n); }

  private:
    std::shared_ptr<const DirichletGroup> group_;
    std::vector<std::uint64_t> exponents_;
    std::uint64_t conductor_ = 1;
    bool principal_ = true, real_ = true;
};

// All phi(q) characters modulo q; exactly one is principal.
std::vector<DirichletCharacter> characters_mod(std::uint64_t q);

// c_q(n) via the divisor identity sum_{d | (q,n)} d mu(q/d); c_q(0) = phi(q).
std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n);

// sum_{a mod q} chi(a) e(a/q)
cplx gauss_sum(const DirichletCharacter& chi);

// (1/phi(q)) sum_{psi mod q, cond(psi) > P} psi(n a^{-1})
cplx u_P(std::uint64_t n, std::uint64_t a, std::uint64_t q, std::uint64_t P);
cplx u_P(std::uint64_t n, std::uint64_t a, const std::vector<DirichletCharacter>& chars,
         std::uint64_t P);

struct LValue {
    double value = 0.0;
    double error_bound = 0.0;  // rigorous for the chosen truncation point
    std::uint64_t terms = 0;
};

// Truncated L(sigma, chi) = sum_{n<=M} chi(n) n^{-sigma}; the tail bound comes
// from partial summation against the exact period prefix-sum maximum.
LValue l_real_partial(double sigma, const DirichletCharacter& chi, std::uint64_t M);
LValue l_real(double sigma, const DirichletCharacter& chi, double tol = 1e-8,
              std::uint64_t max_terms = 50'000'000);

// Crude rigorous bound on |L'(sigma, chi)| for sigma >= sigma_min.
double l_real_derivative_bound(double sigma_min, const DirichletCharacter& chi);

struct ZeroCandidate {
    std::uint64_t modulus = 0;
    std::uint64_t character_id = 0;  // index within characters_mod(modulus)
    double interval_lo = 0.0, interval_hi = 0.0;
};

struct ExceptionalZeroReport {
    std::uint64_t level = 0;  // P
    double quality = 0.0;     // kappa
    bool clear = false;
    std::vector<ZeroCandidate> candidates;
};

struct ZeroSearchOptions {
    unsigned initial_grid = 32;
    unsigned max_grid = 4096;  // certification budget; a tiny budget exercises the failure path
    double l_tolerance = 1e-3;
};

// Certified positivity scan of L(sigma, chi) over [1 - kappa/log P, 1] for all
// real primitive characters of modulus <= P. Uncertifiable characters are
// reported as candidates, never dropped.
ExceptionalZeroReport exceptional_zero_search(std::uint64_t P, double kappa,
                                              const ZeroSearchOptions& opts = {});

}  // namespace cgb

#endif

#ifndef CGB_CHEN_HPP
#define CGB_CHEN_HPP

#include <cstdint>
#include <vector>

#include "core/arith.hpp"
#include "core/common.hpp"
#include "core/sieves.hpp"

namespace cgb {

struct ChenParams {
    std::uint64_t N = 100'000;
    double delta1 = 0.02;
    double quad_tol = 1e-10;

    double c1() const { return std::pow(static_cast<double>(N), 0.1); }
    double c2() const { return std::pow(static_cast<double>(N), 1.0 / 3 - delta1); }
    double c3() const { return std::pow(static_cast<double>(N), 1.0 / 6); }
    void validate() const;
};

// p prime with p+2 having at most two prime factors (with multiplicity).
bool is_chen_prime(std::uint64_t p, const FactorTable& t);

// Support predicate of Lambda(n)Lambda_2(n+2): odd prime p, Omega(p+2) <= 2,
// p+2 coprime to 6 (the rough part of Lambda_2 kills 2 and 3 at any scale).
bool chen_rep_indicator(std::uint64_t p, const FactorTable& t);

// Lambda_2(n) = 1_{Omega(n)<=2} r_{N^{1/10}}(n)
double lambda2(std::uint64_t n, const ChenParams& params, const FactorTable& t);

enum class CBRegion { B1, B2 };

// Density integrals over the (t1,t2) simplex; iterated adaptive quadrature
// with the inner t2 integral in closed form.
double cB(CBRegion region, std::uint64_t n, const ChenParams& params);
// Full tensor 2-D adaptive route (self-consistency check).
double cB_2d(CBRegion region, std::uint64_t n, const ChenParams& params, double tol);

double c_E3(std::uint64_t n, const ChenParams& params);        // c_{B1}/2 + c_{B2}
double c_E3_constant(const ChenParams& params);                // c_{E3*}(N) log N

// 0: outside, 1: B1, 2: B2 (sorted-factor reading; the regions are disjoint).
int b_region(std::uint64_t n, const ChenParams& params, const FactorTable& t);

// Lambda_{E3*}(n) = (1_{B1}/2 + 1_{B2}) / c_{E3*}(n)
double lambda_E3(std::uint64_t n, const ChenParams& params, const FactorTable& t);

// Chen's minorant assembled from pre- and main-sieves, with the constant that
// bridges the N^{1/10} and P1 roughness cuts when the desk P1 exceeds N^{1/10}.
struct ChenAssembly {
    SieveSpec spec;
    ChenParams params;
    DivisorWeight pre_lower, pre_upper;
    MainSieves ms;
    double K = 1.0;          // prod_{p < N^{1/10}} (1-1/p)^{-1}
    double C0 = 1.0;         // K / (K1 * norm_{[P1,c1)})
    double cE3_const = 0.0;  // c_{E3*}(N) log N

    static ChenAssembly make(const SieveSpec& spec, const ChenParams& params,
                             const FactorTable& t);

    struct Minorant {
        double g1 = 0, g2 = 0, g3 = 0;
    };
    Minorant minorant(std::uint64_t n, const FactorTable& t) const;

    struct AuditRow {
        std::uint64_t n = 0;
        double lhs = 0, g1 = 0, g2 = 0, g3 = 0, slack = 0;
        // exact subtracted term Lambda(n) K (1_{B1}/2 + 1_{B2})(n+2): the form
        // the g2 majorization replaces, with no asymptotic constant
        double g2_exact = 0;
        bool pass = true;        // with g2 as defined (3/5+delta1 coefficient)
        bool pass_exact = true;  // with g2_exact
    };
    // Checks Lambda(n)Lambda_2(n+2) >= g1 - g2 + g3 - slack with the explicit
    // square-divisor slack Lambda(n) K #{p >= N^{1/10} : p^2 | n+2}. The
    // (3/5+delta1) coefficient inside g2 is asymptotic and undershoots at desk
    // N; pass_exact tracks the constant-free variant of the same inequality.
    AuditRow audit(std::uint64_t n, const FactorTable& t) const;
};

// c0 = f(5) - 1/2 int_{1/10}^{1/3} F(5-10t) dt/t - (3/10) F(3) * J with
// J the corner integral of 1/(t1 t2 (1-t1-t2)); delta1 corrections dropped.
double chen_constant(double delta1, double tol = 1e-9);
// Same value with the (3/5+delta1)/2 coefficient made explicit (monotonicity checks).
double chen_constant_with_coeff(double coeff_half, double tol = 1e-9);

}  // namespace cgb

#endif

#ifndef CGB_MODELS_HPP
#define CGB_MODELS_HPP

#include <cstdint>

#include "core/arith.hpp"
#include "core/common.hpp"

namespace cgb {

// Smooth bump: 1 on [0,1], 0 outside (-2,2), smooth-step ramps. The concrete
// ramp realization is pinned so numbers reproduce bit-for-bit.
double bump_G(double t);

struct ModelParams {
    std::uint64_t N = 0;
    std::uint64_t R = 2;
    std::uint64_t r = 1;        // twist modulus
    double xi_cutoff = 50.0;    // quadrature window for the xi integral
    double quad_tol = 1e-10;
    bool hr_zero_on_squarefull = false;  // alternative reading of the support clause
};

// b_R(n) = 1_{|n|<=N/R^4} (R^4/2N) sum_{r<=R^2} c_r(n) G(log r / log R)
double b_R(std::int64_t n, std::uint64_t N, std::uint64_t R);

// Ramanujan-sum form of Heath-Brown's model:
//   Lambda_{R,r}(n) = sum_{(q,r)=1} mu(q) c_q(n)/phi(q) G(log(rq)/log R)
double lambda_Rr(std::uint64_t n, std::uint64_t R, std::uint64_t r, const FactorTable& t);

// Divisor form of the same quantity, used as the second algebraic route:
//   sum_{d|n,(d,r)=1} d mu(d)/phi(d) sum_{(l,dr)=1} mu(l)^2/phi(l) G(log(ldr)/log R)
double lambda_Rr_divisor_form(std::uint64_t n, std::uint64_t R, std::uint64_t r,
                              const FactorTable& t);

// h_xi(n) = prod_{p|n} min{1, 10(1+|xi|) log p / log R}; 0 on non-squarefree n.
double h_xi(std::uint64_t n, double xi, std::uint64_t R, const FactorTable& t);

// H_R(n) = tau(n) log R * int h_xi(n) (1+|xi|)^{-10} dxi, adaptive panels on
// [-Xi, Xi] plus the closed-form tail bound 2(1+Xi)^{-9}/9 (errs conservative).
// Squarefull n evaluate h_xi at the radical unless params pin the zero reading.
double H_R(std::uint64_t n, const ModelParams& params, const FactorTable& t);

// Exact piecewise closed form of the xi integral (oracle route; no tail slack).
double H_R_exact(std::uint64_t n, const ModelParams& params, const FactorTable& t);

// (r/phi(r)) |Lambda_{R,r}(n)| <= H_R(n) within 1e-9 relative slack.
bool hb_upper_check(std::uint64_t n, std::uint64_t R, std::uint64_t r, const FactorTable& t);

}  // namespace cgb

#endif

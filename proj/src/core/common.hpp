#ifndef CGB_COMMON_HPP
#define CGB_COMMON_HPP

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cgb {

using cplx = std::complex<double>;

constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kEulerGamma = 0.57721566490153286061;

struct value_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct capacity_error : std::length_error {
    using std::length_error::length_error;
};
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct interrupted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pairwise (cascade) summation over a span; the fixed reduction order keeps
// every result byte-reproducible independent of thread count.
template <class T>
T pairwise_sum(std::span<const T> v) {
    if (v.size() <= 8) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v));
}

// Process-wide default worker count; 0 means all hardware threads.
inline std::atomic<unsigned>& default_thread_count() {
    static std::atomic<unsigned> v{0};
    return v;
}

// Evaluates fn(i) for i in [0, n) on up to `threads` workers, each result into
// its own slot. Deterministic: outputs do not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (threads == 0) threads = default_thread_count().load();
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Adaptive Simpson quadrature with absolute-error target.
namespace detail {
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) throw convergence_error("adaptive quadrature: depth budget exceeded");
    if (std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(const F& f, double a, double b, double eps, int depth = 48) {
    if (a >= b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, eps, depth);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Inverse of a modulo m, gcd(a,m)=1.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw value_error("inv_mod: arguments are not coprime");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 acc = 1, base = b % m;
    while (e) {
        if (e & 1) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace cgb

#endif

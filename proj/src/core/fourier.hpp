#ifndef CGB_FOURIER_HPP
#define CGB_FOURIER_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/common.hpp"

namespace cgb {

// Dense array of a weight over the window (N/2, N].
class Window {
  public:
    explicit Window(std::uint64_t N)
        : N_(N), lo_(N / 2 + 1), values_(N - N / 2, 0.0) {
        if (N < 2) throw value_error("Window: N must be >= 2");
    }

    std::uint64_t N() const { return N_; }
    std::uint64_t lo() const { return lo_; }      // first index n of the window
    std::size_t size() const { return values_.size(); }

    double& at(std::uint64_t n) {
        if (n < lo_ || n > N_) throw range_error("Window::at: n outside (N/2, N]");
        return values_[n - lo_];
    }
    double at(std::uint64_t n) const {
        if (n < lo_ || n > N_) throw range_error("Window::at: n outside (N/2, N]");
        return values_[n - lo_];
    }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double l1_norm() const;
    double l2_norm() const;
    double linf_norm() const;
    // sum |n * f(n)|, used by the grid-defect bound.
    double weighted_l1() const;

    // Shift by +2 / -2 with zero fill: (shift(+2))(n) = f(n+2).
    Window shifted(int delta) const;

    // CSV (n,value) and a compact binary format.
    void save_csv(const std::string& path) const;
    void save_binary(const std::string& path) const;
    static Window load_csv(const std::string& path);
    static Window load_binary(const std::string& path);

  private:
    std::uint64_t N_, lo_;
    std::vector<double> values_;
};

// In-place radix-2 complex FFT; n must be a power of two.
void fft(std::vector<cplx>& a, bool inverse);

// Sum_{N/2<n<=N} f(n) e(alpha n), pairwise summation.
cplx exp_sum(const Window& f, double alpha);

struct NormResult {
    double value = 0.0;   // max |f-hat| over the frequency grid
    double defect = 0.0;  // certified gap bound to the true supremum
    double argmax_alpha = 0.0;
};

// Grid max of |f-hat| over alpha = k/M with M >= oversample*N (zero-padded FFT).
NormResult fourier_norm(const Window& f, unsigned oversample,
                        std::uint64_t mem_budget = (1ull << 28));

// Major arcs of order R: [b/q - R/N, b/q + R/N] for q <= R, gcd(b,q)=1.
struct ArcSet {
    std::uint64_t R = 1;
    std::uint64_t N = 1;
    struct Arc {
        std::uint64_t b, q;  // center b/q as an exact rational
    };
    std::vector<Arc> arcs;  // centers pairwise distinct, all in [0,1)

    static ArcSet major_arcs(std::uint64_t R, std::uint64_t N);

    // Exact rational classification of k/den.
    bool is_major(std::uint64_t k, std::uint64_t den) const;
    bool is_major(double alpha) const;
};

enum class ArcSide { major, minor };

NormResult restricted_norm(const Window& f, const ArcSet& arcs, ArcSide side,
                           unsigned oversample, std::uint64_t mem_budget = (1ull << 28));

enum class ConvolveMode { fp, exact_integer };

// Additive convolution over m in (N, 2N]; index i corresponds to m = N + 1 + i.
std::vector<double> convolve(const Window& f, const Window& g, ConvolveMode mode);

// Exact integer convolution of arbitrary integer sequences (NTT + CRT).
std::vector<std::int64_t> convolve_exact(const std::vector<std::int64_t>& a,
                                         const std::vector<std::int64_t>& b);

struct BRTransformReport {
    double max_major_deviation = 0.0;  // max |b-hat_R(alpha) - 1| on sampled major arcs
    double max_minor_value = 0.0;      // max |b-hat_R(alpha)| on sampled minor arcs
    unsigned samples_major = 0;
    unsigned samples_minor = 0;
};

BRTransformReport bR_transform_check(std::uint64_t N, std::uint64_t R, unsigned samples,
                                     std::uint64_t seed = 0);

}  // namespace cgb

#endif

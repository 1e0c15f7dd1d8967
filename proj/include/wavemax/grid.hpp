#pragma once
// Uniform symmetric periodic grid on [-L, L) with L = 2^l, plus the
// quadrature and discrete Fourier transforms everything else builds on.
//
// Conventions (fixed once, used verbatim everywhere):
//   nodes   x_j  = -L + j*dx,   j = 0..n-1,   dx = 2L/n
//   freqs   xi_k = pi*k/L,      k = -n/2..n/2-1
//   dft     F_k  = dx * sum_j f_j exp(-i xi_k x_j)
//   idft    f_j  = (1/2L) * sum_k F_k exp(+i xi_k x_j)
// Because x_j = -L + j*dx and xi_k*L = pi*k, the continuous phases reduce to
// exp(-i xi_k x_j) = (-1)^k exp(-2*pi*i*j*k/n): a plain DFT bin times an
// alternating sign.  The signs cancel in |F_k|^2 and in any multiplication by
// an even real symbol, so the spectral operators in kernel.hpp use the raw
// halfcomplex transform without shifting; only dft()/idft() below expose the
// signed, centered-ordering spectrum.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace wavemax {

struct Grid {
    int l = 0;      // domain exponent, L = 2^l
    int n = 0;      // number of nodes, power of two
    double L = 0;   // half-length
    double dx = 0;  // node spacing 2L/n
    std::vector<double> x;        // nodes, strictly increasing, x[0] = -L
    std::vector<double> xi_half;  // nonnegative freqs pi*k/L, k = 0..n/2

    bool same_as(const Grid& o) const { return l == o.l && n == o.n; }
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline Grid make_grid(int l, int n) {
    if (l < 0) throw std::invalid_argument("make_grid: l must be >= 0");
    if (!is_power_of_two(n))
        throw std::invalid_argument("make_grid: n = " + std::to_string(n) +
                                    " is not a power of two");
    if (n < 16) throw std::invalid_argument("make_grid: n must be >= 16");
    Grid g;
    g.l = l;
    g.n = n;
    g.L = static_cast<double>(1 << l);
    g.dx = 2.0 * g.L / n;
    g.x.resize(n);
    for (int j = 0; j < n; ++j) g.x[j] = -g.L + g.dx * j;
    g.xi_half.resize(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) g.xi_half[k] = M_PI * k / g.L;
    return g;
}

// A sampled function on a Grid.  Holds a non-owning pointer: grids are
// created once per scale and outlive every function defined on them.
struct GridFunction {
    const Grid* grid = nullptr;
    std::vector<double> v;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(&g), v(g.n, 0.0) {}
    GridFunction(const Grid& g, std::vector<double> vals)
        : grid(&g), v(std::move(vals)) {
        if (static_cast<int>(v.size()) != g.n)
            throw std::invalid_argument("GridFunction: length != grid.n");
    }
    double& operator[](std::size_t j) { return v[j]; }
    double operator[](std::size_t j) const { return v[j]; }
    int n() const { return grid->n; }
};

inline void require_same_grid(const GridFunction& f, const GridFunction& g,
                              const char* who) {
    if (!f.grid || !g.grid || !f.grid->same_as(*g.grid))
        throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

// Rectangle rule dx*sum_j f_j; spectrally accurate for the periodic setting.
inline double quadrature(const GridFunction& f) {
    double s = 0.0;
    for (double t : f.v) s += t;
    return f.grid->dx * s;
}

inline double inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g, "inner_product");
    double s = 0.0;
    for (int j = 0; j < f.n(); ++j) s += f.v[j] * g.v[j];
    return f.grid->dx * s;
}

inline double l2_norm(const GridFunction& f) {
    return std::sqrt(inner_product(f, f));
}

inline double l3_norm(const GridFunction& f) {
    double s = 0.0;
    for (double t : f.v) s += std::abs(t * t * t);
    return std::cbrt(f.grid->dx * s);
}

inline double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double t : f.v) m = std::max(m, std::abs(t));
    return m;
}

// ---------------------------------------------------------------------------
// FFTW plumbing.  One workspace per transform size, owning aligned buffers
// and ESTIMATE-mode plans (measured plans would make run-to-run output depend
// on timing, breaking byte-identical reruns).  Plan creation is not
// thread-safe; everything here is meant for single-threaded use.
// ---------------------------------------------------------------------------
class Dft {
  public:
    explicit Dft(int n) : n_(n) {
        re_ = fftw_alloc_real(n);
        cx_ = fftw_alloc_complex(n / 2 + 1);
        fwd_ = fftw_plan_dft_r2c_1d(n, re_, cx_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(n, cx_, re_, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("Dft: fftw plan failed");
    }
    ~Dft() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(re_);
        fftw_free(cx_);
    }
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    int size() const { return n_; }

    // Raw unnormalized halfcomplex transform of real data (length n/2+1).
    void forward(const std::vector<double>& in,
                 std::vector<std::complex<double>>& out) {
        for (int j = 0; j < n_; ++j) re_[j] = in[j];
        fftw_execute(fwd_);
        out.resize(n_ / 2 + 1);
        for (int k = 0; k <= n_ / 2; ++k)
            out[k] = {cx_[k][0], cx_[k][1]};
    }

    // Inverse of forward() including the 1/n normalization.
    void backward(const std::vector<std::complex<double>>& in,
                  std::vector<double>& out) {
        for (int k = 0; k <= n_ / 2; ++k) {
            cx_[k][0] = in[k].real();
            cx_[k][1] = in[k].imag();
        }
        fftw_execute(bwd_);
        out.resize(n_);
        for (int j = 0; j < n_; ++j) out[j] = re_[j] / n_;
    }

  private:
    int n_;
    double* re_;
    fftw_complex* cx_;
    fftw_plan fwd_, bwd_;
};

// Shared per-size workspace so hot loops do not re-plan every call.
inline Dft& dft_workspace(int n) {
    static thread_local std::unordered_map<int, std::unique_ptr<Dft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Dft>(n);
    return *slot;
}

// Full centered-order spectrum F_k, k = -n/2..n/2-1 (index i = k + n/2),
// under the transform convention at the top of this header.
inline std::vector<std::complex<double>> dft(const GridFunction& f) {
    const Grid& g = *f.grid;
    auto& ws = dft_workspace(g.n);
    std::vector<std::complex<double>> half;
    ws.forward(f.v, half);
    std::vector<std::complex<double>> out(g.n);
    for (int i = 0; i < g.n; ++i) {
        int k = i - g.n / 2;                       // centered index
        int kk = k >= 0 ? k : k + g.n;             // fft bin
        std::complex<double> b =
            kk <= g.n / 2 ? half[kk] : std::conj(half[g.n - kk]);
        double sign = (k % 2 == 0) ? 1.0 : -1.0;   // (-1)^k phase
        out[i] = g.dx * sign * b;
    }
    return out;
}

inline GridFunction idft(const Grid& g,
                         const std::vector<std::complex<double>>& F) {
    if (static_cast<int>(F.size()) != g.n)
        throw std::invalid_argument("idft: coefficient length != grid.n");
    auto& ws = dft_workspace(g.n);
    std::vector<std::complex<double>> half(g.n / 2 + 1);
    for (int k = 0; k <= g.n / 2; ++k) {
        int i = (k == g.n / 2) ? 0 : k + g.n / 2;  // bin n/2 stored at k=-n/2
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        half[k] = sign * F[i] / g.dx;
    }
    GridFunction out(g);
    ws.backward(half, out.v);
    return out;
}

}  // namespace wavemax

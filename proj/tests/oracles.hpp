#pragma once

// Test-only oracles: independent evaluation paths used to freeze expected
// values.  Nothing here may call the production routine it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

/// Composite Simpson on [a, b] with n panels (n even).
template <class F>
cplx simpson(F&& f, double a, double b, int n) {
    const double h = (b - a) / n;
    cplx acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

/// Fixed-grid radial momentum integral (1/2pi^2) int_0^kmax k^2 f dk with a
/// reciprocal-mapped tail, at a given resolution; refine by raising n.
template <class F>
cplx fixed_grid_radial(F&& f, double kmax, int n) {
    auto g = [&](double k) { return k * k * f(k); };
    const cplx head = simpson(g, 1e-12, kmax, n);
    auto gt = [&](double t) { return g(kmax / t) * kmax / (t * t); };
    const cplx tail = simpson(gt, 1e-9, 1.0, n);
    return (head + tail) / (2.0 * M_PI * M_PI);
}

/// Polynomial extrapolation to eta = 0 from values at eta, eta/2, eta/4.
inline cplx eta_extrapolate(cplx f1, cplx f2, cplx f4) {
    return f1 / 3.0 - 2.0 * f2 + (8.0 / 3.0) * f4;
}

/// Least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Solve a small dense least-squares system by normal equations with full
/// pivoting (tiny sizes only).
inline std::vector<double> lstsq(const std::vector<std::vector<double>>& A,
                                 const std::vector<double>& b) {
    const std::size_t rows = A.size(), cols = A[0].size();
    std::vector<std::vector<double>> N(cols, std::vector<double>(cols + 1, 0.0));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t r = 0; r < rows; ++r) N[i][j] += A[r][i] * A[r][j];
        for (std::size_t r = 0; r < rows; ++r) N[i][cols] += A[r][i] * b[r];
    }
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < cols; ++r)
            if (std::abs(N[r][col]) > std::abs(N[piv][col])) piv = r;
        std::swap(N[col], N[piv]);
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == col) continue;
            const double fct = N[r][col] / N[col][col];
            for (std::size_t cc = col; cc <= cols; ++cc) N[r][cc] -= fct * N[col][cc];
        }
    }
    std::vector<double> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[i] = N[i][cols] / N[i][i];
    return x;
}

/// Radix-2 FFT (in place); n must be a power of two.
inline void fft(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const cplx wl{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/// Dominant-frequency estimate of s(t) sampled at dt: Hann window, FFT,
/// parabolic peak refinement.  Returns omega such that s ~ exp(-i omega t).
inline double dominant_frequency(const std::vector<cplx>& s, double dt) {
    std::vector<cplx> a = s;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        a[i] *= 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
    fft(a);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(a[i]) > std::abs(a[peak])) peak = i;
    const auto mag = [&](std::size_t i) { return std::abs(a[(i + n) % n]); };
    const double y1 = mag(peak - 1), y2 = mag(peak), y3 = mag(peak + 1);
    const double denom = y1 - 2.0 * y2 + y3;
    const double shift = denom != 0.0 ? 0.5 * (y1 - y3) / denom : 0.0;
    double bin = static_cast<double>(peak) + shift;
    if (bin > n / 2.0) bin -= static_cast<double>(n);
    // With A_k = sum_j s_j e^{-2pi i jk/n}, a signal e^{-i omega t} peaks at
    // bin = -omega n dt / (2 pi).
    return -2.0 * M_PI * bin / (static_cast<double>(n) * dt);
}

}  // namespace oracles

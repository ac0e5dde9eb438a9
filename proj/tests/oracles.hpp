#pragma once

// Test-side oracles, kept independent of the implementation paths they
// check: Euler-Maclaurin-corrected Dirichlet sums, an Euler-transform value
// for eta(2), trial-division Moebius, quadrature Fourier transforms, and a
// critical-line zero bracketer built on the Hardy-style phase.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "zetaflow/specfun.hpp"
#include "zetaflow/types.hpp"

namespace oracle {

using zetaflow::Complex;

// ---------------------------------------------------------------------------
// Real Dirichlet sums with Euler-Maclaurin tails: accurate to ~1e-18 rel
// for s >= 1.5 with N = 2000.
// ---------------------------------------------------------------------------

inline double zeta_real(double s) {
    const long n_cut = 2000;
    double sum = 0.0;
    for (long n = n_cut - 1; n >= 1; --n) sum += std::pow(double(n), -s);
    const double nd = double(n_cut);
    const double f = std::pow(nd, -s);
    // sum_{n>=N} f(n) = int_N^inf f + f(N)/2 - f'(N)/12 + f'''(N)/720 - ...
    double tail = nd * f / (s - 1.0) + 0.5 * f + s * f / nd / 12.0 -
                  s * (s + 1.0) * (s + 2.0) * f / (nd * nd * nd) / 720.0;
    return sum + tail;
}

// derivative: zeta'(s) = -sum log(n) n^{-s}, same treatment for g = log(x) x^{-s}
inline double zeta_prime_real(double s) {
    const long n_cut = 2000;
    double sum = 0.0;
    for (long n = n_cut - 1; n >= 2; --n) sum += std::log(double(n)) * std::pow(double(n), -s);
    const double nd = double(n_cut);
    const double l = std::log(nd);
    const double p = std::pow(nd, -s);
    const double integral = (l + 1.0 / (s - 1.0)) * nd * p / (s - 1.0);
    const double g0 = l * p;
    const double g1 = p / nd * (1.0 - s * l);                       // g'
    const double g3 = p / (nd * nd * nd) *
                      ((-s - 2.0) * ((-s - 1.0) * (1.0 - s * l) - s) + s * (s + 1.0));  // g'''
    const double tail = integral + 0.5 * g0 - g1 / 12.0 + g3 / 720.0;
    return -(sum + tail);
}

// eta(2) from a 40-term Euler transform of the alternating series.
inline double eta2_euler_transform() {
    constexpr int m = 40;
    double diffs[m];
    for (int k = 0; k < m; ++k) diffs[k] = 1.0 / ((k + 1.0) * (k + 1.0));
    double sum = 0.0, scale = 0.5;
    for (int order = 0; order < m; ++order) {
        sum += scale * diffs[0];
        scale *= 0.5;
        for (int k = 0; k + 1 < m - order; ++k) diffs[k] = diffs[k] - diffs[k + 1];
    }
    return sum;
}

inline std::vector<int> mobius_brute(long n) {
    std::vector<int> mu(std::size_t(n) + 1, 1);
    for (long v = 1; v <= n; ++v) {
        long x = v;
        int count = 0;
        bool squarefree = true;
        for (long p = 2; p * p <= x; ++p) {
            if (x % p == 0) {
                x /= p;
                ++count;
                if (x % p == 0) {
                    squarefree = false;
                    break;
                }
            }
        }
        if (!squarefree) {
            mu[std::size_t(v)] = 0;
        } else {
            if (x > 1) ++count;
            mu[std::size_t(v)] = (count % 2 == 0) ? 1 : -1;
        }
    }
    mu[1] = 1;
    return mu;
}

// ---------------------------------------------------------------------------
// Quadrature Fourier transform (1/sqrt(2 pi)) int_a^b e^{-i t x} f(x) dx
// ---------------------------------------------------------------------------

inline Complex quad_fourier(const std::function<double(double)>& f, double t, double a, double b,
                            double h) {
    const long m = long(std::ceil((b - a) / h));
    const double step = (b - a) / double(m);
    Complex acc{};
    for (long j = 0; j <= m; ++j) {
        const double x = a + step * double(j);
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        acc += w * f(x) * std::exp(Complex(0.0, -t * x));
    }
    return acc * step / std::sqrt(2.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------
// Critical-line zero location by sign bracketing of the rotated (Hardy-style)
// real function Z(t) = Re[e^{i theta(t)} zeta(1/2 + i t)] with
// theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi.
// ---------------------------------------------------------------------------

inline double hardy_z(double t) {
    const double theta =
        zetaflow::specfun::log_gamma(Complex(0.25, t / 2.0)).imag() -
        (t / 2.0) * std::log(std::numbers::pi);
    const Complex z = zetaflow::specfun::zeta(Complex(0.5, t), {1e-15, 400}).value;
    return (std::exp(Complex(0.0, theta)) * z).real();
}

inline std::vector<double> bracket_critical_zeros(double t_lo, double t_hi, double step = 0.05) {
    std::vector<double> zeros;
    double prev_t = t_lo;
    double prev_v = hardy_z(prev_t);
    for (double t = t_lo + step; t <= t_hi + 1e-12; t += step) {
        const double v = hardy_z(t);
        if ((prev_v < 0.0) != (v < 0.0)) {
            double a = prev_t, b = t, fa = prev_v;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = hardy_z(mid);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            zeros.push_back(0.5 * (a + b));
        }
        prev_t = t;
        prev_v = v;
    }
    return zeros;
}

}  // namespace oracle

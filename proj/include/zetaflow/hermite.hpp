#pragma once

// Hermite functions phi_n = H_n(x) e^{-x^2/2} (physicists' convention, so
// ||phi_n||^2 = 2^n n! sqrt(pi)), their orthonormal counterparts psi_n, and
// the expansion of V_sigma in this basis. The Fourier transform acts
// diagonally, hat(phi_n) = (-i)^n phi_n, which gives a third route to
// hat(V_sigma) out of the expansion coefficients.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "zetaflow/gfun.hpp"
#include "zetaflow/types.hpp"

namespace zetaflow::hermite {

namespace detail {

inline constexpr double kQuarterRootPi = 0.7511255444649425;  // pi^{-1/4}

// Orthonormal recurrence psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2}
// with psi_0 = pi^{-1/4} e^{-x^2/2}, carried with a power-of-two exponent so
// the Gaussian start can underflow and still recover inside the oscillatory
// region (needed up to n = 5000, |x| <= 60).
inline double psi_scaled(long n, double x) {
    const double x2 = x * x;
    int e0 = 0;
    // e^{-x^2/2} = m * 2^e0 with m in a safe range
    const double log2_gauss = -x2 / (2.0 * std::numbers::ln2);
    e0 = int(std::floor(log2_gauss));
    double m = std::exp2(log2_gauss - double(e0));  // in [1, 2)
    double p_prev = 0.0;
    double p = kQuarterRootPi * m;
    long exp2_acc = e0;
    for (long k = 1; k <= n; ++k) {
        const double next = x * std::sqrt(2.0 / double(k)) * p -
                            std::sqrt(double(k - 1) / double(k)) * p_prev;
        p_prev = p;
        p = next;
        const double mag = std::max(std::abs(p), std::abs(p_prev));
        if (mag != 0.0 && mag < 0x1p-512) {
            p = std::ldexp(p, 512);
            p_prev = std::ldexp(p_prev, 512);
            exp2_acc -= 512;
        } else if (mag > 0x1p512) {
            p = std::ldexp(p, -512);
            p_prev = std::ldexp(p_prev, -512);
            exp2_acc += 512;
        }
    }
    return std::ldexp(p, int(std::max<long>(std::min<long>(exp2_acc, 20000), -20000)));
}

// Plain (unscaled) column of psi_0..psi_n at one x; fine wherever the
// Gaussian has not underflowed, which covers the expansion windows.
inline void psi_column(double x, long n, std::vector<double>& out) {
    out.resize(std::size_t(n) + 1);
    double p_prev = 0.0;
    double p = kQuarterRootPi * std::exp(-x * x / 2.0);
    out[0] = p;
    for (long k = 1; k <= n; ++k) {
        const double next = x * std::sqrt(2.0 / double(k)) * p -
                            std::sqrt(double(k - 1) / double(k)) * p_prev;
        p_prev = p;
        p = next;
        out[std::size_t(k)] = p;
    }
}

inline Complex minus_i_pow(long n) {
    switch (n & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

}  // namespace detail

/// log(2^n n! sqrt(pi)) -- for callers that outgrow norm_sq.
inline double log_norm_sq(long n) {
    if (n < 0) throw DomainError("log_norm_sq: n must be >= 0");
    return double(n) * std::numbers::ln2 + std::lgamma(double(n) + 1.0) +
           0.5 * std::log(std::numbers::pi);
}

/// ||phi_n||^2 = 2^n n! sqrt(pi). Representable only up to n = 150.
inline double norm_sq(long n) {
    if (n < 0) throw DomainError("norm_sq: n must be >= 0");
    if (n > 150) throw OverflowError("norm_sq: overflows past n = 150; use log_norm_sq");
    double v = std::sqrt(std::numbers::pi);
    for (long k = 1; k <= n; ++k) v *= 2.0 * double(k);
    return v;
}

/// Orthonormal Hermite function psi_n(x) = phi_n(x)/sqrt(2^n n! sqrt(pi)).
/// Stable for n <= 5000, |x| <= 60 (never overflows there).
inline double phi_orthonormal(long n, double x) {
    if (n < 0 || n > 5000) throw DomainError("phi_orthonormal: requires 0 <= n <= 5000");
    return detail::psi_scaled(n, x);
}

/// Unnormalized Hermite function phi_n(x) = H_n(x) e^{-x^2/2}, n <= 300.
/// The rescale from psi_n can exceed the double range for large n|x|.
inline double phi(long n, double x) {
    if (n < 0 || n > 300) throw DomainError("phi: requires 0 <= n <= 300");
    const double psi = detail::psi_scaled(n, x);
    if (psi == 0.0) return 0.0;
    const double log_mag = std::log(std::abs(psi)) + 0.5 * log_norm_sq(n);
    if (log_mag > std::log(std::numeric_limits<double>::max()))
        throw OverflowError("phi: rescale exceeds the floating range; use phi_orthonormal");
    return std::copysign(std::exp(log_mag), psi);
}

/// Fourier eigenrelation: hat(phi_n)(t) = (-i)^n phi_n(t).
inline Complex fourier_phi(long n, double t) {
    return detail::minus_i_pow(n) * phi(n, t);
}

/// Expansion coefficients of V_sigma: coeffs[n] = <V,phi_n>/||phi_n||^2.
/// orthonormal_coeffs[n] = <V,psi_n> is the numerically safe mirror used by
/// the reconstruction routines (coeffs alone underflow near n ~ 250).
struct HermiteCoeffs {
    double sigma = 1.0;
    long order = 0;
    std::vector<double> coeffs;
    std::vector<double> orthonormal_coeffs;
};

/// Trapezoid of <V_sigma, psi_n> over [-60/sigma, 10] at step 0.01, all
/// orders accumulated in one pass per abscissa.
inline HermiteCoeffs expand(const gfun::SigmaParam& sp, long order) {
    gfun::validate(sp);
    if (order < 0 || order > 200) throw DomainError("expand: requires 0 <= order <= 200");
    if (sp.sigma < 0.3 || sp.sigma > 3.0)
        throw DomainError("expand: sigma outside [0.3, 3]");
    const double a = -60.0 / sp.sigma, b = 10.0, step = 0.01;
    const long m = long(std::ceil((b - a) / step));
    const double h = (b - a) / double(m);

    HermiteCoeffs hc;
    hc.sigma = sp.sigma;
    hc.order = order;
    hc.orthonormal_coeffs.assign(std::size_t(order) + 1, 0.0);
    std::vector<double> col;
    for (long j = 0; j <= m; ++j) {
        const double x = a + h * double(j);
        const double v = gfun::v_sigma(sp, x);
        if (v == 0.0) continue;
        const double w = (j == 0 || j == m) ? 0.5 * h * v : h * v;
        detail::psi_column(x, order, col);
        for (long n = 0; n <= order; ++n)
            hc.orthonormal_coeffs[std::size_t(n)] += w * col[std::size_t(n)];
    }
    hc.coeffs.resize(std::size_t(order) + 1);
    for (long n = 0; n <= order; ++n)
        hc.coeffs[std::size_t(n)] =
            hc.orthonormal_coeffs[std::size_t(n)] * std::exp(-0.5 * log_norm_sq(n));
    return hc;
}

/// sum_n c_n phi_n(x) = sum_n <V,psi_n> psi_n(x): the truncated expansion.
inline double reconstruct(const HermiteCoeffs& hc, double x) {
    double acc = 0.0;
    double p_prev = 0.0;
    double p = detail::kQuarterRootPi * std::exp(-x * x / 2.0);
    acc += hc.orthonormal_coeffs[0] * p;
    for (long k = 1; k <= hc.order; ++k) {
        const double next = x * std::sqrt(2.0 / double(k)) * p -
                            std::sqrt(double(k - 1) / double(k)) * p_prev;
        p_prev = p;
        p = next;
        acc += hc.orthonormal_coeffs[std::size_t(k)] * p;
    }
    return acc;
}

/// sum_n c_n (-i)^n phi_n(t): the expansion image of the Fourier transform.
inline Complex reconstruct_hat(const HermiteCoeffs& hc, double t) {
    Complex acc{};
    double p_prev = 0.0;
    double p = detail::kQuarterRootPi * std::exp(-t * t / 2.0);
    acc += hc.orthonormal_coeffs[0] * p;
    for (long k = 1; k <= hc.order; ++k) {
        const double next = t * std::sqrt(2.0 / double(k)) * p -
                            std::sqrt(double(k - 1) / double(k)) * p_prev;
        p_prev = p;
        p = next;
        acc += detail::minus_i_pow(k) * (hc.orthonormal_coeffs[std::size_t(k)] * p);
    }
    return acc;
}

}  // namespace zetaflow::hermite

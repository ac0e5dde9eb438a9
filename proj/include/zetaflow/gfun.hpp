#pragma once

// The integral transform G(z) = int_0^inf u^{z-1}/(1+e^u) du computed two
// independent ways -- trapezoid quadrature after the substitution u = e^x,
// and the identity route eta(z)*Gamma(z) -- plus the kernel V_sigma, its
// Fourier transform, and the residual of the relation
// G(sigma + i t) = sqrt(2 pi) * Vhat_sigma(-t).

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetaflow/specfun.hpp"
#include "zetaflow/types.hpp"

namespace zetaflow::gfun {

struct SigmaParam {
    double sigma = 1.0;
};

inline void validate(const SigmaParam& sp) {
    if (!(sp.sigma > 0.0)) throw DomainError("SigmaParam: sigma must be > 0");
}

/// Uniform trapezoid window on the x-line for int e^{zx}/(1+exp(e^x)) dx.
struct QuadratureSpec {
    double lower_cutoff = -60.0;  // < 0
    double upper_cutoff = 7.5;    // > 0
    double step = 0.01;           // > 0
};

inline void validate(const QuadratureSpec& qs) {
    if (!(qs.lower_cutoff < 0.0) || !(qs.upper_cutoff > 0.0) || !(qs.step > 0.0))
        throw DomainError("QuadratureSpec: requires lower_cutoff < 0 < upper_cutoff, step > 0");
}

/// Cutoffs put both neglected tails under ~1e-17; the step honours the
/// oscillation rule step <= 0.3/max(1, |t|). Supported |t| tops out at 200.
inline QuadratureSpec default_quadrature(double sigma, double t_freq = 0.0) {
    QuadratureSpec qs;
    qs.lower_cutoff = -(40.0 / sigma + 20.0);
    qs.upper_cutoff = 7.5;
    qs.step = std::min(0.01, 0.3 / std::max(1.0, std::abs(t_freq)));
    return qs;
}

namespace detail {

inline const double kXOverflow = std::log(700.0);  // e^x > 700: kernel is 0 to double precision

inline double kernel(double x) {
    if (x > kXOverflow) return 0.0;
    return 1.0 / (1.0 + std::exp(std::exp(x)));
}

struct TrapezoidResult {
    Complex fine{};    // step h
    Complex coarse{};  // step 2h (every other node)
    double abs_scale = 0.0;
    long nodes = 0;
};

// One pass evaluates both resolutions: nodes at step h with half end weights,
// and the even-index subset as the 2h cross-check.
inline TrapezoidResult trapezoid_exp_kernel(Complex z, const QuadratureSpec& qs) {
    const double a = qs.lower_cutoff, b = qs.upper_cutoff;
    long n = std::max<long>(4, long(std::ceil((b - a) / qs.step)));
    if (n % 2 != 0) ++n;
    const double h = (b - a) / double(n);
    Complex sum_all{}, comp_all{}, sum_even{}, comp_even{};
    double abs_acc = 0.0;
    for (long j = 0; j <= n; ++j) {
        const double x = a + h * double(j);
        const double k = kernel(x);
        if (k == 0.0) continue;
        Complex f = k * std::exp(z * x);
        abs_acc += std::abs(f);
        const bool endpoint = (j == 0 || j == n);
        {
            const Complex y = (endpoint ? 0.5 * f : f) - comp_all;
            const Complex t = sum_all + y;
            comp_all = (t - sum_all) - y;
            sum_all = t;
        }
        if (j % 2 == 0) {
            const Complex y = (endpoint ? 0.5 * f : f) - comp_even;
            const Complex t = sum_even + y;
            comp_even = (t - sum_even) - y;
            sum_even = t;
        }
    }
    TrapezoidResult out;
    out.fine = h * sum_all;
    out.coarse = 2.0 * h * sum_even;
    out.abs_scale = h * abs_acc;
    out.nodes = n + 1;
    return out;
}

// |integrand| <= e^{sigma x}/2 on the left, e^{sigma x} e^{-e^x} on the right.
inline double tail_bounds(double sigma, const QuadratureSpec& qs) {
    const double left = std::exp(sigma * qs.lower_cutoff) / (2.0 * sigma);
    const double b = qs.upper_cutoff;
    const double log_right = (sigma - 1.0) * b - std::exp(b) + std::numbers::ln2;
    return left + std::exp(log_right);
}

inline FuncValue integrate_exp_kernel(Complex z, const QuadratureSpec& qs) {
    const auto tr = trapezoid_exp_kernel(z, qs);
    FuncValue out;
    out.value = tr.fine;
    // rounding allowance: evaluating exp(z x) at |x| up to the cutoffs wobbles
    // the phase by ~|z| |x| eps per node
    const double xmax = std::max(-qs.lower_cutoff, qs.upper_cutoff);
    const double round = specfun::detail::kEps * (8.0 + 2.0 * std::abs(z) * xmax) * tr.abs_scale;
    out.abs_err = tail_bounds(z.real(), qs) + std::abs(tr.fine - tr.coarse) + round;
    out.terms_used = tr.nodes;
    ensure_finite(out.value, "g_integral");
    return out;
}

}  // namespace detail

/// The kernel V_sigma(x) = e^{sigma x} / (1 + exp(e^x)), overflow-safe.
inline double v_sigma(const SigmaParam& sp, double x) {
    validate(sp);
    if (x > detail::kXOverflow) return 0.0;
    return std::exp(sp.sigma * x) / (1.0 + std::exp(std::exp(x)));
}

/// Quadrature route: G(z) = int_{-inf}^{inf} e^{zx}/(1+exp(e^x)) dx, Re z > 0.
/// abs_err = neglected tails + (h vs 2h) trapezoid estimate + rounding.
inline FuncValue g_integral(Complex z, const QuadratureSpec& qs) {
    if (!(z.real() > 0.0)) throw DomainError("g_integral: requires Re z > 0");
    validate(qs);
    return detail::integrate_exp_kernel(z, qs);
}

inline FuncValue g_integral(Complex z) {
    if (!(z.real() > 0.0)) throw DomainError("g_integral: requires Re z > 0");
    return detail::integrate_exp_kernel(z, default_quadrature(z.real(), z.imag()));
}

/// Identity route: G(z) = eta(z) * Gamma(z). Deliberately not the
/// (1-2^{1-z}) zeta Gamma form, so z = 1 and the denominator-zero points on
/// Re z = 1 stay regular.
inline FuncValue g_identity(Complex z, const Tolerance& tol = {}) {
    if (!(z.real() > 0.0)) throw DomainError("g_identity: requires Re z > 0");
    const FuncValue e = specfun::eta(z, tol);
    const FuncValue g = specfun::gamma(z);
    FuncValue out;
    out.value = e.value * g.value;
    out.abs_err = e.abs_err * std::abs(g.value) + std::abs(e.value) * g.abs_err +
                  e.abs_err * g.abs_err;
    out.terms_used = e.terms_used;
    ensure_finite(out.value, "g_identity");
    return out;
}

/// Fourier transform (1/sqrt(2 pi)) int e^{-i t x} V_sigma(x) dx by the same
/// trapezoid scheme; the integrand equals the G kernel at z = sigma - i t.
inline FuncValue v_hat(const SigmaParam& sp, double t, const QuadratureSpec& qs) {
    validate(sp);
    validate(qs);
    FuncValue out = detail::integrate_exp_kernel(Complex(sp.sigma, -t), qs);
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    out.value *= scale;
    out.abs_err *= scale;
    return out;
}

inline FuncValue v_hat(const SigmaParam& sp, double t) {
    return v_hat(sp, t, default_quadrature(sp.sigma, t));
}

/// |g_identity(sigma + i t) - sqrt(2 pi) v_hat(sigma, -t)| -- the module's
/// central self-check; should sit at quadrature/series noise level.
inline double fourier_relation_residual(const SigmaParam& sp, double t) {
    validate(sp);
    const Complex lhs = g_identity(Complex(sp.sigma, t)).value;
    const Complex rhs =
        std::sqrt(2.0 * std::numbers::pi) * v_hat(sp, -t, default_quadrature(sp.sigma, t)).value;
    return std::abs(lhs - rhs);
}

/// G(sigma) = eta(sigma) Gamma(sigma) > 0: the constant normalizing V_sigma
/// to a probability density.
inline double density_normalizer(const SigmaParam& sp) {
    validate(sp);
    return g_identity(Complex(sp.sigma, 0.0)).value.real();
}

}  // namespace zetaflow::gfun

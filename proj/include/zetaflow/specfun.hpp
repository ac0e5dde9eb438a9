#pragma once

// Complex special functions on the half plane Re z > 0: the alternating
// Dirichlet (eta) series with Chebyshev acceleration, Riemann zeta and its
// derivative through the eta form, log-gamma/gamma via a Lanczos fit, plain
// Dirichlet partial sums for cross-checks, the Moebius inverse series, and
// the elementary |zeta| sandwich bounds on Re z > 1.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "zetaflow/types.hpp"

namespace zetaflow::specfun {

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kEps = 2.220446049250313e-16;

// log(k) memo for the series evaluators (k up to the series cap).
inline double log_int(long k) {
    static const std::array<double, 513> table = [] {
        std::array<double, 513> a{};
        for (std::size_t i = 1; i < a.size(); ++i) a[i] = std::log(double(i));
        return a;
    }();
    return k < long(table.size()) ? table[std::size_t(k)] : std::log(double(k));
}

// ---------------------------------------------------------------------------
// Lanczos log-gamma, g = 7 with 9 coefficients (the standard published set).
// ---------------------------------------------------------------------------

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,     12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7,
};

inline bool near_nonpositive_integer(Complex z, double radius) {
    if (z.real() > 0.5) return false;
    const double k = std::round(z.real());
    return k <= 0.0 && std::abs(z.real() - k) < radius && std::abs(z.imag()) < radius;
}

// log(sin(pi z)) stable for large |Im z| (sin itself overflows past |Im z|~220).
// The imaginary part is not branch-corrected; callers use Re or exp() only.
inline Complex log_sin_pi(Complex z) {
    if (std::abs(z.imag()) < 10.0) return std::log(std::sin(kPi * z));
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),  |e^{2 i pi z}| << 1
    const Complex e = std::exp(Complex(0.0, 2.0 * kPi) * z);
    return Complex(-std::numbers::ln2, kPi / 2.0) - Complex(0.0, kPi) * z + std::log(1.0 - e);
}

// Principal-value-style complex log-gamma. Valid away from the poles at
// 0, -1, -2, ...; the imaginary part may differ from the principal branch by
// a multiple of 2*pi (harmless for exp() and for magnitudes).
inline Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z, 1e-9))
        throw PoleError("log_gamma: z within 1e-9 of a nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z)
        return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
    }
    const Complex w = z - 1.0;
    Complex a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (w + double(i));
    const Complex t = w + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(a);
}

// ---------------------------------------------------------------------------
// Chebyshev-accelerated alternating series (the d_k scheme with
// d = ((3+sqrt 8)^n + (3+sqrt 8)^{-n})/2). For terms a_k that are moments of
// a measure on [0,1] the truncation error is <= 2 (3+sqrt 8)^{-n} * TV(measure).
// ---------------------------------------------------------------------------

inline constexpr double kAccelRate = 5.828427124746190;  // 3 + sqrt(8)
inline constexpr long kAccelCap = 390;                   // (3+sqrt 8)^n overflows past ~403

struct AccelSums {
    Complex plain{};      // sum (-1)^k (k+1)^{-z}
    Complex logweight{};  // sum (-1)^k log(k+1) (k+1)^{-z}
    double round_plain = 0.0;
    double round_logweight = 0.0;
    long terms = 0;
};

inline AccelSums accelerated_sums(Complex z, long n, bool with_logweight) {
    double d = std::pow(kAccelRate, double(n));
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d;
    Complex s{}, sl{};
    double abs_acc = 0.0, abs_acc_l = 0.0;
    for (long k = 0; k < n; ++k) {
        c = b - c;
        const double lk = log_int(k + 1);
        const Complex p = std::exp(-z * lk);  // (k+1)^{-z}
        const double ap = std::abs(c) * std::abs(p);
        s += c * p;
        abs_acc += ap;
        if (with_logweight) {
            sl += (c * lk) * p;
            abs_acc_l += ap * lk;
        }
        b *= double(k + n) * double(k - n) / ((double(k) + 0.5) * double(k + 1));
    }
    AccelSums out;
    out.plain = s / d;
    out.logweight = sl / d;
    out.round_plain = 8.0 * kEps * abs_acc / d;
    out.round_logweight = 8.0 * kEps * abs_acc_l / d;
    out.terms = n;
    return out;
}

// Total variation of the moment weight (log(1/x))^{z-1}/Gamma(z) dx on [0,1],
// i.e. Gamma(Re z)/|Gamma(z)|; drives the a-priori truncation bound for eta.
inline double eta_weight(Complex z) {
    return std::exp(std::lgamma(z.real()) - log_gamma(z).real());
}

// Same for the log-differentiated weight, which governs the eta' series:
// TV <= (|psi(z)| Gamma(sigma) + 1/sigma^2 + Gamma(sigma+1)) / |Gamma(z)|
// with |psi(z)| <= 1/|z| + |log(z+1)| + 1 on Re z > 0.
inline double eta_prime_weight(Complex z) {
    const double sigma = z.real();
    const double psi_bound = 1.0 / std::abs(z) + std::abs(std::log(z + 1.0)) + 1.0;
    const double num = psi_bound * std::tgamma(sigma) + 1.0 / (sigma * sigma) +
                       std::tgamma(sigma + 1.0);
    return num * std::exp(-log_gamma(z).real());
}

// Smallest n with 3 * rate^{-n} * weight <= target.
inline long accel_terms_for(double weight, double target, long max_terms) {
    const double need = std::log(3.0 * weight / target) / std::log(kAccelRate);
    long n = need <= 4.0 ? 4 : long(std::ceil(need));
    const long cap = std::min<long>(max_terms, kAccelCap);
    if (n > cap)
        throw ConvergenceError("eta series: max_terms insufficient for the requested bound");
    return n;
}

// 1 - 2^{1-z} and its excluded discs. The factor vanishes at
// z = 1 + 2 pi i k / ln 2; within 1e-6 of those points we refuse to divide.
inline Complex eta_to_zeta_factor(Complex z) {
    return 1.0 - std::exp((1.0 - z) * kLn2);
}

inline void check_zeta_domain(Complex z) {
    if (!(z.real() > 0.0)) throw DomainError("zeta: requires Re z > 0");
    if (std::abs(z - 1.0) < 1e-6) throw PoleError("zeta: z within 1e-6 of the pole at 1");
    const double k = std::round(z.imag() * kLn2 / (2.0 * kPi));
    if (k != 0.0) {
        const Complex zk(1.0, 2.0 * kPi * k / kLn2);
        if (std::abs(z - zk) < 1e-6)
            throw DenominatorError("zeta: z within 1e-6 of a zero of 1 - 2^{1-z}");
    }
    if (std::abs(eta_to_zeta_factor(z)) <= 1e-6)
        throw DenominatorError("zeta: |1 - 2^{1-z}| <= 1e-6");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Dirichlet eta: sum_{n>=1} (-1)^{n+1} n^{-z}, Re z > 0.
/// abs_err is the a-priori acceleration bound plus rounding allowance.
inline FuncValue eta(Complex z, const Tolerance& tol = {}) {
    validate(tol);
    if (!(z.real() > 0.0)) throw DomainError("eta: requires Re z > 0");
    const double w = detail::eta_weight(z);
    const long n = detail::accel_terms_for(w, tol.target_abs_err, tol.max_terms);
    const auto sums = detail::accelerated_sums(z, n, false);
    FuncValue out;
    out.value = sums.plain;
    out.abs_err = 3.0 * std::pow(detail::kAccelRate, -double(n)) * w + sums.round_plain;
    out.terms_used = n;
    ensure_finite(out.value, "eta");
    return out;
}

/// Riemann zeta through eta: zeta = eta(z) / (1 - 2^{1-z}).
inline FuncValue zeta(Complex z, const Tolerance& tol = {}) {
    validate(tol);
    detail::check_zeta_domain(z);
    const Complex c = detail::eta_to_zeta_factor(z);
    const double ac = std::abs(c);
    // aim the series so the bound survives the division by c
    Tolerance inner = tol;
    inner.target_abs_err = std::max(1e-15, tol.target_abs_err * ac / 2.0);
    const FuncValue e = eta(z, inner);
    FuncValue out;
    out.value = e.value / c;
    out.abs_err = e.abs_err / ac + 8.0 * detail::kEps * std::abs(out.value) * (1.0 + 1.0 / ac);
    out.terms_used = e.terms_used;
    ensure_finite(out.value, "zeta");
    return out;
}

/// zeta and zeta' in one accelerated pass (both reuse the same powers).
struct ZetaPair {
    FuncValue zeta;
    FuncValue zeta_prime;
};

inline ZetaPair zeta_with_prime(Complex z, const Tolerance& tol = {}) {
    validate(tol);
    detail::check_zeta_domain(z);
    const Complex c = detail::eta_to_zeta_factor(z);
    const Complex cp = detail::kLn2 * std::exp((1.0 - z) * detail::kLn2);  // d/dz (1 - 2^{1-z})
    const double ac = std::abs(c);

    // split the requested bound between the two series
    const double target = tol.target_abs_err * ac / 4.0;
    const double w = detail::eta_weight(z);
    const double wp = detail::eta_prime_weight(z);
    const double floor = 1e-15;
    const long n_eta = detail::accel_terms_for(w, std::max(target, floor), tol.max_terms);
    const long n_etp = detail::accel_terms_for(wp, std::max(target, floor), tol.max_terms);
    const long n = std::max(n_eta, n_etp);

    const auto sums = detail::accelerated_sums(z, n, true);
    const double rate = std::pow(detail::kAccelRate, -double(n));
    const Complex eta_v = sums.plain;
    const Complex etap_v = -sums.logweight;  // eta'(z) = -sum (-1)^k log(k+1)(k+1)^{-z}
    const double eta_err = 3.0 * rate * w + sums.round_plain;
    const double etap_err = 3.0 * rate * wp + sums.round_logweight;

    ZetaPair out;
    out.zeta.value = eta_v / c;
    out.zeta.abs_err =
        eta_err / ac + 8.0 * detail::kEps * std::abs(out.zeta.value) * (1.0 + 1.0 / ac);
    out.zeta.terms_used = n;

    // zeta' = (eta' - c' zeta) / c
    out.zeta_prime.value = (etap_v - cp * out.zeta.value) / c;
    out.zeta_prime.abs_err = (etap_err + std::abs(cp) * out.zeta.abs_err) / ac +
                             8.0 * detail::kEps * std::abs(out.zeta_prime.value);
    out.zeta_prime.terms_used = n;
    ensure_finite(out.zeta.value, "zeta");
    ensure_finite(out.zeta_prime.value, "zeta_prime");
    return out;
}

inline FuncValue zeta_prime(Complex z, const Tolerance& tol = {}) {
    return zeta_with_prime(z, tol).zeta_prime;
}

/// Complex log-gamma (exp of it is Gamma; Re is log|Gamma|).
inline Complex log_gamma(Complex z) { return detail::log_gamma(z); }

/// Gamma via the Lanczos fit with reflection for Re z < 1/2.
/// Relative error <= 1e-12 on |Im z| <= 100, 0 < Re z <= 50.
inline FuncValue gamma(Complex z) {
    if (detail::near_nonpositive_integer(z, 1e-9))
        throw PoleError("gamma: z within 1e-9 of a nonpositive integer");
    FuncValue out;
    out.value = std::exp(detail::log_gamma(z));
    out.abs_err = 1e-12 * std::abs(out.value);
    out.terms_used = long(detail::kLanczos.size());
    ensure_finite(out.value, "gamma");
    return out;
}

/// Plain Dirichlet partial sum over n <= n_terms for Re z > 1, with the
/// integral tail bound N^{1-Re z}/(Re z - 1) as abs_err. The independent
/// cross-check route for zeta on Re z > 1.
inline FuncValue zeta_direct(Complex z, long n_terms) {
    if (!(z.real() > 1.0)) throw DomainError("zeta_direct: requires Re z > 1");
    if (n_terms <= 0) throw DomainError("zeta_direct: n_terms must be positive");
    // Kahan-compensated accumulation keeps rounding below the tail bound.
    Complex sum{}, comp{};
    double abs_acc = 0.0;
    for (long n = 1; n <= n_terms; ++n) {
        const Complex term = std::exp(-z * detail::log_int(n));
        abs_acc += std::abs(term);
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    FuncValue out;
    out.value = sum;
    const double sigma = z.real();
    out.abs_err = std::pow(double(n_terms), 1.0 - sigma) / (sigma - 1.0) +
                  8.0 * detail::kEps * abs_acc;
    out.terms_used = n_terms;
    ensure_finite(out.value, "zeta_direct");
    return out;
}

/// Moebius mu on 1..n by the linear sieve.
inline std::vector<std::int8_t> mobius_sieve(long n) {
    if (n < 1) throw DomainError("mobius_sieve: n must be >= 1");
    std::vector<std::int8_t> mu(std::size_t(n) + 1, 0);
    std::vector<long> primes;
    std::vector<bool> composite(std::size_t(n) + 1, false);
    mu[1] = 1;
    for (long i = 2; i <= n; ++i) {
        if (!composite[std::size_t(i)]) {
            primes.push_back(i);
            mu[std::size_t(i)] = -1;
        }
        for (long p : primes) {
            if (i * p > n) break;
            composite[std::size_t(i * p)] = true;
            if (i % p == 0) {
                mu[std::size_t(i * p)] = 0;
                break;
            }
            mu[std::size_t(i * p)] = std::int8_t(-mu[std::size_t(i)]);
        }
    }
    return mu;
}

/// Partial sum of 1/zeta = sum mu(n) n^{-z} for Re z > 1.
inline FuncValue inverse_zeta_series(Complex z, long n_terms) {
    if (!(z.real() > 1.0)) throw DomainError("inverse_zeta_series: requires Re z > 1");
    if (n_terms <= 0) throw DomainError("inverse_zeta_series: n_terms must be positive");
    const auto mu = mobius_sieve(n_terms);
    Complex sum{}, comp{};
    double abs_acc = 0.0;
    for (long n = 1; n <= n_terms; ++n) {
        if (mu[std::size_t(n)] == 0) continue;
        const Complex term = double(mu[std::size_t(n)]) * std::exp(-z * detail::log_int(n));
        abs_acc += std::abs(term);
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    FuncValue out;
    out.value = sum;
    const double sigma = z.real();
    out.abs_err = std::pow(double(n_terms), 1.0 - sigma) / (sigma - 1.0) +
                  8.0 * detail::kEps * abs_acc;
    out.terms_used = n_terms;
    ensure_finite(out.value, "inverse_zeta_series");
    return out;
}

/// The elementary sandwich (Re z - 1)/Re z < |zeta(z)| < Re z/(Re z - 1)
/// valid for Re z > 1.
struct SandwichBounds {
    double lower = 0.0;
    double upper = 0.0;
    double value_abs = 0.0;
    bool holds = false;
};

inline SandwichBounds sandwich_bounds(Complex z, const Tolerance& tol = {}) {
    if (!(z.real() > 1.0 + 1e-9)) throw DomainError("sandwich_bounds: requires Re z > 1");
    SandwichBounds out;
    const double sigma = z.real();
    out.lower = (sigma - 1.0) / sigma;
    out.upper = sigma / (sigma - 1.0);
    out.value_abs = std::abs(zeta(z, tol).value);
    out.holds = out.lower < out.value_abs && out.value_abs < out.upper;
    return out;
}

}  // namespace zetaflow::specfun

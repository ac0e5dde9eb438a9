#pragma once

// Scans |G(sigma + i t)| over a t-interval. Up to the never-vanishing factors
// in G = eta * Gamma this is sqrt(2 pi) |Vhat_sigma(-t)|, so grid minima that
// refine to zero witness zeta zeros on the line Re = sigma, and a strictly
// positive floor is the numerical shadow of the non-vanishing claim.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "zetaflow/flow.hpp"
#include "zetaflow/gfun.hpp"
#include "zetaflow/parallel.hpp"
#include "zetaflow/types.hpp"

namespace zetaflow::scan {

struct LocalMinimum {
    double t = 0.0;
    double value = 0.0;
};

struct ScanReport {
    double sigma = 0.0;
    double t_min = 0.0, t_max = 0.0, step = 0.0;
    double global_min_value = 0.0;
    double global_min_t = 0.0;
    std::vector<LocalMinimum> local_minima;  // refined, in t order
    double positive_floor = 0.0;             // smallest value observed anywhere
};

namespace detail {

inline void check_box(double sigma, double t_min, double t_max, double step) {
    if (!(sigma > 0.3 && sigma < 3.0))
        throw DomainError("scan: sigma must lie in (0.3, 3)");
    if (!(0.0 <= t_min && t_min < t_max && t_max <= 200.0))
        throw DomainError("scan: requires 0 <= t_min < t_max <= 200");
    if (!(step > 0.0 && step <= 0.05)) throw DomainError("scan: step must be in (0, 0.05]");
}

inline double g_abs(double sigma, double t) {
    return std::abs(gfun::g_identity(Complex(sigma, t)).value);
}

// Golden-section refinement of a bracketed minimum to |b - a| <= 1e-6.
inline LocalMinimum golden_refine(double sigma, double a, double b, double seed_t,
                                  double seed_value) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = g_abs(sigma, x1);
    double f2 = g_abs(sigma, x2);
    LocalMinimum best{seed_t, seed_value};
    auto consider = [&best](double t, double v) {
        if (v < best.value) best = {t, v};
    };
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > 1e-6) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g_abs(sigma, x1);
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g_abs(sigma, x2);
            consider(x2, f2);
        }
    }
    return best;
}

}  // namespace detail

/// Grid scan of |G(sigma + i t)| with three-point local-minimum detection
/// (plateaus take the leftmost point) and golden-section refinement.
inline ScanReport scan_vhat(double sigma, double t_min, double t_max, double step,
                            unsigned threads = 0) {
    detail::check_box(sigma, t_min, t_max, step);

    const long m = long(std::floor((t_max - t_min) / step + 1e-9));
    std::vector<double> values(std::size_t(m) + 1);
    parallel::parallel_for(m + 1, threads, [&](long j) {
        values[std::size_t(j)] = detail::g_abs(sigma, t_min + step * double(j));
    });

    ScanReport rep;
    rep.sigma = sigma;
    rep.t_min = t_min;
    rep.t_max = t_max;
    rep.step = step;

    double grid_min = values[0];
    double grid_min_t = t_min;
    for (long j = 1; j <= m; ++j) {
        if (values[std::size_t(j)] < grid_min) {
            grid_min = values[std::size_t(j)];
            grid_min_t = t_min + step * double(j);
        }
    }

    for (long j = 1; j < m; ++j) {
        const double prev = values[std::size_t(j - 1)];
        const double here = values[std::size_t(j)];
        const double next = values[std::size_t(j + 1)];
        if (here < prev && here <= next) {
            const double tj = t_min + step * double(j);
            rep.local_minima.push_back(
                detail::golden_refine(sigma, tj - step, tj + step, tj, here));
        }
    }

    rep.global_min_value = grid_min;
    rep.global_min_t = grid_min_t;
    for (const auto& lm : rep.local_minima) {
        if (lm.value < rep.global_min_value) {
            rep.global_min_value = lm.value;
            rep.global_min_t = lm.t;
        }
    }
    rep.positive_floor = rep.global_min_value;
    return rep;
}

/// Promotes a suspicious scan minimum into a verified zeta zero: Newton from
/// sigma + i t_guess. Returns the refined zero, or nothing if the iteration
/// fails or leaves the scan box in Re.
inline std::optional<Complex> zero_witness(double sigma, double t_guess) {
    if (!(sigma > 0.3 && sigma < 3.0))
        throw DomainError("zero_witness: sigma must lie in (0.3, 3)");
    if (!(t_guess >= 0.0 && t_guess <= 200.0))
        throw DomainError("zero_witness: t_guess must lie in [0, 200]");
    try {
        const Complex z = flow::refine_zero(Complex(sigma, t_guess));
        if (z.real() > 0.3 && z.real() < 3.0) return z;
        return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace zetaflow::scan

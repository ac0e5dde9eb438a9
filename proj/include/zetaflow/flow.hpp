#pragma once

// The continuous Newton flow dz/dt = -zeta(z)/zeta'(z). Along exact
// trajectories zeta(z(t)) = e^{-t} zeta(z(0)), so |zeta| is the natural
// convergence monitor and the decay residual measures integrator error only.
// Integration uses the Dormand-Prince 5(4) embedded pair with PI step
// control; converged endpoints are polished by discrete Newton.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zetaflow/parallel.hpp"
#include "zetaflow/specfun.hpp"
#include "zetaflow/types.hpp"

namespace zetaflow::flow {

struct FlowConfig {
    double rel_tol = 1e-9;     // embedded-pair error-per-step control
    double t_max = 60.0;       // flow-time budget
    double conv_eps = 1e-12;   // |zeta| convergence threshold (relative to start)
    double deriv_eps = 1e-10;  // |zeta'| singularity threshold
    double escape_im = 1e4;    // |Im z| escape bound
    double sample_dt = 0.1;    // output sampling interval
};

inline void validate(const FlowConfig& cfg) {
    if (!(cfg.rel_tol > 0.0 && cfg.t_max > 0.0 && cfg.conv_eps > 0.0 &&
          cfg.deriv_eps > 0.0 && cfg.escape_im > 0.0 && cfg.sample_dt > 0.0))
        throw DomainError("FlowConfig: all fields must be positive");
    if (!(cfg.conv_eps < 1.0)) throw DomainError("FlowConfig: conv_eps must be < 1");
    if (!(cfg.sample_dt <= cfg.t_max)) throw DomainError("FlowConfig: sample_dt must be <= t_max");
}

struct Outcome {
    enum class Kind { converged, escaped, singularity, timeout };
    Kind kind = Kind::timeout;
    Complex point{};  // converged: the polished zero; otherwise the last/stop point
};

inline const char* to_string(Outcome::Kind k) {
    switch (k) {
        case Outcome::Kind::converged: return "converged";
        case Outcome::Kind::escaped: return "escaped";
        case Outcome::Kind::singularity: return "singularity";
        default: return "timeout";
    }
}

struct Sample {
    double t = 0.0;
    Complex z{};
    double zeta_abs = 0.0;
};

struct Trajectory {
    Complex start{};
    std::vector<Sample> samples;  // strictly increasing t, first is (0, start, |zeta(start)|)
    Outcome outcome;
    double decay_residual_max = 0.0;  // max | |zeta(z(t))| - e^{-t} |zeta(z0)| | / |zeta(z0)|
};

namespace detail {

inline const Tolerance kTightTol{1e-15, 400};

// trajectories leaving Re z <= kReFloor are outside the validated region
inline constexpr double kReFloor = 0.02;
// explicit RK contraction toward a zero needs h inside the stability region
inline constexpr double kMaxStep = 1.0;
inline constexpr double kMinStep = 1e-13;
inline constexpr long kMaxSteps = 2'000'000;

struct RhsValue {
    Complex phi{};
    double zeta_abs = 0.0;
};

// -zeta/zeta' plus the |zeta| the caller needs for convergence checks.
inline RhsValue rhs(Complex z, double deriv_eps) {
    const auto pair = specfun::zeta_with_prime(z, kTightTol);
    if (std::abs(pair.zeta_prime.value) < deriv_eps)
        throw SingularityError("phi_rhs: |zeta'| below deriv_eps");
    return {-pair.zeta.value / pair.zeta_prime.value, std::abs(pair.zeta.value)};
}

// Dormand-Prince 5(4) tableau.
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

/// The flow's right-hand side phi(z) = -zeta(z)/zeta'(z).
inline Complex phi_rhs(Complex z, double deriv_eps = 1e-10) {
    return detail::rhs(z, deriv_eps).phi;
}

/// Discrete Newton polish: z <- z - zeta/zeta' until |zeta| < 1e-13
/// (at most 50 iterations).
inline Complex refine_zero(Complex z_guess, double deriv_eps = 1e-10) {
    Complex z = z_guess;
    for (int it = 0; it < 50; ++it) {
        const auto pair = specfun::zeta_with_prime(z, detail::kTightTol);
        if (std::abs(pair.zeta.value) < 1e-13) return z;
        if (std::abs(pair.zeta_prime.value) < deriv_eps)
            throw SingularityError("refine_zero: |zeta'| below deriv_eps");
        z -= pair.zeta.value / pair.zeta_prime.value;
    }
    throw NoConvergence("refine_zero: no convergence in 50 iterations");
}

/// phi'(alpha) by centered finite differences, averaged over the directions
/// 1 and i. At a simple zero of zeta this equals -1.
inline Complex stability_eigen(Complex alpha, double deriv_eps = 1e-10) {
    const double h = 1e-6;
    const Complex d_re = (phi_rhs(alpha + h, deriv_eps) - phi_rhs(alpha - h, deriv_eps)) / (2.0 * h);
    const Complex ih(0.0, h);
    const Complex d_im = (phi_rhs(alpha + ih, deriv_eps) - phi_rhs(alpha - ih, deriv_eps)) / (2.0 * ih);
    return 0.5 * (d_re + d_im);
}

namespace detail {

struct StepResult {
    Complex z_new{};
    Complex k7{};  // FSAL: rhs at z_new
    double k7_zeta_abs = 0.0;
    double err_norm = 0.0;
};

inline StepResult dopri5_step(Complex z, const RhsValue& k1v, double h, double deriv_eps,
                              double rel_tol) {
    const Complex k1 = k1v.phi;
    const Complex k2 = rhs(z + h * (a21 * k1), deriv_eps).phi;
    const Complex k3 = rhs(z + h * (a31 * k1 + a32 * k2), deriv_eps).phi;
    const Complex k4 = rhs(z + h * (a41 * k1 + a42 * k2 + a43 * k3), deriv_eps).phi;
    const Complex k5 = rhs(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), deriv_eps).phi;
    const Complex k6 =
        rhs(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), deriv_eps).phi;
    StepResult out;
    out.z_new = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const RhsValue k7v = rhs(out.z_new, deriv_eps);
    out.k7 = k7v.phi;
    out.k7_zeta_abs = k7v.zeta_abs;
    const Complex err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.k7);
    const double sc = rel_tol * (1.0 + std::max(std::abs(z), std::abs(out.z_new)));
    out.err_norm = std::abs(err) / sc;
    return out;
}

}  // namespace detail

/// Integrate the flow from z0. All failure modes are encoded in the outcome;
/// only a start outside Re z > 0 throws.
inline Trajectory integrate(Complex z0, const FlowConfig& cfg = {}) {
    validate(cfg);
    if (!(z0.real() > 0.0)) throw DomainError("integrate: requires Re z0 > 0");

    Trajectory traj;
    traj.start = z0;

    const double zeta0_abs = std::abs(specfun::zeta(z0, detail::kTightTol).value);
    traj.samples.push_back({0.0, z0, zeta0_abs});
    const double conv_threshold = cfg.conv_eps * std::max(1.0, zeta0_abs);

    auto note_residual = [&](double t, double za) {
        const double res = std::abs(za - std::exp(-t) * zeta0_abs) / zeta0_abs;
        traj.decay_residual_max = std::max(traj.decay_residual_max, res);
    };
    auto finish = [&](Outcome::Kind kind, Complex point, double t, Complex z, double za) {
        if (t > traj.samples.back().t + 1e-15) {
            traj.samples.push_back({t, z, za});
            note_residual(t, za);
        }
        traj.outcome = {kind, point};
        return traj;
    };

    if (zeta0_abs < conv_threshold) {
        Complex alpha = z0;
        try {
            alpha = refine_zero(z0, cfg.deriv_eps);
        } catch (const Error&) {
            return finish(Outcome::Kind::singularity, z0, 0.0, z0, zeta0_abs);
        }
        return finish(Outcome::Kind::converged, alpha, 0.0, z0, zeta0_abs);
    }

    double t = 0.0;
    Complex z = z0;
    detail::RhsValue k1;
    try {
        k1 = detail::rhs(z, cfg.deriv_eps);
    } catch (const Error&) {
        return finish(Outcome::Kind::singularity, z, t, z, zeta0_abs);
    }

    double h = std::min({0.01, cfg.sample_dt, cfg.t_max});
    double err_prev = 1.0;
    long next_sample = 1;

    for (long step = 0; step < detail::kMaxSteps;) {
        const double t_sample = cfg.sample_dt * double(next_sample);
        double h_try = std::min(h, cfg.t_max - t);
        bool hit_sample = false;
        if (t_sample <= cfg.t_max && t + h_try >= t_sample - 1e-14) {
            h_try = t_sample - t;
            hit_sample = true;
        }
        if (h_try < detail::kMinStep)
            return finish(Outcome::Kind::singularity, z, t, z, k1.zeta_abs);

        detail::StepResult sr;
        try {
            sr = detail::dopri5_step(z, k1, h_try, cfg.deriv_eps, cfg.rel_tol);
        } catch (const Error&) {
            // stage evaluation hit the derivative threshold or an excluded disc
            return finish(Outcome::Kind::singularity, z, t, z, k1.zeta_abs);
        }

        // PI controller (order 5: exponents 0.7/5 and 0.4/5)
        const double en = std::max(sr.err_norm, 1e-20);
        double factor = 0.9 * std::pow(en, -0.14) * std::pow(err_prev, 0.08);

        if (sr.err_norm <= 1.0) {
            ++step;
            t += h_try;
            z = sr.z_new;
            k1 = {sr.k7, sr.k7_zeta_abs};
            err_prev = en;
            if (hit_sample) {
                traj.samples.push_back({t, z, k1.zeta_abs});
                note_residual(t, k1.zeta_abs);
                ++next_sample;
            }

            if (k1.zeta_abs < conv_threshold) {
                Complex alpha = z;
                try {
                    alpha = refine_zero(z, cfg.deriv_eps);
                } catch (const Error&) {
                    return finish(Outcome::Kind::singularity, z, t, z, k1.zeta_abs);
                }
                return finish(Outcome::Kind::converged, alpha, t, z, k1.zeta_abs);
            }
            if (std::abs(z.imag()) > cfg.escape_im || z.real() <= detail::kReFloor)
                return finish(Outcome::Kind::escaped, z, t, z, k1.zeta_abs);
            if (t >= cfg.t_max - 1e-12)
                return finish(Outcome::Kind::timeout, z, t, z, k1.zeta_abs);
            h = std::min(detail::kMaxStep, h_try * std::clamp(factor, 0.2, 5.0));
        } else {
            h = h_try * std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
            ++step;  // rejected steps count against the budget too
        }
    }
    return finish(Outcome::Kind::timeout, z, t, z, k1.zeta_abs);
}

// ---------------------------------------------------------------------------
// Basin mapping
// ---------------------------------------------------------------------------

struct BasinGrid {
    double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
    long nx = 0, ny = 0;
    // row-major labels[iy*nx + ix]: >= 0 registry index, -1 escaped,
    // -2 derivative singularity, -3 timeout
    std::vector<int> labels;
    std::vector<Complex> zeros;  // pairwise distinct (separation > 1e-6)
};

inline constexpr int kLabelEscaped = -1;
inline constexpr int kLabelSingularity = -2;
inline constexpr int kLabelTimeout = -3;

/// Runs the flow from every cell center and labels cells by the zero they
/// converge to. Deterministic: cells are independent, results land in
/// preassigned slots, and the registry is assembled in cell-index order.
inline BasinGrid basin_grid(double re_min, double re_max, double im_min, double im_max,
                            long nx, long ny, const FlowConfig& cfg = {},
                            unsigned threads = 0) {
    validate(cfg);
    if (!(re_min < re_max && im_min < im_max))
        throw DomainError("basin_grid: rectangle must have positive extent");
    if (!(re_min > detail::kReFloor && re_max < 0.98))
        throw DomainError("basin_grid: rectangle must lie within Re in (0.02, 0.98)");
    if (nx <= 0 || ny <= 0 || nx > 4096 || ny > 4096)
        throw DomainError("basin_grid: nx, ny must be in 1..4096");

    BasinGrid grid;
    grid.re_min = re_min;
    grid.re_max = re_max;
    grid.im_min = im_min;
    grid.im_max = im_max;
    grid.nx = nx;
    grid.ny = ny;
    grid.labels.assign(std::size_t(nx * ny), kLabelTimeout);

    // no trajectory recording needed per cell
    FlowConfig cell_cfg = cfg;
    cell_cfg.sample_dt = cfg.t_max;

    const double dx = (re_max - re_min) / double(nx);
    const double dy = (im_max - im_min) / double(ny);

    std::vector<Outcome> outcomes(std::size_t(nx * ny));
    parallel::parallel_for(nx * ny, threads, [&](long idx) {
        const long ix = idx % nx, iy = idx / nx;
        const Complex z0(re_min + (double(ix) + 0.5) * dx, im_min + (double(iy) + 0.5) * dy);
        outcomes[std::size_t(idx)] = integrate(z0, cell_cfg).outcome;
    });

    for (long idx = 0; idx < nx * ny; ++idx) {
        const Outcome& oc = outcomes[std::size_t(idx)];
        int label;
        switch (oc.kind) {
            case Outcome::Kind::converged: {
                label = -1;
                for (std::size_t r = 0; r < grid.zeros.size(); ++r) {
                    if (std::abs(grid.zeros[r] - oc.point) < 1e-6) {
                        label = int(r);
                        break;
                    }
                }
                if (label < 0) {
                    grid.zeros.push_back(oc.point);
                    label = int(grid.zeros.size()) - 1;
                }
                break;
            }
            case Outcome::Kind::escaped: label = kLabelEscaped; break;
            case Outcome::Kind::singularity: label = kLabelSingularity; break;
            default: label = kLabelTimeout; break;
        }
        grid.labels[std::size_t(idx)] = label;
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Trajectory instrumentation
// ---------------------------------------------------------------------------

struct EscapeReport {
    double max_re = 0.0;
    double limsup_proxy_re = 0.0;  // max Re over the final 25% of samples
    double min_zeta_abs = 0.0;
};

inline EscapeReport escape_report(const Trajectory& traj) {
    EscapeReport rep;
    if (traj.samples.empty()) return rep;
    rep.max_re = traj.samples.front().z.real();
    rep.min_zeta_abs = traj.samples.front().zeta_abs;
    for (const auto& s : traj.samples) {
        rep.max_re = std::max(rep.max_re, s.z.real());
        rep.min_zeta_abs = std::min(rep.min_zeta_abs, s.zeta_abs);
    }
    const std::size_t n = traj.samples.size();
    const std::size_t start = (3 * (n - 1)) / 4;
    rep.limsup_proxy_re = traj.samples[start].z.real();
    for (std::size_t i = start; i < n; ++i)
        rep.limsup_proxy_re = std::max(rep.limsup_proxy_re, traj.samples[i].z.real());
    return rep;
}

}  // namespace zetaflow::flow

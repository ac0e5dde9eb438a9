#pragma once

// Command-line front end. Every core operation is reachable through a
// subcommand; results are emitted as CSV (default) or JSON built from
// 17-significant-digit round-trippable numbers. Exit codes: 0 success,
// 1 verify-suite failure, 2 usage error, 3 domain/convergence error.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zetaflow/flow.hpp"
#include "zetaflow/format.hpp"
#include "zetaflow/gfun.hpp"
#include "zetaflow/hermite.hpp"
#include "zetaflow/scan.hpp"
#include "zetaflow/specfun.hpp"
#include "zetaflow/types.hpp"

namespace zetaflow::cli {

namespace detail {

using format::integer;
using format::real;

enum class Format { csv, json };

struct CommonOpts {
    std::string format = "csv";
    std::string out_file;
};

inline void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", opts.out_file, "Write output to FILE instead of stdout");
}

inline Format parse_format(const CommonOpts& opts) {
    return opts.format == "json" ? Format::json : Format::csv;
}

inline int emit(const CommonOpts& opts, const std::string& text, std::ostream& out,
                std::ostream& err) {
    if (opts.out_file.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(opts.out_file, std::ios::binary);
    if (!f) {
        err << "error: cannot open output file '" << opts.out_file << "'\n";
        return 3;
    }
    f << text;
    return 0;
}

// one CSV row / flat JSON object for the point evaluators
inline std::string point_output(Format fmt, const char* name, Complex z, const FuncValue& fv) {
    std::string s;
    if (fmt == Format::csv) {
        s += "re,im,";
        s += name;
        s += "_re,";
        s += name;
        s += "_im,abs_err\n";
        s += real(z.real()) + "," + real(z.imag()) + "," + real(fv.value.real()) + "," +
             real(fv.value.imag()) + "," + real(fv.abs_err) + "\n";
    } else {
        s += "{\"re\":" + real(z.real()) + ",\"im\":" + real(z.imag()) + ",\"" + name +
             "_re\":" + real(fv.value.real()) + ",\"" + name + "_im\":" + real(fv.value.imag()) +
             ",\"abs_err\":" + real(fv.abs_err) + "}\n";
    }
    return s;
}

inline std::string outcome_point_key(flow::Outcome::Kind k) {
    switch (k) {
        case flow::Outcome::Kind::converged: return "alpha";
        case flow::Outcome::Kind::singularity: return "at";
        default: return "last";
    }
}

// one row per cell `ix,iy,re,im,label`, then the registry as a trailing
// `# zero,idx,re,im` section
inline std::string basin_output(const flow::BasinGrid& grid, Format fmt) {
    std::string s;
    const double dx = (grid.re_max - grid.re_min) / double(grid.nx);
    const double dy = (grid.im_max - grid.im_min) / double(grid.ny);
    if (fmt == Format::csv) {
        s = "ix,iy,re,im,label\n";
        for (long iy = 0; iy < grid.ny; ++iy) {
            for (long ix = 0; ix < grid.nx; ++ix) {
                const double re = grid.re_min + (double(ix) + 0.5) * dx;
                const double im = grid.im_min + (double(iy) + 0.5) * dy;
                s += integer(ix) + "," + integer(iy) + "," + real(re) + "," + real(im) + "," +
                     integer(grid.labels[std::size_t(iy * grid.nx + ix)]) + "\n";
            }
        }
        for (std::size_t r = 0; r < grid.zeros.size(); ++r)
            s += "# zero," + integer(long(r)) + "," + real(grid.zeros[r].real()) + "," +
                 real(grid.zeros[r].imag()) + "\n";
    } else {
        s = "{\"re_min\":" + real(grid.re_min) + ",\"re_max\":" + real(grid.re_max) +
            ",\"im_min\":" + real(grid.im_min) + ",\"im_max\":" + real(grid.im_max) +
            ",\"nx\":" + integer(grid.nx) + ",\"ny\":" + integer(grid.ny) + ",\"labels\":[";
        for (std::size_t i = 0; i < grid.labels.size(); ++i) {
            if (i) s += ",";
            s += integer(grid.labels[i]);
        }
        s += "],\"zeros\":[";
        for (std::size_t r = 0; r < grid.zeros.size(); ++r) {
            if (r) s += ",";
            s += "[" + real(grid.zeros[r].real()) + "," + real(grid.zeros[r].imag()) + "]";
        }
        s += "]}\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// verify: the identity suite
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline CheckResult check_zeta_oracle(bool quick) {
    const double pi = std::numbers::pi;
    double worst = 0.0;
    bool ok = true;
    const double e2 = std::abs(specfun::zeta({2.0, 0.0}).value - pi * pi / 6.0);
    const double e3 = std::abs(specfun::zeta({3.0, 0.0}).value - 1.2020569031595943);
    ok = ok && e2 <= 1e-12 && e3 <= 1e-12;
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> ure(1.5, 10.0), uim(-50.0, 50.0);
    const int n = quick ? 20 : 60;
    for (int i = 0; i < n; ++i) {
        const Complex z(ure(rng), uim(rng));
        const FuncValue a = specfun::zeta(z);
        const FuncValue b = specfun::zeta_direct(z, 20000);
        const double gap = std::abs(a.value - b.value);
        const double budget = a.abs_err + b.abs_err;
        worst = std::max(worst, gap - budget);
        ok = ok && gap <= budget;
    }
    return {"zeta_oracle", ok,
            "zeta(2) err " + real(e2) + ", zeta(3) err " + real(e3) + ", direct slack " +
                real(-worst)};
}

inline CheckResult check_g_routes(bool quick) {
    bool ok = true;
    double worst = 0.0;
    const double g1 = std::abs(gfun::g_integral({1.0, 0.0}).value.real() - std::numbers::ln2);
    const double g2 = std::abs(gfun::g_integral({2.0, 0.0}).value.real() -
                               std::numbers::pi * std::numbers::pi / 12.0);
    ok = ok && g1 <= 1e-9 && g2 <= 1e-9;
    std::mt19937 rng(20240902);
    std::uniform_real_distribution<double> ure(0.1, 3.0), uim(-30.0, 30.0);
    const int n = quick ? 10 : 40;
    for (int i = 0; i < n; ++i) {
        const Complex z(ure(rng), uim(rng));
        const double gap = std::abs(gfun::g_integral(z).value - gfun::g_identity(z).value);
        worst = std::max(worst, gap);
        ok = ok && gap <= 1e-7;
    }
    return {"g_route_agreement", ok, "max |integral - identity| = " + real(worst)};
}

inline CheckResult check_fourier_relation(bool quick) {
    bool ok = true;
    double worst = 0.0;
    const std::vector<double> sigmas = quick ? std::vector<double>{0.75, 1.5}
                                             : std::vector<double>{0.55, 0.75, 1.0, 1.5, 2.0};
    const int stride = quick ? 6 : 2;
    for (double sigma : sigmas) {
        for (int t = 0; t <= 30; t += stride) {
            const double r = gfun::fourier_relation_residual({sigma}, double(t));
            worst = std::max(worst, r);
            ok = ok && r <= 1e-7;
        }
    }
    return {"fourier_relation", ok, "max residual = " + real(worst)};
}

inline CheckResult check_hermite_routes(bool quick) {
    bool ok = true;
    double worst = 0.0;
    const std::vector<double> sigmas = quick ? std::vector<double>{1.0}
                                             : std::vector<double>{0.75, 1.0};
    for (double sigma : sigmas) {
        const auto hc = hermite::expand({sigma}, 120);
        for (double t = -10.0; t <= 10.0; t += 1.0) {
            const double gap =
                std::abs(hermite::reconstruct_hat(hc, t) - gfun::v_hat({sigma}, t).value);
            worst = std::max(worst, gap);
            ok = ok && gap <= 5e-4;
        }
    }
    return {"hermite_three_route", ok, "max |expansion - quadrature| = " + real(worst)};
}

inline CheckResult check_flow_decay(bool quick) {
    bool ok = true;
    double worst = 0.0;
    const std::vector<Complex> starts = quick
                                            ? std::vector<Complex>{{0.6, 14.0}}
                                            : std::vector<Complex>{{0.6, 14.0}, {0.4, 21.0}, {0.7, 25.0}};
    flow::FlowConfig cfg;
    for (Complex z0 : starts) {
        const auto traj = flow::integrate(z0, cfg);
        worst = std::max(worst, traj.decay_residual_max);
        ok = ok && traj.outcome.kind == flow::Outcome::Kind::converged &&
             traj.decay_residual_max <= 10.0 * cfg.rel_tol * cfg.t_max;
    }
    return {"flow_decay", ok, "max decay residual = " + real(worst)};
}

inline int run_verify(bool quick, std::ostream& out) {
    const CheckResult results[] = {
        check_zeta_oracle(quick),   check_g_routes(quick),      check_fourier_relation(quick),
        check_hermite_routes(quick), check_flow_decay(quick),
    };
    bool all = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace detail

/// Parses argv (without the program name) and executes one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::Format;
    using detail::real;

    CLI::App app{"zeta/eta/gamma evaluators, the G-transform and its Fourier pair, "
                 "Hermite expansions, the continuous Newton flow, and line scans"};
    app.name("zetaflow");
    app.require_subcommand(1);

    struct {
        double re = 0.0, im = 0.0, tol = 1e-13;
        detail::CommonOpts common;
    } zeta_o, gamma_o, gfun_o;
    for (auto [name, desc, o] :
         {std::tuple{"zeta", "Riemann zeta via the eta form", &zeta_o},
          std::tuple{"gamma", "Gamma via the Lanczos fit", &gamma_o},
          std::tuple{"gfun", "G(z) = eta(z) * Gamma(z)", &gfun_o}}) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--re", o->re, "Re z")->required();
        sub->add_option("--im", o->im, "Im z")->required();
        sub->add_option("--tol", o->tol, "target absolute error");
        detail::add_common(sub, o->common);
    }

    struct {
        double sigma = 1.0, t = 0.0, t_end = 0.0, step = 0.1;
        bool has_end = false;
        detail::CommonOpts common;
    } vhat_o;
    {
        auto* sub = app.add_subcommand("vhat", "Fourier transform of V_sigma at t (or a t-range)");
        sub->add_option("--sigma", vhat_o.sigma, "sigma > 0")->required();
        sub->add_option("--t", vhat_o.t, "t (or range start)")->required();
        auto* e = sub->add_option("--t-end", vhat_o.t_end, "range end");
        sub->add_option("--step", vhat_o.step, "range step");
        sub->callback([&vhat_o, e] { vhat_o.has_end = e->count() > 0; });
        detail::add_common(sub, vhat_o.common);
    }

    struct {
        double sigma = 1.0;
        long order = 120;
        double eval_x = 0.0, eval_t = 0.0;
        bool has_x = false, has_t = false;
        detail::CommonOpts common;
    } herm_o;
    {
        auto* sub = app.add_subcommand("hermite", "Hermite expansion of V_sigma");
        sub->add_option("--sigma", herm_o.sigma, "sigma in [0.3, 3]")->required();
        sub->add_option("--order", herm_o.order, "truncation order N <= 200")->required();
        auto* ox = sub->add_option("--eval-x", herm_o.eval_x, "reconstruct V_sigma at x");
        auto* ot = sub->add_option("--eval-t", herm_o.eval_t, "reconstruct Vhat_sigma at t");
        ox->excludes(ot);
        sub->callback([&herm_o, ox, ot] {
            herm_o.has_x = ox->count() > 0;
            herm_o.has_t = ot->count() > 0;
        });
        detail::add_common(sub, herm_o.common);
    }

    struct {
        double re = 0.0, im = 0.0, t_max = 60.0, rel_tol = 1e-9;
        detail::CommonOpts common;
    } flow_o;
    {
        auto* sub = app.add_subcommand("flow", "integrate dz/dt = -zeta/zeta' from a start point");
        sub->add_option("--re", flow_o.re, "Re z0")->required();
        sub->add_option("--im", flow_o.im, "Im z0")->required();
        sub->add_option("--t-max", flow_o.t_max, "flow-time budget");
        sub->add_option("--rel-tol", flow_o.rel_tol, "step controller tolerance");
        detail::add_common(sub, flow_o.common);
    }

    struct {
        double re_min = 0.05, re_max = 0.95, im_min = 10.0, im_max = 30.0, t_max = 60.0;
        long nx = 100, ny = 100;
        detail::CommonOpts common;
    } basin_o;
    {
        auto* sub = app.add_subcommand("basin", "label a lattice of starts by limiting zero");
        sub->add_option("--re-min", basin_o.re_min)->required();
        sub->add_option("--re-max", basin_o.re_max)->required();
        sub->add_option("--im-min", basin_o.im_min)->required();
        sub->add_option("--im-max", basin_o.im_max)->required();
        sub->add_option("--nx", basin_o.nx)->required();
        sub->add_option("--ny", basin_o.ny)->required();
        sub->add_option("--t-max", basin_o.t_max, "flow-time budget per cell");
        detail::add_common(sub, basin_o.common);
    }

    struct {
        double sigma = 0.5, t_min = 0.0, t_max = 50.0, step = 0.01;
        detail::CommonOpts common;
    } scan_o;
    {
        auto* sub = app.add_subcommand("scan", "scan |G(sigma + i t)| for minima");
        sub->add_option("--sigma", scan_o.sigma)->required();
        sub->add_option("--t-min", scan_o.t_min)->required();
        sub->add_option("--t-max", scan_o.t_max)->required();
        sub->add_option("--step", scan_o.step, "grid step <= 0.05");
        detail::add_common(sub, scan_o.common);
    }

    bool verify_quick = false;
    {
        auto* sub = app.add_subcommand("verify", "run the identity suite, print PASS/FAIL lines");
        sub->add_flag("--quick", verify_quick, "smaller grids");
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("zetaflow");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand("zeta")) {
            const Complex z(zeta_o.re, zeta_o.im);
            const auto fv = specfun::zeta(z, {zeta_o.tol, 400});
            return detail::emit(zeta_o.common,
                                detail::point_output(detail::parse_format(zeta_o.common), "zeta",
                                                     z, fv),
                                out, err);
        }
        if (app.got_subcommand("gamma")) {
            const Complex z(gamma_o.re, gamma_o.im);
            const auto fv = specfun::gamma(z);
            return detail::emit(gamma_o.common,
                                detail::point_output(detail::parse_format(gamma_o.common), "gamma",
                                                     z, fv),
                                out, err);
        }
        if (app.got_subcommand("gfun")) {
            const Complex z(gfun_o.re, gfun_o.im);
            const auto fv = gfun::g_identity(z, {gfun_o.tol, 400});
            return detail::emit(gfun_o.common,
                                detail::point_output(detail::parse_format(gfun_o.common), "g", z,
                                                     fv),
                                out, err);
        }
        if (app.got_subcommand("vhat")) {
            const Format fmt = detail::parse_format(vhat_o.common);
            std::vector<double> ts;
            if (vhat_o.has_end) {
                if (!(vhat_o.step > 0.0)) throw DomainError("vhat: step must be > 0");
                for (double t = vhat_o.t; t <= vhat_o.t_end + 1e-12; t += vhat_o.step)
                    ts.push_back(t);
            } else {
                ts.push_back(vhat_o.t);
            }
            std::string s;
            if (fmt == Format::csv) s += "sigma,t,vhat_re,vhat_im,abs_err\n";
            else s += "[";
            bool first = true;
            for (double t : ts) {
                const auto fv = gfun::v_hat({vhat_o.sigma}, t);
                if (fmt == Format::csv) {
                    s += real(vhat_o.sigma) + "," + real(t) + "," + real(fv.value.real()) + "," +
                         real(fv.value.imag()) + "," + real(fv.abs_err) + "\n";
                } else {
                    if (!first) s += ",";
                    s += "{\"sigma\":" + real(vhat_o.sigma) + ",\"t\":" + real(t) +
                         ",\"vhat_re\":" + real(fv.value.real()) +
                         ",\"vhat_im\":" + real(fv.value.imag()) +
                         ",\"abs_err\":" + real(fv.abs_err) + "}";
                    first = false;
                }
            }
            if (fmt == Format::json) s += "]\n";
            return detail::emit(vhat_o.common, s, out, err);
        }
        if (app.got_subcommand("hermite")) {
            const Format fmt = detail::parse_format(herm_o.common);
            const auto hc = hermite::expand({herm_o.sigma}, herm_o.order);
            std::string s;
            if (herm_o.has_x) {
                const double v = hermite::reconstruct(hc, herm_o.eval_x);
                if (fmt == Format::csv) {
                    s = "sigma,order,x,value\n" + real(herm_o.sigma) + "," +
                        detail::integer(herm_o.order) + "," + real(herm_o.eval_x) + "," + real(v) +
                        "\n";
                } else {
                    s = "{\"sigma\":" + real(herm_o.sigma) +
                        ",\"order\":" + detail::integer(herm_o.order) +
                        ",\"x\":" + real(herm_o.eval_x) + ",\"value\":" + real(v) + "}\n";
                }
            } else if (herm_o.has_t) {
                const Complex v = hermite::reconstruct_hat(hc, herm_o.eval_t);
                if (fmt == Format::csv) {
                    s = "sigma,order,t,value_re,value_im\n" + real(herm_o.sigma) + "," +
                        detail::integer(herm_o.order) + "," + real(herm_o.eval_t) + "," +
                        real(v.real()) + "," + real(v.imag()) + "\n";
                } else {
                    s = "{\"sigma\":" + real(herm_o.sigma) +
                        ",\"order\":" + detail::integer(herm_o.order) +
                        ",\"t\":" + real(herm_o.eval_t) + ",\"value_re\":" + real(v.real()) +
                        ",\"value_im\":" + real(v.imag()) + "}\n";
                }
            } else {
                if (fmt == Format::csv) {
                    s = "n,coeff\n";
                    for (std::size_t n = 0; n < hc.coeffs.size(); ++n)
                        s += detail::integer(long(n)) + "," + real(hc.coeffs[n]) + "\n";
                } else {
                    s = "{\"sigma\":" + real(herm_o.sigma) +
                        ",\"order\":" + detail::integer(herm_o.order) + ",\"coeffs\":[";
                    for (std::size_t n = 0; n < hc.coeffs.size(); ++n) {
                        if (n) s += ",";
                        s += real(hc.coeffs[n]);
                    }
                    s += "]}\n";
                }
            }
            return detail::emit(herm_o.common, s, out, err);
        }
        if (app.got_subcommand("flow")) {
            const Format fmt = detail::parse_format(flow_o.common);
            flow::FlowConfig cfg;
            cfg.t_max = flow_o.t_max;
            cfg.rel_tol = flow_o.rel_tol;
            const auto traj = flow::integrate(Complex(flow_o.re, flow_o.im), cfg);
            std::string s;
            if (fmt == Format::csv) {
                s = "t,re,im,zeta_abs\n";
                for (const auto& smp : traj.samples)
                    s += real(smp.t) + "," + real(smp.z.real()) + "," + real(smp.z.imag()) + "," +
                         real(smp.zeta_abs) + "\n";
                s += std::string("# outcome,") + flow::to_string(traj.outcome.kind) + "," +
                     real(traj.outcome.point.real()) + "," + real(traj.outcome.point.imag()) + "\n";
                s += "# decay_residual_max," + real(traj.decay_residual_max) + "\n";
            } else {
                s = std::string("{\"outcome\":\"") + flow::to_string(traj.outcome.kind) + "\",\"" +
                    detail::outcome_point_key(traj.outcome.kind) + "\":[" +
                    real(traj.outcome.point.real()) + "," + real(traj.outcome.point.imag()) +
                    "],\"samples\":[";
                for (std::size_t i = 0; i < traj.samples.size(); ++i) {
                    const auto& smp = traj.samples[i];
                    if (i) s += ",";
                    s += "[" + real(smp.t) + "," + real(smp.z.real()) + "," + real(smp.z.imag()) +
                         "," + real(smp.zeta_abs) + "]";
                }
                s += "],\"decay_residual_max\":" + real(traj.decay_residual_max) + "}\n";
            }
            return detail::emit(flow_o.common, s, out, err);
        }
        if (app.got_subcommand("basin")) {
            const Format fmt = detail::parse_format(basin_o.common);
            flow::FlowConfig cfg;
            cfg.t_max = basin_o.t_max;
            const auto grid = flow::basin_grid(basin_o.re_min, basin_o.re_max, basin_o.im_min,
                                               basin_o.im_max, basin_o.nx, basin_o.ny, cfg);
            return detail::emit(basin_o.common, detail::basin_output(grid, fmt), out, err);
        }
        if (app.got_subcommand("scan")) {
            const Format fmt = detail::parse_format(scan_o.common);
            const auto rep = scan::scan_vhat(scan_o.sigma, scan_o.t_min, scan_o.t_max, scan_o.step);
            std::string s;
            if (fmt == Format::csv) {
                s = "t,value\n";
                for (const auto& lm : rep.local_minima)
                    s += real(lm.t) + "," + real(lm.value) + "\n";
                s += "# global_min," + real(rep.global_min_t) + "," + real(rep.global_min_value) +
                     "\n";
                s += "# positive_floor," + real(rep.positive_floor) + "\n";
            } else {
                s = "{\"sigma\":" + real(rep.sigma) + ",\"t_min\":" + real(rep.t_min) +
                    ",\"t_max\":" + real(rep.t_max) + ",\"step\":" + real(rep.step) +
                    ",\"global_min_t\":" + real(rep.global_min_t) +
                    ",\"global_min_value\":" + real(rep.global_min_value) +
                    ",\"positive_floor\":" + real(rep.positive_floor) + ",\"local_minima\":[";
                for (std::size_t i = 0; i < rep.local_minima.size(); ++i) {
                    if (i) s += ",";
                    s += "[" + real(rep.local_minima[i].t) + "," + real(rep.local_minima[i].value) +
                         "]";
                }
                s += "]}\n";
            }
            return detail::emit(scan_o.common, s, out, err);
        }
        if (app.got_subcommand("verify")) {
            return detail::run_verify(verify_quick, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace zetaflow::cli

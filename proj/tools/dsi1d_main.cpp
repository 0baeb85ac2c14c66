// dsi1d: batch front end over the library. Subcommands produce
// machine-readable tables (CSV with an embedded manifest comment, or JSON)
// and self-check the invariants their output is supposed to satisfy, so a
// run that prints a violated contract also exits nonzero.
//
// Exit codes: 0 success, 1 validation error, 2 verification failure,
// 3 numerical-range failure.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsi/angular.hpp"
#include "dsi/manifest.hpp"
#include "dsi/radial.hpp"
#include "dsi/sweep.hpp"
#include "dsi/tolerances.hpp"
#include "dsi/verify.hpp"

namespace {

using nlohmann::json;

struct Cell {
    std::string text;  // CSV rendering; empty means "not applicable"
    json value;        // JSON rendering (null when not applicable)
};

Cell num_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return {buf, json(v)};
}

Cell text_cell(const std::string& s) { return {s, json(s)}; }

Cell empty_cell() { return {"", json(nullptr)}; }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_payload(const Table& t) {
    std::string payload;
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) payload += ',';
            payload += row[i].text;
        }
        payload += '\n';
    }
    return payload;
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

void emit_table(const Table& t, dsi::RunManifest manifest,
                const std::string& format, const std::string& out_path) {
    const std::string payload = csv_payload(t);
    manifest.digest = dsi::fnv1a64(payload);
    std::string text;
    if (format == "csv") {
        text = "# " + manifest.to_json() + "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) text += ',';
            text += t.columns[i];
        }
        text += '\n';
        text += payload;
    } else {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json r = json::array();
            for (const auto& cell : row) r.push_back(cell.value);
            rows.push_back(std::move(r));
        }
        const json j = {{"manifest", json::parse(manifest.to_json())},
                        {"columns", t.columns},
                        {"rows", rows}};
        text = j.dump(2) + "\n";
    }
    write_text(text, out_path);
}

// Flags shared by every subcommand. The tolerance profile drives both the
// verify suites and the output self-checks of the data commands.
struct CommonOpts {
    std::string out_path;
    std::string format = "csv";
    std::string profile = "default";
    int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--out", o.out_path, "write to this file instead of stdout");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--tolerance-profile", o.profile,
                    "tolerance table for self-checks")
        ->check(CLI::IsMember({"default", "strict"}))
        ->capture_default_str();
    sub->add_option("--threads", o.threads,
                    "OpenMP threads for grid sweeps (<= 0: default)")
        ->capture_default_str();
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* region_label(int region) {
    switch (static_cast<dsi::PhaseRegion>(region)) {
        case dsi::PhaseRegion::Unbroken: return "unbroken";
        case dsi::PhaseRegion::D0Only: return "D0";
        case dsi::PhaseRegion::D1Only: return "D1";
        case dsi::PhaseRegion::D0AndD1: return "D0&D1";
    }
    throw std::logic_error("unreachable region label");
}

int cmd_phases(double g1_lo, double g1_hi, double g2_lo, double g2_hi,
               int resolution, const CommonOpts& opts) {
    const dsi::PhaseGridResult grid = dsi::phase_grid(
        g1_lo, g1_hi, g2_lo, g2_hi, resolution, opts.threads);

    Table t;
    t.columns = {"g1", "g2", "region", "lambda0", "lambda1", "nu0", "nu1"};
    const std::size_t total = grid.g1.size();
    t.rows.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        const auto opt_num = [](double v) {
            return std::isnan(v) ? empty_cell() : num_cell(v);
        };
        t.rows.push_back({num_cell(grid.g1[i]), num_cell(grid.g2[i]),
                          text_cell(region_label(grid.region[i])),
                          opt_num(grid.lambda0[i]), opt_num(grid.lambda1[i]),
                          opt_num(grid.nu0[i]), opt_num(grid.nu1[i])});
    }

    const std::string params =
        "g1_min=" + fmt_g(g1_lo) + " g1_max=" + fmt_g(g1_hi) +
        " g2_min=" + fmt_g(g2_lo) + " g2_max=" + fmt_g(g2_hi) +
        " resolution=" + std::to_string(resolution);
    emit_table(t, dsi::make_manifest("phases", params), opts.format,
               opts.out_path);
    return 0;
}

int cmd_angular(double g1, double g2, int count, const CommonOpts& opts) {
    const std::vector<dsi::AngularChannel> channels =
        dsi::angular_eigenvalues({g1, g2}, count);

    Table t;
    t.columns = {"channel", "lambda", "nu", "extension_window"};
    for (const auto& ch : channels)
        t.rows.push_back({num_cell(ch.channel_index), num_cell(ch.lambda),
                          ch.nu ? num_cell(*ch.nu) : empty_cell(),
                          num_cell(ch.in_extension_window ? 1 : 0)});

    const std::string params = "g1=" + fmt_g(g1) + " g2=" + fmt_g(g2) +
                               " count=" + std::to_string(count);
    emit_table(t, dsi::make_manifest("angular", params), opts.format,
               opts.out_path);
    return 0;
}

int cmd_spectrum(double nu, double kappa_star, int ell_min, int ell_max,
                 const CommonOpts& opts) {
    if (ell_min > ell_max)
        throw std::invalid_argument("ell range must satisfy min <= max");
    const dsi::ChannelParams p =
        dsi::ChannelParams::from_nu(3, nu, kappa_star);
    const dsi::ToleranceProfile& tol = dsi::tolerance_profile(opts.profile);

    Table t;
    t.columns = {"ell", "kappa", "energy", "norm_sq", "ratio", "status"};
    bool ratios_ok = true;
    const double target = std::exp(-2.0 * std::acos(-1.0) / nu);
    bool have_prev = false;
    double prev_energy = 0.0;
    for (int ell = ell_min; ell <= ell_max; ++ell) {
        std::vector<Cell> row{num_cell(ell)};
        try {
            const dsi::BoundState b = dsi::bound_state(p, ell);
            const double norm_sq = b.norm * b.norm;
            row.push_back(num_cell(b.kappa));
            row.push_back(num_cell(b.energy));
            row.push_back(std::isfinite(norm_sq) ? num_cell(norm_sq)
                                                 : empty_cell());
            if (have_prev && std::isfinite(b.energy / prev_energy)) {
                const double ratio = b.energy / prev_energy;
                row.push_back(num_cell(ratio));
                ratios_ok = ratios_ok &&
                            std::abs(ratio / target - 1.0) <=
                                tol.spectrum_ratio_rel;
            } else {
                row.push_back(empty_cell());
            }
            row.push_back(text_cell(std::isfinite(norm_sq) ? "ok"
                                                           : "overflow"));
            have_prev = true;
            prev_energy = b.energy;
        } catch (const std::range_error&) {
            row.push_back(empty_cell());
            row.push_back(empty_cell());
            row.push_back(empty_cell());
            row.push_back(empty_cell());
            row.push_back(text_cell("overflow"));
            have_prev = false;
        }
        t.rows.push_back(std::move(row));
    }

    const std::string params =
        "nu=" + fmt_g(nu) + " kappa_star=" + fmt_g(kappa_star) +
        " ell_min=" + std::to_string(ell_min) +
        " ell_max=" + std::to_string(ell_max) + " profile=" + opts.profile;
    emit_table(t, dsi::make_manifest("spectrum", params), opts.format,
               opts.out_path);
    if (!ratios_ok) {
        std::fprintf(stderr,
                     "spectrum: energy ratio column deviates from "
                     "e^{-2 pi/nu} beyond the %s profile bound\n",
                     opts.profile.c_str());
        return 2;
    }
    return 0;
}

int cmd_smatrix(double nu, double kappa_star, double decades, int points,
                const CommonOpts& opts) {
    const dsi::ChannelParams p =
        dsi::ChannelParams::from_nu(3, nu, kappa_star);
    const dsi::SmatrixTrace trace =
        dsi::smatrix_trace(p, decades, points, opts.threads);
    const dsi::ToleranceProfile& tol = dsi::tolerance_profile(opts.profile);

    Table t;
    t.columns = {"k", "re_s", "im_s", "arg_s", "abs_s"};
    double worst_unitarity = 0.0;
    for (std::size_t i = 0; i < trace.k.size(); ++i) {
        const std::complex<double> s = trace.s[i];
        worst_unitarity =
            std::max(worst_unitarity, std::abs(std::abs(s) - 1.0));
        t.rows.push_back({num_cell(trace.k[i]), num_cell(s.real()),
                          num_cell(s.imag()), num_cell(std::arg(s)),
                          num_cell(std::abs(s))});
    }

    const std::string params =
        "nu=" + fmt_g(nu) + " kappa_star=" + fmt_g(kappa_star) +
        " decades=" + fmt_g(decades) + " points=" + std::to_string(points) +
        " profile=" + opts.profile;
    emit_table(t, dsi::make_manifest("smatrix", params), opts.format,
               opts.out_path);
    if (worst_unitarity > tol.unitarity_abs) {
        std::fprintf(stderr,
                     "smatrix: |S| deviates from 1 by %.3e, beyond the %s "
                     "profile bound\n",
                     worst_unitarity, opts.profile.c_str());
        return 2;
    }
    return 0;
}

int cmd_wavefunction(double nu, double kappa_star, int ell, double k,
                     bool have_ell, bool have_k, double r_min, double r_max,
                     int points, const CommonOpts& opts) {
    if (have_ell == have_k)
        throw std::invalid_argument(
            "wavefunction needs exactly one of --ell (bound) or --k "
            "(scattering)");
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("need 0 < r_min < r_max");
    if (points < 2)
        throw std::invalid_argument("need at least 2 sample points");

    const dsi::ChannelParams p =
        dsi::ChannelParams::from_nu(3, nu, kappa_star);
    double kappa = 0.0;
    if (have_ell) kappa = dsi::bound_state(p, ell).kappa;

    Table t;
    t.columns = {"r", "re_R", "im_R"};
    const double log_step = std::log(r_max / r_min) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double r = r_min * std::exp(log_step * i);
        std::complex<double> v;
        if (have_ell)
            v = dsi::bound_radial_wavefunction(p, kappa, r);
        else
            v = dsi::scattering_radial_wavefunction(p, k, r);
        t.rows.push_back(
            {num_cell(r), num_cell(v.real()), num_cell(v.imag())});
    }

    std::string params = "nu=" + fmt_g(nu) +
                         " kappa_star=" + fmt_g(kappa_star);
    params += have_ell ? " ell=" + std::to_string(ell) : " k=" + fmt_g(k);
    params += " r_min=" + fmt_g(r_min) + " r_max=" + fmt_g(r_max) +
              " points=" + std::to_string(points);
    emit_table(t, dsi::make_manifest("wavefunction", params), opts.format,
               opts.out_path);
    return 0;
}

int cmd_verify(const std::vector<std::string>& suites, double inject_nu_scale,
               const CommonOpts& opts) {
    if (opts.format != "json")
        throw std::invalid_argument("verify reports are JSON only");
    dsi::VerifyOptions vopts;
    vopts.profile = opts.profile;
    vopts.inject_nu_scale = inject_nu_scale;
    const std::vector<dsi::SuiteResult> results =
        dsi::run_verify(suites, vopts);

    std::string payload;
    json jsuites = json::array();
    bool all_pass = true;
    int checks_failed = 0;
    for (const auto& suite : results) {
        json jchecks = json::array();
        for (const auto& c : suite.checks) {
            jchecks.push_back({{"name", c.name},
                               {"measured", c.measured},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
            payload += suite.suite + ',' + c.name + ',' + fmt_g(c.measured) +
                       ',' + fmt_g(c.tolerance) + ',' +
                       (c.pass ? "pass" : "fail") + '\n';
            if (!c.pass) ++checks_failed;
        }
        jsuites.push_back({{"suite", suite.suite},
                           {"pass", suite.pass},
                           {"checks", jchecks}});
        all_pass = all_pass && suite.pass;
    }

    std::string params = "profile=" + opts.profile;
    if (!suites.empty()) {
        params += " suites=";
        for (std::size_t i = 0; i < suites.size(); ++i)
            params += (i ? "," : "") + suites[i];
    }
    if (inject_nu_scale != 0.0)
        params += " inject_nu_scale=" + fmt_g(inject_nu_scale);
    dsi::RunManifest manifest = dsi::make_manifest("verify", params);
    manifest.digest = dsi::fnv1a64(payload);

    const json report = {{"manifest", json::parse(manifest.to_json())},
                         {"profile", opts.profile},
                         {"pass", all_pass},
                         {"suites", jsuites}};
    write_text(report.dump(2) + "\n", opts.out_path);
    if (!all_pass) {
        std::fprintf(stderr, "verify: %d check(s) failed\n", checks_failed);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact spectra, S-matrix traces, wavefunctions, and the "
        "scale-invariance phase diagram of 1D contact-interacting "
        "n-body systems (units hbar^2/(2m) = 1)"};
    app.require_subcommand(1);

    // phases
    double g1_lo = -1.0, g1_hi = 1.0, g2_lo = -1.0, g2_hi = 1.0;
    int resolution = 25;
    CommonOpts phases_opts;
    CLI::App* phases = app.add_subcommand(
        "phases", "phase-diagram grid over the coupling plane");
    phases->add_option("--g1-min", g1_lo)->capture_default_str();
    phases->add_option("--g1-max", g1_hi)->capture_default_str();
    phases->add_option("--g2-min", g2_lo)->capture_default_str();
    phases->add_option("--g2-max", g2_hi)->capture_default_str();
    phases->add_option("--resolution", resolution, "grid points per axis")
        ->capture_default_str();
    add_common(phases, phases_opts);

    // angular
    double ang_g1 = 0.0, ang_g2 = 0.0;
    int ang_count = 6;
    CommonOpts angular_opts;
    CLI::App* angular = app.add_subcommand(
        "angular", "angular eigenvalues for one coupling pair");
    angular->add_option("--g1", ang_g1, "coupling at theta = 0 (inf: Neumann)")
        ->required();
    angular->add_option("--g2", ang_g2, "coupling at theta = pi/3")
        ->required();
    angular->add_option("--count", ang_count, "number of eigenvalues")
        ->capture_default_str();
    add_common(angular, angular_opts);

    // spectrum
    double spec_nu = 0.0, spec_kappa = 1.0;
    int ell_min = 0, ell_max = 5;
    CommonOpts spectrum_opts;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "geometric bound-state tower of a subcritical channel");
    spectrum->add_option("--nu", spec_nu, "channel exponent")->required();
    spectrum->add_option("--kappa-star", spec_kappa, "tower anchor scale")
        ->capture_default_str();
    spectrum->add_option("--ell-min", ell_min)->capture_default_str();
    spectrum->add_option("--ell-max", ell_max)->capture_default_str();
    add_common(spectrum, spectrum_opts);

    // smatrix
    double sm_nu = 0.0, sm_kappa = 1.0, sm_decades = 8.0;
    int sm_points = 200;
    CommonOpts smatrix_opts;
    CLI::App* smatrix = app.add_subcommand(
        "smatrix", "log-periodic S-matrix trace over a momentum window");
    smatrix->add_option("--nu", sm_nu, "channel exponent")->required();
    smatrix->add_option("--kappa-star", sm_kappa, "tower anchor scale")
        ->capture_default_str();
    smatrix->add_option("--decades", sm_decades,
                        "total width of the k window in decades")
        ->capture_default_str();
    smatrix->add_option("--points", sm_points)->capture_default_str();
    add_common(smatrix, smatrix_opts);

    // wavefunction
    double wf_nu = 0.0, wf_kappa = 1.0, wf_k = 0.0;
    double wf_rmin = 1e-2, wf_rmax = 50.0;
    int wf_ell = 0, wf_points = 200;
    CommonOpts wf_opts;
    CLI::App* wavefunction = app.add_subcommand(
        "wavefunction", "radial wavefunction sampled on a log grid");
    wavefunction->add_option("--nu", wf_nu, "channel exponent")->required();
    wavefunction->add_option("--kappa-star", wf_kappa, "tower anchor scale")
        ->capture_default_str();
    CLI::Option* opt_ell = wavefunction->add_option(
        "--ell", wf_ell, "bound-state tower level");
    CLI::Option* opt_k = wavefunction->add_option(
        "--k", wf_k, "scattering momentum");
    wavefunction->add_option("--r-min", wf_rmin)->capture_default_str();
    wavefunction->add_option("--r-max", wf_rmax)->capture_default_str();
    wavefunction->add_option("--points", wf_points)->capture_default_str();
    add_common(wavefunction, wf_opts);

    // verify
    std::vector<std::string> verify_suites;
    double inject_nu_scale = 0.0;
    CommonOpts verify_opts;
    verify_opts.format = "json";
    CLI::App* verify = app.add_subcommand(
        "verify", "oracle-vs-closed-form comparison suites (JSON report)");
    verify->add_option("--suite", verify_suites,
                       "suite name (repeatable; default: all)");
    verify->add_option("--inject-nu-scale", inject_nu_scale,
                       "test hook: scale nu in the S-matrix evaluation");
    add_common(verify, verify_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (phases->parsed())
            return cmd_phases(g1_lo, g1_hi, g2_lo, g2_hi, resolution,
                              phases_opts);
        if (angular->parsed())
            return cmd_angular(ang_g1, ang_g2, ang_count, angular_opts);
        if (spectrum->parsed())
            return cmd_spectrum(spec_nu, spec_kappa, ell_min, ell_max,
                                spectrum_opts);
        if (smatrix->parsed())
            return cmd_smatrix(sm_nu, sm_kappa, sm_decades, sm_points,
                               smatrix_opts);
        if (wavefunction->parsed())
            return cmd_wavefunction(wf_nu, wf_kappa, wf_ell, wf_k,
                                    opt_ell->count() > 0, opt_k->count() > 0,
                                    wf_rmin, wf_rmax, wf_points, wf_opts);
        return cmd_verify(verify_suites, inject_nu_scale, verify_opts);
    } catch (const std::range_error& e) {
        std::fprintf(stderr, "numerical range error: %s\n", e.what());
        return 3;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "verification failure: %s\n", e.what());
        return 2;
    }
}

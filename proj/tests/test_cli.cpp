// End-to-end checks of the dsi1d executable (path passed as argv[1]):
// output shapes, manifest digests, reproducibility, exit codes, and the
// verify plumbing exposed through the library API.
#include <json.hpp>

#include "dsi/manifest.hpp"
#include "dsi/radial.hpp"
#include "dsi/tolerances.hpp"
#include "dsi/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using json = nlohmann::json;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("%-68s %s\n", what.c_str(), ok ? "ok" : "FAIL");
    if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string g_binary;

Run run(const std::string& args, const std::string& env = "") {
    const std::string out_f = "/tmp/dsi1d_test_out";
    const std::string err_f = "/tmp/dsi1d_test_err";
    const std::string cmd =
        env + (env.empty() ? "" : " ") + g_binary + " " + args + " >" +
        out_f + " 2>" + err_f;
    const int rc = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_f);
    r.err = slurp(err_f);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

json manifest_of_csv(const std::string& out) {
    const auto lines = lines_of(out);
    if (lines.empty() || lines[0].rfind("# ", 0) != 0) return json();
    return json::parse(lines[0].substr(2));
}

// The digest covers the data rows exactly as printed (after the header).
bool digest_matches(const std::string& out) {
    const auto lines = lines_of(out);
    if (lines.size() < 2) return false;
    std::string payload;
    for (std::size_t i = 2; i < lines.size(); ++i) payload += lines[i] + "\n";
    const json m = manifest_of_csv(out);
    const std::uint64_t want =
        std::strtoull(m["digest"].get<std::string>().c_str(), nullptr, 16);
    return dsi::fnv1a64(payload) == want;
}

constexpr const char* epoch_env = "SOURCE_DATE_EPOCH=1700000000";

}  // namespace

static void check_phases() {
    Run r = run("phases --resolution 5 --format csv", epoch_env);
    expect(r.code == 0, "phases exits 0");
    const auto lines = lines_of(r.out);
    expect(lines.size() == 2 + 25, "phases row count 5x5");
    expect(lines[1] == "g1,g2,region,lambda0,lambda1,nu0,nu1",
           "phases header row");
    const json m = manifest_of_csv(r.out);
    expect(m["command"] == "phases", "manifest names the command");
    expect(m["units"] == "hbar^2/(2m)=1", "manifest pins the unit system");
    expect(m["timestamp"] == "2023-11-14T22:13:20Z",
           "timestamp honors SOURCE_DATE_EPOCH");
    expect(m["digest"].get<std::string>().size() == 16,
           "digest is 16 hex digits");
    expect(digest_matches(r.out), "digest covers the payload rows");

    // Default grid [-1,1]^2: the corner row is (-1, -1), one bound channel.
    const auto corner = split_csv(lines[2]);
    expect(corner.size() == 7, "phases rows have 7 cells");
    expect(corner[0] == "-1" && corner[1] == "-1", "corner cell is (-1,-1)");
    expect(corner[2] == "D0", "corner region label");
    expect(std::fabs(std::stod(corner[3]) + 2.2943) < 1e-3,
           "corner lambda0 near -2.294");
    expect(corner[4].empty() && corner[6].empty(),
           "absent second channel leaves empty cells");

    // Reproducibility: bytes must not depend on the thread count.
    Run r1 = run("phases --resolution 7 --threads 1", epoch_env);
    Run r4 = run("phases --resolution 7 --threads 4", epoch_env);
    expect(r1.code == 0 && r4.code == 0 && r1.out == r4.out,
           "output is byte-stable across thread counts");

    Run rj = run("phases --resolution 3 --format json", epoch_env);
    expect(rj.code == 0, "phases json exits 0");
    const json j = json::parse(rj.out, nullptr, false);
    expect(!j.is_discarded(), "json output parses");
    expect(j["columns"].size() == 7 && j["rows"].size() == 9,
           "json columns and rows");
    // (1, 1) is repulsive: unbroken, all channel cells null
    const json& last = j["rows"][8];
    expect(last[2] == "unbroken" && last[3].is_null() && last[5].is_null(),
           "json uses null for absent values");

    const std::string out_path = "/tmp/dsi1d_test_file.csv";
    Run rf = run("phases --resolution 3 --out " + out_path, epoch_env);
    expect(rf.code == 0 && rf.out.empty(), "--out leaves stdout empty");
    expect(manifest_of_csv(slurp(out_path))["command"] == "phases",
           "--out writes the same document to the file");
    std::remove(out_path.c_str());
}

static void check_angular() {
    Run r = run("angular --g1 -1 --g2 -1 --count 3 --format json");
    expect(r.code == 0, "angular exits 0");
    const json j = json::parse(r.out);
    expect(j["columns"] ==
               json::array({"channel", "lambda", "nu", "extension_window"}),
           "angular column names");
    expect(j["rows"].size() == 3, "angular row count");
    expect(std::fabs(j["rows"][0][1].get<double>() + 2.2943) < 1e-3,
           "angular ground eigenvalue");
    expect(j["rows"][1][2].is_null(), "positive channel has null nu");

    Run bad = run("angular --g1 nope --g2 0");
    expect(bad.code == 1, "non-numeric coupling exits 1");
    Run missing = run("angular --g2 0");
    expect(missing.code == 1, "missing required option exits 1");
}

static void check_spectrum() {
    Run r = run("spectrum --nu 1 --ell-min 0 --ell-max 4 --format csv");
    expect(r.code == 0, "spectrum exits 0");
    const auto lines = lines_of(r.out);
    expect(lines[1] == "ell,kappa,energy,norm_sq,ratio,status",
           "spectrum header row");
    expect(lines.size() == 2 + 5, "spectrum row count");
    const auto row0 = split_csv(lines[2]);
    expect(row0[1] == "1" && row0[2] == "-1" && row0[4].empty() &&
               row0[5] == "ok",
           "anchor level: kappa 1, energy -1, no ratio");
    const double step = std::exp(-2.0 * std::numbers::pi);
    for (int i = 1; i < 5; ++i) {
        const auto row = split_csv(lines[2 + i]);
        expect(std::fabs(std::stod(row[4]) / step - 1.0) < 1e-13,
               "geometric ratio at row " + std::to_string(i));
    }

    // Deep tower: unrepresentable levels come back as overflow rows while
    // the representable stretch still satisfies the ratio self-check.
    Run deep = run("spectrum --nu 0.15 --ell-min -20 --ell-max 20");
    expect(deep.code == 0, "deep spectrum exits 0");
    const auto dl = lines_of(deep.out);
    int overflow = 0, ok = 0;
    bool empty_cells_ok = true;
    for (std::size_t i = 2; i < dl.size(); ++i) {
        const auto row = split_csv(dl[i]);
        if (row[5] == "overflow") {
            ++overflow;
            empty_cells_ok = empty_cells_ok && row[1].empty() &&
                             row[2].empty() && row[3].empty() &&
                             row[4].empty();
        } else if (row[5] == "ok") {
            ++ok;
        }
    }
    expect(overflow == 8 && ok == 33, "deep spectrum: 8 overflow, 33 ok rows");
    expect(empty_cells_ok, "overflow rows have empty numeric cells");
    // the first representable row after an overflow stretch has no ratio
    expect(split_csv(dl[6])[5] == "ok" && split_csv(dl[6])[4].empty(),
           "ratio restarts after an overflow row");

    Run bad = run("spectrum --nu 1 --ell-min 3 --ell-max 1");
    expect(bad.code == 1 && !bad.err.empty(), "inverted level range exits 1");
    Run badnu = run("spectrum --nu -1");
    expect(badnu.code == 1, "negative nu exits 1");
}

static void check_smatrix() {
    Run r = run(
        "smatrix --nu 1 --kappa-star 0.7 --decades 4 --points 101 "
        "--format csv");
    expect(r.code == 0, "smatrix exits 0");
    const auto lines = lines_of(r.out);
    expect(lines[1] == "k,re_s,im_s,arg_s,abs_s", "smatrix header row");
    expect(lines.size() == 2 + 101, "smatrix row count");
    const auto mid = split_csv(lines[2 + 50]);
    expect(std::stod(mid[0]) == 0.7, "midpoint momentum is kappa_star");
    expect(std::stod(mid[1]) == 0.0 && std::stod(mid[2]) == 1.0,
           "S(kappa_star) = i");
    expect(std::fabs(std::stod(mid[3]) - std::numbers::pi / 2) < 1e-15,
           "arg S at the anchor");
    bool unimodular = true;
    for (std::size_t i = 2; i < lines.size(); ++i)
        unimodular =
            unimodular && std::fabs(std::stod(split_csv(lines[i])[4]) - 1.0) <
                              1e-12;
    expect(unimodular, "abs_s column is 1 along the trace");

    Run bad = run("smatrix --nu 1 --points 1");
    expect(bad.code == 1, "single-point trace exits 1");
}

static void check_wavefunction() {
    const dsi::ChannelParams p = dsi::ChannelParams::from_nu(3, 1.0, 1.0);

    Run rb = run(
        "wavefunction --nu 1 --ell 0 --r-min 0.1 --r-max 10 --points 9 "
        "--format json");
    expect(rb.code == 0, "bound wavefunction exits 0");
    const json jb = json::parse(rb.out);
    expect(jb["columns"] == json::array({"r", "re_R", "im_R"}),
           "wavefunction column names");
    bool match = true;
    for (const auto& row : jb["rows"]) {
        const double r = row[0].get<double>();
        const double want = dsi::bound_radial_wavefunction(p, 1.0, r);
        match = match && std::fabs(row[1].get<double>() - want) <=
                             1e-15 * std::fabs(want);
        match = match && row[2].get<double>() == 0.0;
    }
    expect(match, "bound values match the library evaluation");

    Run rs = run(
        "wavefunction --nu 1 --k 0.9 --r-min 0.5 --r-max 40 --points 7 "
        "--format json");
    expect(rs.code == 0, "scattering wavefunction exits 0");
    const json js = json::parse(rs.out);
    match = true;
    for (const auto& row : js["rows"]) {
        const double r = row[0].get<double>();
        const std::complex<double> want =
            dsi::scattering_radial_wavefunction(p, 0.9, r);
        match = match &&
                std::abs(std::complex<double>(row[1].get<double>(),
                                              row[2].get<double>()) -
                         want) <= 1e-15 * std::abs(want);
    }
    expect(match, "scattering values match the library evaluation");

    expect(run("wavefunction --nu 1 --ell 0 --k 0.9").code == 1,
           "both mode flags exit 1");
    expect(run("wavefunction --nu 1").code == 1, "no mode flag exits 1");
    expect(run("wavefunction --nu 1 --ell 0 --r-min 0 --r-max 1").code == 1,
           "r_min = 0 exits 1");
    expect(run("wavefunction --nu 1 --ell 200").code == 3,
           "unrepresentable tower level exits 3");
}

static void check_verify_cli() {
    Run r = run("verify --suite special --suite angular", epoch_env);
    expect(r.code == 0, "verify (special, angular) exits 0");
    const json j = json::parse(r.out);
    expect(j["pass"] == true, "verify report passes");
    expect(j["profile"] == "default", "verify reports the profile");
    expect(j["suites"].size() == 2, "verify runs the requested suites");
    bool bounded = true;
    for (const auto& suite : j["suites"])
        for (const auto& c : suite["checks"])
            bounded = bounded && c["measured"].get<double>() <=
                                     c["tolerance"].get<double>();
    expect(bounded, "every reported measurement is within its bound");

    // The nu-scale hook must break log-periodicity but not unitarity:
    // that separation is what shows the checks measure different things.
    Run hook = run("verify --suite radial --inject-nu-scale 1e-3");
    expect(hook.code == 2, "injected nu distortion exits 2");
    const json hj = json::parse(hook.out);
    expect(hj["pass"] == false, "distorted report fails overall");
    bool uni_pass = false, per_fail = false;
    for (const auto& c : hj["suites"][0]["checks"]) {
        if (c["name"] == "unitarity") uni_pass = c["pass"] == true;
        if (c["name"] == "log-periodicity") per_fail = c["pass"] == false;
    }
    expect(uni_pass, "unitarity still passes under the hook");
    expect(per_fail, "log-periodicity fails under the hook");
    expect(!hook.err.empty(), "failed verify reports on stderr");

    expect(run("verify --format csv").code == 1, "verify rejects csv");
    expect(run("verify --suite bogus").code == 1, "unknown suite exits 1");
    expect(run("verify --tolerance-profile loose").code == 1,
           "unknown profile exits 1");
}

static void check_api() {
    const dsi::ToleranceProfile d = dsi::tolerance_profile("default");
    const dsi::ToleranceProfile s = dsi::tolerance_profile("strict");
    expect(d.name == "default" && s.name == "strict",
           "profiles carry their names");
    expect(s.special_vs_oracle_rel < d.special_vs_oracle_rel &&
               s.unitarity_abs < d.unitarity_abs &&
               s.normalization_abs < d.normalization_abs,
           "strict bounds are tighter than default");
    bool threw = false;
    try {
        dsi::tolerance_profile("loose");
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    expect(threw, "unknown profile name throws");

    const auto names = dsi::verify_suite_names();
    expect(names == std::vector<std::string>{"special", "angular", "radial",
                                             "orthogonality"},
           "suite names are stable");

    threw = false;
    try {
        dsi::run_verify({"nope"}, {});
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    expect(threw, "unknown suite name throws");

    dsi::VerifyOptions strict_opts;
    strict_opts.profile = "strict";
    const auto results = dsi::run_verify({"special"}, strict_opts);
    expect(results.size() == 1 && results[0].pass,
           "special suite passes the strict profile in-process");
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-dsi1d>\n", argv[0]);
        return 2;
    }
    g_binary = argv[1];

    check_phases();
    check_angular();
    check_spectrum();
    check_smatrix();
    check_wavefunction();
    check_verify_cli();
    check_api();

    if (failures == 0) {
        std::printf("ALL CLI CHECKS PASSED\n");
        return 0;
    }
    std::printf("%d CLI CHECK(S) FAILED\n", failures);
    return 1;
}

/*
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pncsec/analytic.hpp"
#include "pncsec/montecarlo.hpp"
#include "pncsec/params.hpp"
#include "pncsec/specfun.hpp"
#include "pncsec/sweep.hpp"

namespace {

using pncsec::SystemParams;

void err_json(const std::string& msg) {
    nlohmann::ordered_json o;
    o["error"] = msg;
    std::fputs((o.dump() + "\n").c_str(), stderr);
}

// Parameter flags shared by every subcommand that evaluates the system.
// Precedence: built-in defaults < --config file < explicit flags.
struct ParamFlags {
    std::string config_path;
    SystemParams cli{};
    double rho_db = 20.0;
    CLI::Option* o_config = nullptr;
    CLI::Option* o_lambda_sun = nullptr;
    CLI::Option* o_lambda_sr = nullptr;
    CLI::Option* o_lambda_run = nullptr;
    CLI::Option* o_lambda_ruf = nullptr;
    CLI::Option* o_lambda_unuf = nullptr;
    CLI::Option* o_a_s = nullptr;
    CLI::Option* o_a1_t2 = nullptr;
    CLI::Option* o_nu = nullptr;
    CLI::Option* o_rho_u = nullptr;
    CLI::Option* o_rho_db = nullptr;
};

void add_param_flags(CLI::App* sub, ParamFlags& f) {
    f.o_config = sub->add_option("--config", f.config_path,
                                 "Config file with key=value lines; '#' starts a comment");
    f.o_lambda_sun = sub->add_option("--lambda_sun", f.cli.lambda_sun,
                                     "Mean gain, source <-> near user link");
    f.o_lambda_sr =
        sub->add_option("--lambda_sr", f.cli.lambda_sr, "Mean gain, source <-> relay link");
    f.o_lambda_run = sub->add_option("--lambda_run", f.cli.lambda_run,
                                     "Mean gain, relay <-> near user link");
    f.o_lambda_ruf = sub->add_option("--lambda_ruf", f.cli.lambda_ruf,
                                     "Mean gain, relay <-> far user link");
    f.o_lambda_unuf = sub->add_option("--lambda_unuf", f.cli.lambda_unuf,
                                      "Mean gain, near user <-> far user link");
    f.o_a_s = sub->add_option("--a_s", f.cli.a_s,
                              "Slot-1 power share of the near-user signal, in (0, 0.5)");
    f.o_a1_t2 = sub->add_option("--a1_t2", f.cli.a1_t2,
                                "Slot-2 power share of the uplink signal, in (0, 1)");
    f.o_nu = sub->add_option("--nu", f.cli.nu, "Source-to-user transmit power ratio");
    f.o_rho_u = sub->add_option("--rho_u", f.cli.rho_u, "User transmit SNR (linear)");
    f.o_rho_db = sub->add_option("--rho_db", f.rho_db, "User transmit SNR (dB)");
    f.o_rho_db->excludes(f.o_rho_u);
    f.o_rho_u->excludes(f.o_rho_db);
}

SystemParams resolve_params(const ParamFlags& f) {
    SystemParams p;
    if (f.o_config->count()) pncsec::apply_config_file(p, f.config_path);
    if (f.o_lambda_sun->count()) p.lambda_sun = f.cli.lambda_sun;
    if (f.o_lambda_sr->count()) p.lambda_sr = f.cli.lambda_sr;
    if (f.o_lambda_run->count()) p.lambda_run = f.cli.lambda_run;
    if (f.o_lambda_ruf->count()) p.lambda_ruf = f.cli.lambda_ruf;
    if (f.o_lambda_unuf->count()) p.lambda_unuf = f.cli.lambda_unuf;
    if (f.o_a_s->count()) p.a_s = f.cli.a_s;
    if (f.o_a1_t2->count()) p.a1_t2 = f.cli.a1_t2;
    if (f.o_nu->count()) p.nu = f.cli.nu;
    if (f.o_rho_u->count()) p.rho_u = f.cli.rho_u;
    if (f.o_rho_db->count()) p.rho_u = pncsec::db_to_linear(f.rho_db);
    return p;
}

struct RunFlags {
    std::vector<std::string> schemes = {"proposed"};
    std::vector<std::string> methods = {"sim_exact", "analytic_lb"};
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 12345;
    int workers = 0;
    bool exact_omega0 = false;
    bool paper_literal = false;
    std::string out_format = "csv";
    std::string output_path = "-";
    std::string units = "nats";
};

void add_run_flags(CLI::App* sub, RunFlags& r) {
    sub->add_option("--schemes", r.schemes,
                    "Comma-separated: proposed, ben1, ben2 (default proposed)")
        ->delimiter(',');
    sub->add_option("--methods", r.methods,
                    "Comma-separated: sim_exact, sim_lowerbound, analytic_lb, asymptotic "
                    "(default sim_exact,analytic_lb)")
        ->delimiter(',');
    sub->add_option("--n", r.n, "Monte Carlo draws per grid point (default 1000000)");
    sub->add_option("--seed", r.seed, "Deterministic RNG seed (default 12345)");
    sub->add_option("--workers", r.workers,
                    "Worker threads; 0 = auto. Results are identical for any count");
    sub->add_flag("--exact-omega0", r.exact_omega0,
                  "Keep the residual slot-3 cancellation term instead of dropping it");
    sub->add_flag("--essr-asy-paper-literal", r.paper_literal,
                  "Omit the 1/3 slot prefactor on the asymptotic sum");
    sub->add_option("--out", r.out_format, "Output format (default csv)")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    sub->add_option("--output", r.output_path, "Output path; '-' = stdout (default)");
    sub->add_option("--units", r.units, "Rate units (default nats)")
        ->check(CLI::IsMember({"nats", "bits"}));
}

void parse_sweep_arg(const std::string& s, pncsec::SweepSpec& spec) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(':', pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    if (parts.size() != 4) {
        throw std::invalid_argument("--sweep expects VAR:START:STOP:STEPS, got '" + s + "'");
    }
    if (!pncsec::swept_var_from_string(parts[0], spec.swept) ||
        spec.swept == pncsec::SweptVar::none) {
        throw std::invalid_argument("unknown sweep variable '" + parts[0] +
                                    "' (rho_db, a_s, a1_t2, lambda_run, lambda_ruf, nu)");
    }
    try {
        std::size_t used = 0;
        spec.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        spec.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
        spec.steps = std::stoi(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
    } catch (const std::exception&) {
        throw std::invalid_argument("--sweep has a malformed number in '" + s + "'");
    }
}

pncsec::SweepSpec build_spec(const ParamFlags& pf, const RunFlags& rf) {
    pncsec::SweepSpec spec;
    spec.base = resolve_params(pf);
    spec.schemes.clear();
    for (const std::string& name : rf.schemes) {
        pncsec::Scheme s;
        if (!pncsec::scheme_from_string(name, s)) {
            throw std::invalid_argument("unknown scheme '" + name +
                                        "' (proposed, ben1, ben2)");
        }
        spec.schemes.push_back(s);
    }
    spec.methods.clear();
    for (const std::string& name : rf.methods) {
        pncsec::Method m;
        if (!pncsec::method_from_string(name, m)) {
            throw std::invalid_argument(
                "unknown method '" + name +
                "' (sim_exact, sim_lowerbound, analytic_lb, asymptotic)");
        }
        spec.methods.push_back(m);
    }
    spec.n_samples = rf.n;
    spec.seed = rf.seed;
    spec.workers = rf.workers;
    spec.exact_omega0 = rf.exact_omega0;
    spec.essr_asy_paper_literal = rf.paper_literal;
    return spec;
}

void emit_and_write(std::vector<pncsec::ResultRow> rows, const RunFlags& rf) {
    if (rf.units == "bits") pncsec::convert_rows_to_bits(rows);
    std::string text;
    if (rf.out_format == "csv") {
        text = pncsec::emit_csv(rows);
    } else if (rf.out_format == "json") {
        text = pncsec::emit_json(rows);
    } else {
        pncsec::SvgOptions so;
        so.y_label = (rf.units == "bits") ? "ESSR (bits)" : "ESSR (nats)";
        text = pncsec::emit_svg(rows, so);
    }
    if (rf.output_path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(rf.output_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + rf.output_path);
        out << text;
        if (!out) throw std::runtime_error("failed writing output file: " + rf.output_path);
    }
}

int run_validate(const ParamFlags& pf) {
    const SystemParams p = resolve_params(pf);
    const std::vector<std::string> errs = pncsec::validate(p);
    nlohmann::ordered_json o;
    o["valid"] = errs.empty();
    o["params"] = {{"lambda_sun", p.lambda_sun}, {"lambda_sr", p.lambda_sr},
                   {"lambda_run", p.lambda_run}, {"lambda_ruf", p.lambda_ruf},
                   {"lambda_unuf", p.lambda_unuf}, {"a_s", p.a_s},
                   {"a1_t2", p.a1_t2},           {"rho_u", p.rho_u},
                   {"nu", p.nu}};
    if (errs.empty()) {
        const pncsec::DerivedCoeffs c = pncsec::derive(p);
        o["derived"] = {{"g_sq", c.g_sq},       {"a1_t3", c.a1_t3},
                        {"omega1", c.omega1},   {"omega2", c.omega2},
                        {"beta_s", c.beta_s},   {"beta_u", c.beta_u},
                        {"rho_s", p.rho_s()}};
    } else {
        o["errors"] = errs;
    }
    std::fputs((o.dump(2) + "\n").c_str(), stdout);
    return errs.empty() ? 0 : 2;
}

int run_selftest() {
    using namespace pncsec;
    struct Check {
        const char* name;
        double got;
        double want;
        double tol;
    };
    const SystemParams defaults{};
    const DerivedCoeffs dc = derive(defaults);
    const std::vector<Check> checks = {
        {"exp_integral_ei(-1)", exp_integral_ei(-1.0), -0.21938393439552029, 1e-9},
        {"exp_integral_ei(-10)", exp_integral_ei(-10.0), -4.1569689296853246e-06, 1e-12},
        {"bessel_k1(1)", bessel_k1(1.0), 0.6019072301972346, 1e-9},
        {"bessel_k1(10)", bessel_k1(10.0), 1.8648773453825585e-05, 1e-12},
        {"phi1(0.1)", phi1(0.1), 0.09156333393978809, 1e-9},
        {"phi1(1)", phi1(1.0), 0.5963473623231941, 1e-9},
        {"phi1(10)", phi1(10.0), 2.014642544708452, 1e-9},
        {"phi3(1)", phi3(1.0), 0.6019072301972346, 1e-9},
        {"phi4(1,1)", phi4(1.0, 1.0), 0.43655612099206215, 1e-8},
        {"phi5(1,1)", phi5(1.0, 1.0), -0.6558780715202539, 1e-12},
        {"phi5_integral(1,1)", phi5_integral(1.0, 1.0), -0.6101864242881467, 1e-8},
        {"mean_ln1p_y(beta_u@defaults)", mean_ln1p_y(dc.beta_u), 2.071664421409869, 1e-8},
        {"derive(defaults).g_sq", dc.g_sq, 0.23696682464454977, 1e-12},
        {"derive(defaults).omega1", dc.omega1, 5.0 / 7.0, 1e-12},
        {"derive(defaults).omega2", dc.omega2, 1.25, 1e-12},
    };
    int failures = 0;
    for (const Check& c : checks) {
        const double dev = std::fabs(c.got - c.want);
        const bool ok = dev <= c.tol;
        if (!ok) ++failures;
        std::printf("%s %s: got=%.17g want=%.17g |dev|=%.3g tol=%.1g\n",
                    ok ? "PASS" : "FAIL", c.name, c.got, c.want, dev, c.tol);
    }
    std::printf("\nphi5 closed form vs defining integral:\n");
    std::printf("a,b,closed_form,integral,abs_dev,rel_dev\n");
    for (const Phi5Deviation& row : phi5_deviation_table()) {
        std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.a, row.b, row.closed_form,
                    row.integral, row.abs_dev, row.rel_dev);
    }
    std::printf("\nselftest: %d of %zu checks failed\n", failures, checks.size());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy-rate evaluator for a three-slot network-coded relay scheme "
                 "with an untrusted amplifying relay and friendly jamming"};
    app.require_subcommand(1);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Evaluate rates over a one-dimensional parameter grid");
    ParamFlags sweep_params;
    RunFlags sweep_run;
    std::string sweep_arg = "rho_db:0:30:7";
    add_param_flags(sweep_cmd, sweep_params);
    add_run_flags(sweep_cmd, sweep_run);
    sweep_cmd->add_option("--sweep", sweep_arg,
                          "Grid as VAR:START:STOP:STEPS (default rho_db:0:30:7); VAR is "
                          "one of rho_db, a_s, a1_t2, lambda_run, lambda_ruf, nu");

    CLI::App* point_cmd =
        app.add_subcommand("point", "Evaluate rates at a single parameter point");
    ParamFlags point_params;
    RunFlags point_run;
    add_param_flags(point_cmd, point_params);
    add_run_flags(point_cmd, point_run);

    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "Check a parameter set and report derived coefficients as JSON");
    ParamFlags validate_params;
    add_param_flags(validate_cmd, validate_params);

    app.add_subcommand("selftest",
                       "Run built-in numeric spot checks and print the phi5 deviation table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) err_json(e.what());
        return app.exit(e);
    }

    try {
        if (sweep_cmd->parsed()) {
            pncsec::SweepSpec spec = build_spec(sweep_params, sweep_run);
            parse_sweep_arg(sweep_arg, spec);
            emit_and_write(pncsec::run_sweep(spec), sweep_run);
            return 0;
        }
        if (point_cmd->parsed()) {
            pncsec::SweepSpec spec = build_spec(point_params, point_run);
            spec.swept = pncsec::SweptVar::none;
            emit_and_write(pncsec::run_sweep(spec), point_run);
            return 0;
        }
        if (validate_cmd->parsed()) return run_validate(validate_params);
        return run_selftest();
    } catch (const std::invalid_argument& e) {
        err_json(e.what());
        return 2;
    } catch (const std::exception& e) {
        err_json(e.what());
        return 1;
    }
}

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

#include "pncsec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace pncsec {

std::string to_string(SweptVar v) {
    switch (v) {
        case SweptVar::rho_db: return "rho_db";
        case SweptVar::a_s: return "a_s";
        case SweptVar::a1_t2: return "a1_t2";
        case SweptVar::lambda_run: return "lambda_run";
        case SweptVar::lambda_ruf: return "lambda_ruf";
        case SweptVar::nu: return "nu";
        case SweptVar::none: return "none";
    }
    return "?";
}

bool swept_var_from_string(const std::string& name, SweptVar& out) {
    static const std::pair<const char*, SweptVar> table[] = {
        {"rho_db", SweptVar::rho_db},       {"a_s", SweptVar::a_s},
        {"a1_t2", SweptVar::a1_t2},         {"lambda_run", SweptVar::lambda_run},
        {"lambda_ruf", SweptVar::lambda_ruf}, {"nu", SweptVar::nu},
        {"none", SweptVar::none},
    };
    for (const auto& [key, var] : table) {
        if (name == key) {
            out = var;
            return true;
        }
    }
    return false;
}

namespace {

void apply_swept(SystemParams& p, SweptVar var, double v) {
    switch (var) {
        case SweptVar::rho_db: p.rho_u = db_to_linear(v); break;
        case SweptVar::a_s: p.a_s = v; break;
        case SweptVar::a1_t2: p.a1_t2 = v; break;
        case SweptVar::lambda_run: p.lambda_run = v; break;
        case SweptVar::lambda_ruf: p.lambda_ruf = v; break;
        case SweptVar::nu: p.nu = v; break;
        case SweptVar::none: break;
    }
}

std::vector<double> grid_values(const SweepSpec& spec) {
    if (spec.swept == SweptVar::none) return {0.0};
    std::vector<double> vs;
    vs.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        vs.push_back(spec.start +
                     (spec.stop - spec.start) * static_cast<double>(i) /
                         static_cast<double>(spec.steps - 1));
    }
    return vs;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::string> validate_sweep(const SweepSpec& spec) {
    std::vector<std::string> errs;
    if (spec.swept != SweptVar::none) {
        if (spec.steps < 2) errs.push_back("steps must be >= 2 for a swept variable");
        if (spec.start == spec.stop) errs.push_back("sweep range is empty (start == stop)");
    }
    if (spec.schemes.empty()) errs.push_back("at least one scheme is required");
    if (spec.methods.empty()) errs.push_back("at least one method is required");

    bool has_closed_form = false;
    bool has_sim = false;
    for (Method m : spec.methods) {
        if (m == Method::analytic_lb || m == Method::asymptotic) has_closed_form = true;
        if (m == Method::sim_exact || m == Method::sim_lowerbound) has_sim = true;
    }
    if (has_closed_form) {
        for (Scheme s : spec.schemes) {
            if (s != Scheme::proposed) {
                errs.push_back("closed-form methods (analytic_lb, asymptotic) are only "
                               "available for the proposed scheme");
                break;
            }
        }
    }
    if (has_sim && spec.n_samples < 2) {
        errs.push_back("n_samples must be >= 2 for simulation methods");
    }
    if (spec.workers < 0) errs.push_back("workers must be >= 0");

    if (spec.steps >= 2 || spec.swept == SweptVar::none) {
        const std::vector<double> vs = grid_values(spec);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            SystemParams p = spec.base;
            apply_swept(p, spec.swept, vs[i]);
            for (const std::string& msg : validate(p)) {
                errs.push_back("grid point " + std::to_string(i) + " (" +
                               to_string(spec.swept) + "=" + fmt_num(vs[i]) + "): " + msg);
            }
        }
    }
    return errs;
}

namespace {

ResultRow make_base_row(const SweepSpec& spec, Scheme s, Method m, double v,
                        const SystemParams& p) {
    ResultRow row;
    row.scheme = to_string(s);
    row.method = to_string(m);
    row.swept = to_string(spec.swept);
    row.swept_value = v;
    row.rho_db = linear_to_db(p.rho_u);
    return row;
}

ResultRow simulate_row(const SweepSpec& spec, Scheme s, Method m, double v,
                       const SystemParams& p) {
    ResultRow row = make_base_row(spec, s, m, v, p);
    McOptions opts;
    opts.n = spec.n_samples;
    opts.seed = spec.seed;
    opts.workers = spec.workers;
    opts.exact_omega0 = spec.exact_omega0;
    const EsrReport rep = (m == Method::sim_exact) ? estimate_exact(p, s, opts)
                                                   : estimate_lowerbound(p, s, opts);
    row.esr_x1 = rep.per_signal[0].value;
    row.esr_x2 = rep.per_signal[1].value;
    row.esr_x3 = rep.per_signal[2].value;
    row.esr_x4 = rep.per_signal[3].value;
    row.esr_x5 = rep.per_signal[4].value;
    row.essr = rep.essr.value;
    row.stderr_essr = rep.essr.std_error;
    std::vector<std::string> flags;
    if (spec.exact_omega0 && s == Scheme::proposed) flags.push_back("exact_omega0");
    row.flags = join(flags, ";");
    return row;
}

ResultRow analytic_row(const SweepSpec& spec, Method m, double v, const SystemParams& p) {
    ResultRow row = make_base_row(spec, Scheme::proposed, m, v, p);
    const AnalyticBreakdown b = essr_lb(p);
    row.esr_x1 = b.per_signal[0].esr;
    row.esr_x2 = b.per_signal[1].esr;
    row.esr_x3 = b.per_signal[2].esr;
    row.esr_x4 = b.per_signal[3].esr;
    row.esr_x5 = b.per_signal[4].esr;
    row.essr = b.essr_lb;
    row.stderr_essr = 0.0;
    row.flags = join(b.flags, ";");
    return row;
}

ResultRow asymptotic_row(const SweepSpec& spec, Method m, double v, const SystemParams& p) {
    ResultRow row = make_base_row(spec, Scheme::proposed, m, v, p);
    static const SignalId ids[4] = {SignalId::x1, SignalId::x2, SignalId::x3, SignalId::x4};
    static const char* names[4] = {"x1", "x2", "x3", "x4"};
    double* cols[4] = {&row.esr_x1, &row.esr_x2, &row.esr_x3, &row.esr_x4};
    std::vector<std::string> flags;
    double sum134 = 0.0;
    for (int j = 0; j < 4; ++j) {
        const AsymptoticEsr a = esr_asymptotic(ids[j], p, AsymptoticForm::dominant);
        *cols[j] = a.value;
        if (j != 1) sum134 += a.value;
        if (a.small_log_arg) flags.push_back(std::string("asy_small_log_arg_") + names[j]);
        if (a.pole_perturbed) flags.push_back(std::string("pole_") + names[j]);
    }
    row.esr_x5 = std::numeric_limits<double>::quiet_NaN();
    row.essr = spec.essr_asy_paper_literal ? sum134 : sum134 / 3.0;
    row.stderr_essr = 0.0;
    row.flags = join(flags, ";");
    return row;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    const std::vector<std::string> errs = validate_sweep(spec);
    if (!errs.empty()) {
        throw std::invalid_argument("invalid sweep: " + join(errs, "; "));
    }
    const std::vector<double> vs = grid_values(spec);
    std::vector<ResultRow> rows;
    rows.reserve(vs.size() * spec.schemes.size() * spec.methods.size());
    for (Scheme s : spec.schemes) {
        for (Method m : spec.methods) {
            for (double v : vs) {
                SystemParams p = spec.base;
                apply_swept(p, spec.swept, v);
                switch (m) {
                    case Method::sim_exact:
                    case Method::sim_lowerbound:
                        rows.push_back(simulate_row(spec, s, m, v, p));
                        break;
                    case Method::analytic_lb:
                        rows.push_back(analytic_row(spec, m, v, p));
                        break;
                    case Method::asymptotic:
                        rows.push_back(asymptotic_row(spec, m, v, p));
                        break;
                }
            }
        }
    }
    return rows;
}

void convert_rows_to_bits(std::vector<ResultRow>& rows) {
    constexpr double kInvLn2 = 1.4426950408889634;  // 1/ln 2
    for (ResultRow& r : rows) {
        r.esr_x1 *= kInvLn2;
        r.esr_x2 *= kInvLn2;
        r.esr_x3 *= kInvLn2;
        r.esr_x4 *= kInvLn2;
        r.esr_x5 *= kInvLn2;
        r.essr *= kInvLn2;
        r.stderr_essr *= kInvLn2;
    }
}

const char* const kCsvHeader =
    "scheme,method,swept,swept_value,rho_db,esr_x1,esr_x2,esr_x3,esr_x4,esr_x5,"
    "essr,stderr_essr,flags";

std::string emit_csv(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += r.scheme;
        out += ',';
        out += r.method;
        out += ',';
        out += r.swept;
        out += ',';
        out += fmt_num(r.swept_value);
        out += ',';
        out += fmt_num(r.rho_db);
        out += ',';
        out += fmt_num(r.esr_x1);
        out += ',';
        out += fmt_num(r.esr_x2);
        out += ',';
        out += fmt_num(r.esr_x3);
        out += ',';
        out += fmt_num(r.esr_x4);
        out += ',';
        out += fmt_num(r.esr_x5);
        out += ',';
        out += fmt_num(r.essr);
        out += ',';
        out += fmt_num(r.stderr_essr);
        out += ',';
        out += r.flags;
        out += '\n';
    }
    return out;
}

std::string emit_json(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit_json: no rows");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ResultRow& r : rows) {
        nlohmann::ordered_json o;
        o["scheme"] = r.scheme;
        o["method"] = r.method;
        o["swept"] = r.swept;
        o["swept_value"] = r.swept_value;
        o["rho_db"] = r.rho_db;
        o["esr_x1"] = r.esr_x1;
        o["esr_x2"] = r.esr_x2;
        o["esr_x3"] = r.esr_x3;
        o["esr_x4"] = r.esr_x4;
        o["esr_x5"] = r.esr_x5;  // NaN serializes as null
        o["essr"] = r.essr;
        o["stderr_essr"] = r.stderr_essr;
        o["flags"] = r.flags;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;  // (swept_value, essr)
};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string emit_svg(const std::vector<ResultRow>& rows, const SvgOptions& opts) {
    if (rows.empty()) throw std::invalid_argument("emit_svg: no rows");

    std::vector<Series> series;
    for (const ResultRow& r : rows) {
        if (!std::isfinite(r.essr)) continue;
        const std::string label = r.scheme + "/" + r.method;
        Series* s = nullptr;
        for (Series& cand : series) {
            if (cand.label == label) {
                s = &cand;
                break;
            }
        }
        if (!s) {
            series.push_back({label, {}});
            s = &series.back();
        }
        s->pts.emplace_back(r.swept_value, r.essr);
    }
    if (series.empty()) throw std::invalid_argument("emit_svg: no finite points");

    double xmin = series[0].pts[0].first, xmax = xmin;
    double ymin = series[0].pts[0].second, ymax = ymin;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double w = opts.width, h = opts.height;
    const double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
    const double pw = w - ml - mr, ph = h - mt - mb;
    const auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};
    constexpr int kPaletteSize = 8;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
        << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << " "
        << opts.height << "\">\n";
    svg << "  <rect width=\"" << opts.width << "\" height=\"" << opts.height
        << "\" fill=\"white\"/>\n";

    // axes
    svg << "  <line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n";
    for (int i = 0; i < 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        svg << "  <line x1=\"" << sx(fx) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(fx)
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << sx(fx) << "\" y=\"" << mt + ph + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(fx) << "</text>\n";
        svg << "  <line x1=\"" << ml - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml
            << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << ml - 8 << "\" y=\"" << sy(fy) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(fy) << "</text>\n";
    }
    svg << "  <text x=\"" << ml + pw / 2 << "\" y=\"" << h - 10
        << "\" font-size=\"13\" text-anchor=\"middle\">" << rows.front().swept
        << "</text>\n";
    svg << "  <text x=\"16\" y=\"" << mt + ph / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << opts.y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = palette[k % kPaletteSize];
        svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[k].pts.size(); ++i) {
            if (i) svg << ' ';
            svg << sx(series[k].pts[i].first) << ',' << sy(series[k].pts[i].second);
        }
        svg << "\"/>\n";
        // legend entry
        const double ly = mt + 14 + 16.0 * static_cast<double>(k);
        svg << "  <line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
            << ml + pw - 126 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "  <text x=\"" << ml + pw - 120 << "\" y=\"" << ly + 4
            << "\" font-size=\"11\">" << series[k].label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(line.substr(pos));
            break;
        }
        parts.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

double parse_num(const std::string& s, std::size_t line_no) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + s.size() || s.empty()) {
        throw std::invalid_argument("parse_csv: bad number '" + s + "' on line " +
                                    std::to_string(line_no));
    }
    return v;
}

}  // namespace

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::vector<std::string> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines[0] != kCsvHeader) {
        throw std::invalid_argument("parse_csv: missing or unexpected header");
    }
    std::vector<ResultRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> f = split(lines[i], ',');
        if (f.size() != 13) {
            throw std::invalid_argument("parse_csv: expected 13 fields on line " +
                                        std::to_string(i + 1) + ", got " +
                                        std::to_string(f.size()));
        }
        ResultRow r;
        r.scheme = f[0];
        r.method = f[1];
        r.swept = f[2];
        r.swept_value = parse_num(f[3], i + 1);
        r.rho_db = parse_num(f[4], i + 1);
        r.esr_x1 = parse_num(f[5], i + 1);
        r.esr_x2 = parse_num(f[6], i + 1);
        r.esr_x3 = parse_num(f[7], i + 1);
        r.esr_x4 = parse_num(f[8], i + 1);
        r.esr_x5 = parse_num(f[9], i + 1);
        r.essr = parse_num(f[10], i + 1);
        r.stderr_essr = parse_num(f[11], i + 1);
        r.flags = f[12];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace pncsec

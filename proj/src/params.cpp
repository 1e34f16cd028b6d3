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

#include "pncsec/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pncsec {

std::vector<std::string> validate(const SystemParams& p) {
    std::vector<std::string> errs;
    auto positive = [&errs](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            errs.push_back(std::string(name) + " must be strictly positive and finite");
        }
    };
    positive(p.lambda_sun, "lambda_sun");
    positive(p.lambda_sr, "lambda_sr");
    positive(p.lambda_run, "lambda_run");
    positive(p.lambda_ruf, "lambda_ruf");
    positive(p.lambda_unuf, "lambda_unuf");
    positive(p.rho_u, "rho_u");
    positive(p.nu, "nu");
    if (!(p.a_s > 0.0 && p.a_s < 0.5)) {
        errs.push_back("a_s must lie in (0, 0.5) so the x2 share exceeds 1/2");
    }
    if (!(p.a1_t2 > 0.0 && p.a1_t2 < 1.0)) {
        errs.push_back("a1_t2 must lie in (0, 1)");
    }
    if (!(p.lambda_sr < p.lambda_sun)) {
        errs.push_back("lambda_sr must be smaller than lambda_sun (near user decodes first)");
    }
    if (!(p.lambda_run <= p.lambda_unuf)) {
        errs.push_back(
            "lambda_run must not exceed lambda_unuf (keeps the slot-3 "
            "cancellation coefficient below 1)");
    }
    return errs;
}

void require_valid(const SystemParams& p) {
    const auto errs = validate(p);
    if (errs.empty()) return;
    std::string joined = "invalid params:";
    for (const auto& e : errs) joined += " [" + e + "]";
    throw std::invalid_argument(joined);
}

DerivedCoeffs derive(const SystemParams& p) {
    require_valid(p);
    DerivedCoeffs c;
    c.g_sq = p.rho_u / (p.rho_s() * p.lambda_sr + 2.0 * p.rho_u * p.lambda_ruf +
                        p.rho_u * p.lambda_run + 2.0);
    c.a1_t3 = c.g_sq * p.a1_t2 * p.lambda_run * p.lambda_ruf / p.lambda_unuf;
    c.omega1 = p.rho_u * p.lambda_ruf / (p.rho_s() * p.lambda_sr);
    c.omega2 = p.lambda_ruf / p.lambda_run;
    c.beta_s = c.g_sq * p.rho_s() * p.lambda_sr * p.lambda_ruf / 4.0;
    c.beta_u = c.beta_s / p.nu;
    return c;
}

Ben1Coeffs derive_ben1(const SystemParams& p) {
    require_valid(p);
    Ben1Coeffs c;
    c.g1_sq = p.rho_u / (p.rho_s() * p.lambda_sr + p.rho_u * p.lambda_ruf + 1.0);
    c.g2_sq = p.rho_u / (p.rho_u * p.lambda_run + p.rho_u * p.lambda_ruf + 1.0);
    return c;
}

Ben2Coeffs derive_ben2(const SystemParams& p) {
    require_valid(p);
    Ben2Coeffs c;
    c.gb_sq = p.rho_u / (p.rho_s() * p.lambda_sr + p.rho_u * p.lambda_run +
                         p.rho_u * p.lambda_ruf + 2.0);
    return c;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace {

void set_field(SystemParams& p, const std::string& key, double value, int line_no) {
    if (key == "lambda_sun") p.lambda_sun = value;
    else if (key == "lambda_sr") p.lambda_sr = value;
    else if (key == "lambda_run") p.lambda_run = value;
    else if (key == "lambda_ruf") p.lambda_ruf = value;
    else if (key == "lambda_unuf") p.lambda_unuf = value;
    else if (key == "a_s") p.a_s = value;
    else if (key == "a1_t2") p.a1_t2 = value;
    else if (key == "rho_u") p.rho_u = value;
    else if (key == "nu") p.nu = value;
    else {
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unknown key '" + key + "'");
    }
}

}  // namespace

void apply_config(SystemParams& p, std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(val);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != val.size() || val.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": value for '" + key + "' is not a number");
        }
        set_field(p, key, value, line_no);
    }
}

void apply_config_file(SystemParams& p, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    apply_config(p, in);
}

}  // namespace pncsec

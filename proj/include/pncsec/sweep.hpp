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

#ifndef PNCSEC_SWEEP_HPP
#define PNCSEC_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pncsec/analytic.hpp"
#include "pncsec/montecarlo.hpp"

namespace pncsec {

enum class SweptVar { rho_db, a_s, a1_t2, lambda_run, lambda_ruf, nu, none };

std::string to_string(SweptVar v);
bool swept_var_from_string(const std::string& name, SweptVar& out);

struct SweepSpec {
    SweptVar swept = SweptVar::rho_db;
    double start = 0.0;
    double stop = 30.0;
    int steps = 7;  // inclusive grid point count, >= 2 (ignored for none)
    SystemParams base{};
    std::vector<Scheme> schemes = {Scheme::proposed};
    std::vector<Method> methods = {Method::sim_exact, Method::analytic_lb};
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 12345;
    int workers = 0;
    bool exact_omega0 = false;
    bool essr_asy_paper_literal = false;
};

struct ResultRow {
    std::string scheme;
    std::string method;
    std::string swept;
    double swept_value = 0.0;
    double rho_db = 0.0;
    double esr_x1 = 0.0;
    double esr_x2 = 0.0;
    double esr_x3 = 0.0;
    double esr_x4 = 0.0;
    double esr_x5 = 0.0;  // NaN for asymptotic rows (no x5 asymptote)
    double essr = 0.0;
    double stderr_essr = 0.0;  // 0 for analytic/asymptotic rows
    std::string flags;         // semicolon-joined markers, may be empty
};

// One message per problem; empty means runnable.  Checks grid shape,
// scheme/method compatibility, and validity of every grid point's params.
std::vector<std::string> validate_sweep(const SweepSpec& spec);

// Rows ordered by (scheme, method, grid index).  Monte Carlo rows reuse the
// same channel positions at every grid point (common random numbers) and a
// per-scheme stream.  Throws std::invalid_argument if validate_sweep fails.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Multiplies every rate column (esr_*, essr, stderr_essr) by 1/ln 2.
void convert_rows_to_bits(std::vector<ResultRow>& rows);

// Emitters reject empty input with std::invalid_argument.  CSV: fixed
// header, '.' decimal separator, '\n' newlines, %.17g numbers (round-trip
// exact).  JSON: array of objects with the CSV's field names.  SVG: one
// polyline per (scheme, method) series over (swept_value, essr).
extern const char* const kCsvHeader;
std::string emit_csv(const std::vector<ResultRow>& rows);
std::string emit_json(const std::vector<ResultRow>& rows);

struct SvgOptions {
    int width = 860;
    int height = 540;
    std::string y_label = "ESSR (nats)";
};
std::string emit_svg(const std::vector<ResultRow>& rows, const SvgOptions& opts = {});

// Reference CSV parser for round-trip checks; throws on malformed input.
std::vector<ResultRow> parse_csv(const std::string& text);

}  // namespace pncsec

#endif  // PNCSEC_SWEEP_HPP

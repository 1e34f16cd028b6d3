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

#ifndef PNCSEC_PARAMS_HPP
#define PNCSEC_PARAMS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pncsec {

// Scenario inputs.  Average channel gains are per-link (links are
// reciprocal, so one lambda covers both directions).  Powers are linear
// SNRs with noise normalized to 1; rho_s is tied to rho_u by nu.
struct SystemParams {
    double lambda_sun = 1.0;   // S <-> U_N
    double lambda_sr = 0.7;    // S <-> R
    double lambda_run = 0.8;   // R <-> U_N
    double lambda_ruf = 1.0;   // R <-> U_F
    double lambda_unuf = 0.8;  // U_N <-> U_F
    double a_s = 0.2;          // downlink power split for x1, in (0, 0.5)
    double a1_t2 = 0.5;        // slot-2 power split for x3, in (0, 1)
    double rho_u = 100.0;      // user-side SNR (linear)
    double nu = 2.0;           // rho_s = nu * rho_u

    double rho_s() const { return nu * rho_u; }
    double a_s_bar() const { return 1.0 - a_s; }
    double a1_t2_bar() const { return 1.0 - a1_t2; }
};

// Returns one message per violated constraint; empty means valid.
std::vector<std::string> validate(const SystemParams& p);

// Throws std::invalid_argument with all violations joined.
void require_valid(const SystemParams& p);

// Constants shared by the simulator and the closed forms; pure function of
// SystemParams.
struct DerivedCoeffs {
    double g_sq;    // fixed amplification gain G^2
    double a1_t3;   // slot-3 cancellation coefficient, in (0, 1)
    double omega1;  // rho_u lambda_ruf / (rho_s lambda_sr)
    double omega2;  // lambda_ruf / lambda_run
    double beta_s;  // G^2 rho_s lambda_sr lambda_ruf / 4
    double beta_u;  // beta_s / nu

    double a1_t3_bar() const { return 1.0 - a1_t3; }
};

DerivedCoeffs derive(const SystemParams& p);

// Per-phase fixed gains of the two benchmark schemes (see README for the
// full benchmark formula ledger).
struct Ben1Coeffs {
    double g1_sq;  // slot-2 relay gain
    double g2_sq;  // slot-4 relay gain
};
Ben1Coeffs derive_ben1(const SystemParams& p);

struct Ben2Coeffs {
    double gb_sq;  // single relay gain of the no-jamming scheme
};
Ben2Coeffs derive_ben2(const SystemParams& p);

double db_to_linear(double db);
double linear_to_db(double linear);

// Applies `key = value` lines (# comments, blank lines allowed) onto the
// given params.  Keys are exactly the SystemParams field names.  Unknown
// keys or malformed lines throw std::invalid_argument.
void apply_config(SystemParams& p, std::istream& in);
void apply_config_file(SystemParams& p, const std::string& path);

}  // namespace pncsec

#endif  // PNCSEC_PARAMS_HPP

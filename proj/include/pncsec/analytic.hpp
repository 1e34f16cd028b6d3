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

#ifndef PNCSEC_ANALYTIC_HPP
#define PNCSEC_ANALYTIC_HPP

#include <array>
#include <string>
#include <vector>

#include "pncsec/params.hpp"
#include "pncsec/quadrature.hpp"
#include "pncsec/sinr.hpp"

namespace pncsec {

// One closed-form ergodic-rate component.  esr is the clamped difference
// (x5: the softplus bound, never clamped).  pole_perturbed marks values
// obtained by the symmetric-perturbation rule near a removable pole.
struct EsrTerm {
    double legit = 0.0;
    double eve = 0.0;
    double esr = 0.0;
    bool pole_perturbed = false;
};

// Raw formula evaluations; no pole handling, so they may divide by ~0 when
// omega1/omega2 sit on a removable singularity.  Exposed so tests can feed
// doctored coefficients.
EsrTerm esr_x1_term(const SystemParams& p, const DerivedCoeffs& c);
EsrTerm esr_x2_term(const SystemParams& p, const DerivedCoeffs& c,
                    const QuadratureSettings& q = {});
EsrTerm esr_x3_term(const SystemParams& p, const DerivedCoeffs& c);
EsrTerm esr_x4_term(const SystemParams& p, const DerivedCoeffs& c,
                    const QuadratureSettings& q = {});
EsrTerm esr_x5_term(const SystemParams& p, const DerivedCoeffs& c,
                    const QuadratureSettings& q = {});

// Pole-guarded ergodic secrecy-rate lower bounds per signal (nats).
EsrTerm esr_x1_lb(const SystemParams& p);
EsrTerm esr_x2_lb(const SystemParams& p, const QuadratureSettings& q = {});
EsrTerm esr_x3_lb(const SystemParams& p);
EsrTerm esr_x4_lb(const SystemParams& p, const QuadratureSettings& q = {});
EsrTerm esr_x5_lb(const SystemParams& p, const QuadratureSettings& q = {});

struct AnalyticBreakdown {
    std::array<EsrTerm, 5> per_signal{};  // x1..x5
    double essr_lb = 0.0;                 // (1/3) * sum of per-signal esr
    double phi_x5 = 0.0;                  // the x5 bound's inner exponent
    std::vector<std::string> flags;       // e.g. "pole_x1"
};

AnalyticBreakdown essr_lb(const SystemParams& p, const QuadratureSettings& q = {});

// High-SNR asymptotes.  pre_limit keeps the constant terms that decay only
// through omega1/G^2 (converges at desk-scale SNR); dominant is the bare
// leading logarithm.  x2's asymptote is SNR-free and identical either way.
enum class AsymptoticForm { pre_limit, dominant };

struct AsymptoticEsr {
    double value = 0.0;
    bool small_log_arg = false;  // some log argument <= 1: outside the regime
    bool pole_perturbed = false;
};

AsymptoticEsr esr_asymptotic(SignalId signal, const SystemParams& p,
                             AsymptoticForm form = AsymptoticForm::pre_limit);

// (1/3) * [x1 + x3 + x4 dominant asymptotes]; paper_literal drops the 1/3
// prefactor (compatibility with the uplink-sum convention some texts use).
AsymptoticEsr essr_asymptotic(const SystemParams& p, bool paper_literal = false);

// Closed-form CDFs of selected per-draw quantities under the proposed
// scheme (used for distribution-level validation).  All are 0 at x <= 0 and
// reach 1; the first three saturate exactly at their finite SINR ceilings.
double cdf_eve_x1(const SystemParams& p, double x);
double cdf_legit_x2(const SystemParams& p, double x);
double cdf_eve_x3(const SystemParams& p, double x);
double cdf_eve_x4(const SystemParams& p, double x);
double cdf_legit_x5(const SystemParams& p, double x);
double cdf_y(const SystemParams& p, double y);

}  // namespace pncsec

#endif  // PNCSEC_ANALYTIC_HPP

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

#ifndef PNCSEC_SINR_HPP
#define PNCSEC_SINR_HPP

#include <array>

#include "pncsec/channel.hpp"
#include "pncsec/params.hpp"

namespace pncsec {

enum class SignalId { x1 = 0, x2 = 1, x3 = 2, x4 = 3, x5 = 4 };

// Instantaneous SINRs of one draw.  legit[j] is the intended receiver's
// SINR of signal x_{j+1}; eve[j] is the untrusted relay's.  x5 is relayed
// by R itself and has no eavesdropper term.
struct SinrProfile {
    std::array<double, 5> legit{};
    std::array<double, 4> eve{};
    // Residual cancellation mismatch of x3 at the far user (zero under the
    // default mean-value approximation; populated when exact_omega0 is set).
    double omega0_residual = 0.0;
    int slots = 3;
};

SinrProfile sinr_proposed(const ChannelDraw& d, const SystemParams& p,
                          const DerivedCoeffs& c, bool exact_omega0 = false);

// Four-slot benchmark: NOMA CDRT without network coding (two relaying
// phases with per-phase fixed gains), jamming retained.
SinrProfile sinr_ben1(const ChannelDraw& d, const SystemParams& p, const Ben1Coeffs& c);

// Three-slot benchmark: network coding retained, jamming removed
// (equivalently the proposed scheme with full slot-2 power on x3 and no
// jamming terms in any denominator).
SinrProfile sinr_ben2(const ChannelDraw& d, const SystemParams& p, const Ben2Coeffs& c);

// max(ln(1+gamma_legit) - ln(1+gamma_eve), 0), in nats.
double secrecy_rate(double gamma_legit, double gamma_eve);

}  // namespace pncsec

#endif  // PNCSEC_SINR_HPP

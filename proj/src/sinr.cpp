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

#include "pncsec/sinr.hpp"

#include <algorithm>
#include <cmath>

namespace pncsec {

SinrProfile sinr_proposed(const ChannelDraw& d, const SystemParams& p,
                          const DerivedCoeffs& c, bool exact_omega0) {
    const double rs = p.rho_s();
    const double ru = p.rho_u;
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    const double a1 = p.a1_t2;
    const double a1b = p.a1_t2_bar();
    const double gsq = c.g_sq;

    SinrProfile s;
    s.slots = 3;

    // Slot 1: S broadcasts the x1/x2 superposition, U_F jams the relay.
    s.legit[0] = as * rs * d.g_sun;
    s.eve[0] = as * rs * d.g_sr / (asb * rs * d.g_sr + ru * d.g_ruf + 1.0);
    s.eve[1] = asb * rs * d.g_sr / (as * rs * d.g_sr + ru * d.g_ruf + 1.0);

    // Slot 2: U_N transmits the x3/x4 superposition, U_F jams again.
    s.legit[2] = a1 * ru * d.g_sun;
    s.eve[2] = ru * a1 * d.g_unr / (ru * a1b * d.g_unr + ru * d.g_ruf + 1.0);
    s.eve[3] = ru * d.g_ruf / (ru * d.g_unr + 1.0);

    // Slot 3: R amplifies and forwards its two receptions combined.
    // U_N removes its own signals and the known jamming, leaving x5 against
    // amplified noise; U_F removes its jamming and decodes x2 then x4.
    s.legit[4] = c.a1_t3_bar() * ru * d.g_sun / (gsq * d.g_sr * (ru * d.g_ruf + 2.0) + 1.0);
    s.legit[3] = gsq * ru * d.g_sr * d.g_ruf / (2.0 * gsq * d.g_sr + 1.0);

    double om0_sq = 0.0;
    if (exact_omega0) {
        // Mismatch between the amplified slot-2 copy of x3 and the locally
        // reconstructed one when the cancellation coefficient is fixed to
        // its mean-form value.
        const double om0 = std::sqrt(gsq * d.g_ruf * d.g_unr * a1 * ru) -
                           std::sqrt(d.g_unuf * c.a1_t3 * ru);
        s.omega0_residual = om0;
        om0_sq = om0 * om0;
    }
    s.legit[1] = gsq * asb * rs * d.g_sr * d.g_ruf /
                 (gsq * d.g_ruf * (as * rs * d.g_sr + 2.0) + om0_sq + 1.0);
    return s;
}

SinrProfile sinr_ben1(const ChannelDraw& d, const SystemParams& p, const Ben1Coeffs& c) {
    const double rs = p.rho_s();
    const double ru = p.rho_u;
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    const double a1 = p.a1_t2;
    const double a1b = p.a1_t2_bar();

    SinrProfile s;
    s.slots = 4;

    // Slot 1: identical to the proposed scheme's downlink phase.
    s.legit[0] = as * rs * d.g_sun;
    s.eve[0] = as * rs * d.g_sr / (asb * rs * d.g_sr + ru * d.g_ruf + 1.0);
    s.eve[1] = asb * rs * d.g_sr / (as * rs * d.g_sr + ru * d.g_ruf + 1.0);

    // Slot 2: R forwards its slot-1 reception only (no network coding).
    s.legit[1] = c.g1_sq * asb * rs * d.g_sr * d.g_ruf /
                 (c.g1_sq * d.g_ruf * (as * rs * d.g_sr + 1.0) + 1.0);

    // Slot 3: uplink NOMA from U_N, jammed by U_F.
    s.legit[2] = a1 * ru * d.g_sun;
    s.eve[2] = ru * a1 * d.g_unr / (ru * a1b * d.g_unr + ru * d.g_ruf + 1.0);
    s.eve[3] = ru * d.g_ruf / (ru * d.g_unr + 1.0);

    // Slot 4: R forwards its slot-3 reception; S cancels the known uplink
    // jamming and its own prior transmissions.  x5 rides this hop and is
    // never observable by R in a decodable form.
    s.legit[4] = ru * d.g_sun / (c.g2_sq * d.g_sr * (ru * d.g_ruf + 1.0) + 1.0);
    s.legit[3] = c.g2_sq * ru * d.g_sr * d.g_ruf / (c.g2_sq * d.g_sr + 1.0);
    return s;
}

SinrProfile sinr_ben2(const ChannelDraw& d, const SystemParams& p, const Ben2Coeffs& c) {
    const double rs = p.rho_s();
    const double ru = p.rho_u;
    const double as = p.a_s;
    const double asb = p.a_s_bar();

    SinrProfile s;
    s.slots = 3;

    // No jamming anywhere: the relay's denominators lose their rho_u g_ruf
    // protection terms.
    s.legit[0] = as * rs * d.g_sun;
    s.eve[0] = as * rs * d.g_sr / (asb * rs * d.g_sr + 1.0);
    s.eve[1] = asb * rs * d.g_sr / (as * rs * d.g_sr + 1.0);

    // Slot 2: U_N sends x3/x4 with full power on x3's slot share.
    s.legit[2] = ru * d.g_sun;
    s.eve[2] = ru * d.g_unr / (ru * d.g_ruf + 1.0);
    s.eve[3] = ru * d.g_ruf / (ru * d.g_unr + 1.0);

    // Slot 3: combined forward with a single fixed gain.
    s.legit[1] = c.gb_sq * asb * rs * d.g_sr * d.g_ruf /
                 (c.gb_sq * d.g_ruf * (as * rs * d.g_sr + ru * d.g_unr + 2.0) + 1.0);
    s.legit[4] = ru * d.g_sun / (c.gb_sq * d.g_sr * (ru * d.g_ruf + 2.0) + 1.0);
    s.legit[3] = c.gb_sq * ru * d.g_sr * d.g_ruf / (2.0 * c.gb_sq * d.g_sr + 1.0);
    return s;
}

double secrecy_rate(double gamma_legit, double gamma_eve) {
    return std::max(std::log1p(gamma_legit) - std::log1p(gamma_eve), 0.0);
}

}  // namespace pncsec

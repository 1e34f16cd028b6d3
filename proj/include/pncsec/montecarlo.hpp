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

#ifndef PNCSEC_MONTECARLO_HPP
#define PNCSEC_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pncsec/sinr.hpp"

namespace pncsec {

enum class Scheme { proposed = 0, ben1 = 1, ben2 = 2 };
enum class Method { sim_exact, sim_lowerbound, analytic_lb, asymptotic };

std::string to_string(Scheme s);
std::string to_string(Method m);
bool scheme_from_string(const std::string& name, Scheme& out);
bool method_from_string(const std::string& name, Method& out);

// Each scheme samples from its own RNG stream so benchmark curves are
// statistically independent of the proposed scheme's.
std::uint32_t stream_index_for(Scheme s);
int slots_for(Scheme s);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct EsrReport {
    std::array<Estimate, 5> per_signal{};  // x1..x5, nats
    Estimate essr{};
    Method method = Method::sim_exact;
    Scheme scheme = Scheme::proposed;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    bool exact_omega0 = false;
    int slots = 3;
};

struct McOptions {
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 12345;
    int workers = 0;  // 0 = hardware concurrency (capped)
    bool exact_omega0 = false;
};

// Sample mean of per-draw clamped secrecy rates; x5 contributes its plain
// rate.  essr averages the per-draw prefactor-weighted sum, so its stderr
// reflects the full per-draw dispersion.
EsrReport estimate_exact(const SystemParams& p, Scheme scheme, const McOptions& opts);

// Jensen-style functional: per-signal expectations are estimated first and
// the clamp is applied to the averaged difference.  The reported essr value
// is the prefactor-weighted sum of clamped means; its stderr is the sample
// stderr of the unclamped per-draw aggregate.
EsrReport estimate_lowerbound(const SystemParams& p, Scheme scheme, const McOptions& opts);

// Raw per-draw samples of a named quantity under the proposed scheme.
// Known ids: legit.x1..legit.x5, eve.x1..eve.x4, Y (the amplified-power
// product G^2 g_sr (rho_u g_ruf + 2)), and the channel gains g_sun, g_sr,
// g_unr, g_ruf, g_unuf.  Unknown ids throw std::invalid_argument.
std::vector<double> sample_quantity(const std::string& quantity_id, const SystemParams& p,
                                    std::uint64_t n, std::uint64_t seed);

// Empirical CDF of the named quantity evaluated on a strictly increasing
// grid; returns (x, Fhat(x)) pairs.
std::vector<std::pair<double, double>> empirical_cdf(const std::string& quantity_id,
                                                     const SystemParams& p, std::uint64_t n,
                                                     std::uint64_t seed,
                                                     const std::vector<double>& grid);

}  // namespace pncsec

#endif  // PNCSEC_MONTECARLO_HPP

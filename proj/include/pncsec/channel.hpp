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

#ifndef PNCSEC_CHANNEL_HPP
#define PNCSEC_CHANNEL_HPP

#include <cstdint>

#include "pncsec/params.hpp"

namespace pncsec {

// Squared channel magnitudes of one fading block.  Rayleigh fading makes
// each an exponential variate with mean equal to the matching lambda.
struct ChannelDraw {
    double g_sun;
    double g_sr;
    double g_unr;
    double g_ruf;
    double g_unuf;
};

// (seed, stream_index) fully determines the sequence; the draw at global
// position k depends on nothing else.  Sampling is stateless, so any
// number of workers may cover disjoint position ranges concurrently.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint32_t stream_index = 0;
};

// Uniform variate in (0, 1), counter-based (Philox 4x32-10 under the hood).
// `lane` selects one of several independent substreams per position.
double uniform_draw(const RngStream& stream, std::uint64_t position, std::uint32_t lane);

// Exponential variate with the given mean, via inverse CDF.  Strictly
// positive for every input.
double exponential_draw(const RngStream& stream, std::uint64_t position,
                        std::uint32_t lane, double mean);

// One channel draw at the given position; field f uses lane f.
ChannelDraw sample(const SystemParams& p, const RngStream& stream, std::uint64_t position);

}  // namespace pncsec

#endif  // PNCSEC_CHANNEL_HPP

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

#include "pncsec/channel.hpp"

#include <array>
#include <cmath>

namespace pncsec {

namespace {

// Philox 4x32-10 (Salmon et al., SC 2011): a counter-based block cipher used
// as a stateless RNG.  Keyed by the seed; the counter carries (position,
// lane, stream), so any draw is addressable in O(1).
constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM4x32A) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM4x32B) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW32A;
            key[1] += kPhiloxW32B;
        }
        philox_round(ctr, key);
    }
    return ctr;
}

}  // namespace

double uniform_draw(const RngStream& stream, std::uint64_t position, std::uint32_t lane) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(position),
        static_cast<std::uint32_t>(position >> 32),
        lane,
        stream.stream_index,
    };
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(stream.seed),
        static_cast<std::uint32_t>(stream.seed >> 32),
    };
    const auto out = philox4x32_10(ctr, key);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(out[0]) << 32) | static_cast<std::uint64_t>(out[1]);
    // 53-bit mantissa, centered on the lattice so the result is never 0 or 1.
    const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    return u;
}

double exponential_draw(const RngStream& stream, std::uint64_t position,
                        std::uint32_t lane, double mean) {
    const double u = uniform_draw(stream, position, lane);
    return -mean * std::log(u);
}

ChannelDraw sample(const SystemParams& p, const RngStream& stream, std::uint64_t position) {
    ChannelDraw d;
    d.g_sun = exponential_draw(stream, position, 0, p.lambda_sun);
    d.g_sr = exponential_draw(stream, position, 1, p.lambda_sr);
    d.g_unr = exponential_draw(stream, position, 2, p.lambda_run);
    d.g_ruf = exponential_draw(stream, position, 3, p.lambda_ruf);
    d.g_unuf = exponential_draw(stream, position, 4, p.lambda_unuf);
    return d;
}

}  // namespace pncsec

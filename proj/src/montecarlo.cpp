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

#include "pncsec/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace pncsec {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::ben1: return "ben1";
        case Scheme::ben2: return "ben2";
    }
    return "?";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::sim_exact: return "sim_exact";
        case Method::sim_lowerbound: return "sim_lowerbound";
        case Method::analytic_lb: return "analytic_lb";
        case Method::asymptotic: return "asymptotic";
    }
    return "?";
}

bool scheme_from_string(const std::string& name, Scheme& out) {
    if (name == "proposed") out = Scheme::proposed;
    else if (name == "ben1") out = Scheme::ben1;
    else if (name == "ben2") out = Scheme::ben2;
    else return false;
    return true;
}

bool method_from_string(const std::string& name, Method& out) {
    if (name == "sim_exact") out = Method::sim_exact;
    else if (name == "sim_lowerbound") out = Method::sim_lowerbound;
    else if (name == "analytic_lb") out = Method::analytic_lb;
    else if (name == "asymptotic") out = Method::asymptotic;
    else return false;
    return true;
}

std::uint32_t stream_index_for(Scheme s) { return static_cast<std::uint32_t>(s); }

int slots_for(Scheme s) { return s == Scheme::ben1 ? 4 : 3; }

namespace {

// Draws are processed in fixed-size chunks and the per-chunk moments are
// merged in chunk-index order, so the result is bit-identical for any
// worker count.
constexpr std::uint64_t kChunk = 1 << 14;

struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    // Chan et al. parallel update.
    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double d = o.mean - mean;
        const std::uint64_t total = n + o.n;
        mean += d * static_cast<double>(o.n) / static_cast<double>(total);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                         static_cast<double>(total);
        n = total;
    }

    double std_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / (static_cast<double>(n) * static_cast<double>(n - 1)));
    }
};

struct ChunkStats {
    Welford sig[5];
    Welford agg;
};

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 16u));
}

SinrProfile profile_for(Scheme scheme, const ChannelDraw& d, const SystemParams& p,
                        const DerivedCoeffs& c, const Ben1Coeffs& b1,
                        const Ben2Coeffs& b2, bool exact_omega0) {
    switch (scheme) {
        case Scheme::ben1: return sinr_ben1(d, p, b1);
        case Scheme::ben2: return sinr_ben2(d, p, b2);
        case Scheme::proposed: break;
    }
    return sinr_proposed(d, p, c, exact_omega0);
}

// Shared accumulation pass.  `lowerbound` switches the per-signal statistic
// from the clamped rate to the raw difference, and the aggregate from the
// clamped sum to the raw sum (the clamp is then applied to the means).
EsrReport run_estimate(const SystemParams& p, Scheme scheme, const McOptions& opts,
                       bool lowerbound) {
    require_valid(p);
    if (opts.n < 1) throw std::invalid_argument("estimate: n must be >= 1");

    const DerivedCoeffs c = derive(p);
    const Ben1Coeffs b1 = derive_ben1(p);
    const Ben2Coeffs b2 = derive_ben2(p);
    const RngStream stream{opts.seed, stream_index_for(scheme)};
    const int slots = slots_for(scheme);
    const double pref = 1.0 / static_cast<double>(slots);

    const std::uint64_t n_chunks = (opts.n + kChunk - 1) / kChunk;
    std::vector<ChunkStats> chunks(n_chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::uint64_t ci = next.fetch_add(1);
            if (ci >= n_chunks) return;
            ChunkStats& st = chunks[ci];
            const std::uint64_t lo = ci * kChunk;
            const std::uint64_t hi = std::min(opts.n, lo + kChunk);
            for (std::uint64_t k = lo; k < hi; ++k) {
                const ChannelDraw d = sample(p, stream, k);
                const SinrProfile prof =
                    profile_for(scheme, d, p, c, b1, b2, opts.exact_omega0);
                double agg = 0.0;
                for (int j = 0; j < 4; ++j) {
                    const double legit = std::log1p(prof.legit[j]);
                    const double eve = std::log1p(prof.eve[j]);
                    const double v = lowerbound ? legit - eve
                                                : std::max(legit - eve, 0.0);
                    st.sig[j].add(v);
                    agg += v;
                }
                const double r5 = std::log1p(prof.legit[4]);
                st.sig[4].add(r5);
                agg += r5;
                st.agg.add(pref * agg);
            }
        }
    };

    const int n_workers =
        static_cast<int>(std::min<std::uint64_t>(resolve_workers(opts.workers), n_chunks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ChunkStats total;
    for (const auto& ch : chunks) {
        for (int j = 0; j < 5; ++j) total.sig[j].merge(ch.sig[j]);
        total.agg.merge(ch.agg);
    }

    EsrReport rep;
    rep.method = lowerbound ? Method::sim_lowerbound : Method::sim_exact;
    rep.scheme = scheme;
    rep.n_samples = opts.n;
    rep.seed = opts.seed;
    rep.exact_omega0 = opts.exact_omega0;
    rep.slots = slots;
    double clamped_sum = 0.0;
    for (int j = 0; j < 5; ++j) {
        double v = total.sig[j].mean;
        if (lowerbound && j < 4) v = std::max(v, 0.0);
        rep.per_signal[j] = Estimate{v, total.sig[j].std_error()};
        clamped_sum += v;
    }
    if (lowerbound) {
        // Value from clamp-after-averaging; dispersion from the raw
        // per-draw aggregate.
        rep.essr = Estimate{pref * clamped_sum, total.agg.std_error()};
    } else {
        rep.essr = Estimate{total.agg.mean, total.agg.std_error()};
    }
    return rep;
}

}  // namespace

EsrReport estimate_exact(const SystemParams& p, Scheme scheme, const McOptions& opts) {
    return run_estimate(p, scheme, opts, false);
}

EsrReport estimate_lowerbound(const SystemParams& p, Scheme scheme, const McOptions& opts) {
    return run_estimate(p, scheme, opts, true);
}

std::vector<double> sample_quantity(const std::string& quantity_id, const SystemParams& p,
                                    std::uint64_t n, std::uint64_t seed) {
    require_valid(p);
    const DerivedCoeffs c = derive(p);

    std::function<double(const ChannelDraw&)> extract;
    if (quantity_id == "g_sun") extract = [](const ChannelDraw& d) { return d.g_sun; };
    else if (quantity_id == "g_sr") extract = [](const ChannelDraw& d) { return d.g_sr; };
    else if (quantity_id == "g_unr") extract = [](const ChannelDraw& d) { return d.g_unr; };
    else if (quantity_id == "g_ruf") extract = [](const ChannelDraw& d) { return d.g_ruf; };
    else if (quantity_id == "g_unuf") extract = [](const ChannelDraw& d) { return d.g_unuf; };
    else if (quantity_id == "Y") {
        extract = [&p, &c](const ChannelDraw& d) {
            return c.g_sq * d.g_sr * (p.rho_u * d.g_ruf + 2.0);
        };
    } else {
        int idx = -1;
        bool legit = false;
        if (quantity_id.rfind("legit.x", 0) == 0 && quantity_id.size() == 8) {
            legit = true;
            idx = quantity_id[7] - '1';
        } else if (quantity_id.rfind("eve.x", 0) == 0 && quantity_id.size() == 6) {
            idx = quantity_id[5] - '1';
        }
        const int limit = legit ? 5 : 4;
        if (idx < 0 || idx >= limit) {
            throw std::invalid_argument("unknown quantity-id: " + quantity_id);
        }
        extract = [&p, &c, legit, idx](const ChannelDraw& d) {
            const SinrProfile prof = sinr_proposed(d, p, c, false);
            return legit ? prof.legit[idx] : prof.eve[idx];
        };
    }

    const RngStream stream{seed, stream_index_for(Scheme::proposed)};
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        out.push_back(extract(sample(p, stream, k)));
    }
    return out;
}

std::vector<std::pair<double, double>> empirical_cdf(const std::string& quantity_id,
                                                     const SystemParams& p, std::uint64_t n,
                                                     std::uint64_t seed,
                                                     const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("empirical_cdf: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("empirical_cdf: grid must be strictly increasing");
        }
    }
    std::vector<double> samples = sample_quantity(quantity_id, p, n, seed);
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const auto it = std::upper_bound(samples.begin(), samples.end(), x);
        out.emplace_back(x, static_cast<double>(it - samples.begin()) /
                                static_cast<double>(samples.size()));
    }
    return out;
}

}  // namespace pncsec

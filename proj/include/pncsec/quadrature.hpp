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

#ifndef PNCSEC_QUADRATURE_HPP
#define PNCSEC_QUADRATURE_HPP

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pncsec {

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int subdivisions = 0;
};

// Thrown when the error bound cannot be pushed under the tolerance within
// the subdivision budget.  Carries the best estimate so callers that only
// need a diagnostic can still report something.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}

    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

namespace detail {

// Gauss-Kronrod 7-15 node/weight table (positive half; nodes are symmetric).
// Even-indexed abscissae carry the embedded 7-point Gauss weights.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15KronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGk15GaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double lo, hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gk15_evaluate(F&& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);

    double kronrod = 0.0;
    double gauss = 0.0;
    double abs_integral = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGk15Nodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(mid);
        } else {
            fsum = f(mid - dx) + f(mid + dx);
        }
        kronrod += kGk15KronrodWeights[i] * fsum;
        abs_integral += kGk15KronrodWeights[i] * std::fabs(fsum);
        if (i % 2 == 1) gauss += kGk15GaussWeights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    abs_integral *= std::fabs(half);

    // QUADPACK-style error sharpening: the raw |K - G| difference is scaled
    // down when it is already small relative to the integrand magnitude.
    double err = std::fabs(kronrod - gauss);
    if (abs_integral > 0.0 && err > 0.0) {
        const double scale = std::pow(200.0 * err / abs_integral, 1.5);
        if (scale < 1.0) err = abs_integral * scale;
    }
    return Segment{lo, hi, kronrod, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration on a finite interval.  The segment with
// the largest error estimate is bisected until the global bound satisfies
// max(abs_tol, rel_tol * |value|) or the subdivision budget is exhausted.
template <typename F>
QuadratureResult integrate(F&& f, double lo, double hi,
                           const QuadratureSettings& settings = {}) {
    if (!(lo < hi)) throw std::domain_error("integrate: requires lo < hi");

    std::priority_queue<detail::Segment> queue;
    queue.push(detail::gk15_evaluate(f, lo, hi));

    double total_value = queue.top().value;
    double total_error = queue.top().error;
    if (!std::isfinite(total_value)) {
        throw QuadratureError("integrate: integrand not finite on the interval", 0.0,
                              total_error);
    }
    int subdivisions = 0;

    while (total_error > std::max(settings.abs_tol,
                                  settings.rel_tol * std::fabs(total_value))) {
        if (subdivisions >= settings.max_subdivisions) {
            throw QuadratureError("integrate: subdivision budget exhausted",
                                  total_value, total_error);
        }
        detail::Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Interval no longer splittable in double precision.
            throw QuadratureError("integrate: interval collapsed before convergence",
                                  total_value, total_error);
        }
        detail::Segment left = detail::gk15_evaluate(f, worst.lo, mid);
        detail::Segment right = detail::gk15_evaluate(f, mid, worst.hi);
        if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
            // A panel shrank onto a non-integrable point; the running sums
            // still hold the last finite partial estimate.
            throw QuadratureError("integrate: integrand not finite on the interval",
                                  total_value, total_error);
        }
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    return QuadratureResult{total_value, total_error, subdivisions};
}

// Integral over [0, inf) via the rational substitution x = t / (1 - t),
// dx = dt / (1 - t)^2, which maps to t in [0, 1).  Gauss-Kronrod nodes are
// interior, so neither endpoint is ever evaluated.
template <typename F>
QuadratureResult integrate_zero_to_inf(F&& f, const QuadratureSettings& settings = {}) {
    auto mapped = [&f](double t) {
        const double u = 1.0 - t;
        const double x = t / u;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;  // avoid 0 * huge at the far end
        return fx / (u * u);
    };
    return integrate(mapped, 0.0, 1.0, settings);
}

}  // namespace pncsec

#endif  // PNCSEC_QUADRATURE_HPP

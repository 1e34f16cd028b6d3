// Independent numeric oracles for the test suite: composite trapezoid rule
// with one Richardson refinement, a KS distance, and a Pearson correlation.
// Deliberately primitive and separate from the library's quadrature engine.
#ifndef PNCSEC_TESTS_ORACLE_HELPERS_HPP
#define PNCSEC_TESTS_ORACLE_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

struct TrapResult {
    double value = 0.0;
    double err_est = 0.0;
};

// Composite trapezoid at n and 2n panels, Richardson-extrapolated; err_est
// is the difference between the two underlying sums.
template <class F>
TrapResult trapezoid(F&& f, double lo, double hi, int n) {
    auto sum_for = [&](int m) {
        const double h = (hi - lo) / m;
        double s = 0.5 * (f(lo) + f(hi));
        for (int i = 1; i < m; ++i) s += f(lo + i * h);
        return s * h;
    };
    const double t1 = sum_for(n);
    const double t2 = sum_for(2 * n);
    return {(4.0 * t2 - t1) / 3.0, std::fabs(t2 - t1)};
}

inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 (static_cast<double>(i) + 1.0) / n - f));
    }
    return d;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double s2 = 0.0;
    for (double x : xs) s2 += (x - m) * (x - m);
    return {m, std::sqrt(s2 / (n * (n - 1.0)))};
}

}  // namespace oracle

#endif  // PNCSEC_TESTS_ORACLE_HELPERS_HPP

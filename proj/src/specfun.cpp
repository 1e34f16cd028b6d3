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

#include "pncsec/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pncsec {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Exponential integrals.
// ---------------------------------------------------------------------------

// Continued fraction for e^z E1(z), modified Lentz evaluation.  Reliable for
// z >= ~1; convergence slows as z -> 0.
double e1_scaled_cf(double z) {
    const double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) return h;
    }
    throw std::range_error("e1_scaled_cf: continued fraction failed to converge");
}

// Power series E1(z) = -C - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!),
// for 0 < z < ~1.5 (alternating terms stay small, no cancellation blowup).
double e1_series(double z) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -z / k;
        sum -= term / k;
        if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1.0)) break;
    }
    return -kEulerGamma - std::log(z) + sum;
}

}  // namespace

double exp_e1_scaled(double z) {
    if (!(z > 0.0)) throw std::domain_error("exp_e1_scaled: requires z > 0");
    if (z >= 1.5) return e1_scaled_cf(z);
    return std::exp(z) * e1_series(z);
}

double exp_integral_ei(double x) {
    if (x == 0.0) throw std::domain_error("exp_integral_ei: x must be nonzero");
    if (x > 709.5) throw std::range_error("exp_integral_ei: result overflows");
    if (x >= 40.0) {
        // Asymptotic series e^x/x * sum k!/x^k, truncated at its smallest
        // term; at x >= 40 that term is already below double precision.
        double sum = 1.0;
        double term = 1.0;
        for (int k = 1; k < 80; ++k) {
            const double next = term * k / x;
            if (next >= term) break;
            term = next;
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::exp(x) / x * sum;
    }
    if (x >= -1.0) {
        // Power series Ei(x) = C + ln|x| + sum x^k/(k k!).  For x in [-1, 0)
        // the terms alternate and shrink fast; for 0 < x < 40 all terms are
        // positive so there is no cancellation.
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k <= 200; ++k) {
            term *= x / k;
            sum += term / k;
            if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1.0) * k) break;
        }
        return kEulerGamma + std::log(std::fabs(x)) + sum;
    }
    // x < -1: Ei(x) = -E1(-x) = -e^x * [e^{-x'} E1-scaled](-x).
    return -std::exp(x) * e1_scaled_cf(-x);
}

// ---------------------------------------------------------------------------
// Modified Bessel function K1: Chebyshev fits (SLATEC-style), full double
// precision on the whole positive axis.
// ---------------------------------------------------------------------------

namespace {

// Chebyshev series evaluation (Clenshaw recurrence) on x in [-1, 1].
double chebyshev_eval(double x, const double* cs, int n) {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    const double twox = 2.0 * x;
    for (int i = n - 1; i >= 0; --i) {
        b2 = b1;
        b1 = b0;
        b0 = twox * b1 - b2 + cs[i];
    }
    return 0.5 * (b0 - b2);
}

const double kI1Series[11] = {
    -0.0019717132610998597316138503218149,
    0.40734887667546480608155393652014,
    0.034838994299959455866245037783787,
    0.0015453945563001236038598401058489,
    4.188852109837778412945883200412e-5,
    7.6490267648362114741959703966069e-7,
    1.0042493924741178689179808037238e-8,
    9.9322077919238106481371298054863e-11,
    7.6638017918447637275200171681349e-13,
    4.741418923816739498038809194816e-15,
    2.4041144040745181799863172032e-17,
};

const double kK1Series[11] = {
    0.025300227338947770532531120868533,
    -0.35315596077654487566723831691801,
    -0.12261118082265714823479067930042,
    -0.0069757238596398643501812920296083,
    -1.7302889575130520630176507368979e-4,
    -2.4334061415659682349600735030164e-6,
    -2.2133876307347258558315252545126e-8,
    -1.4114883926335277610958330212608e-10,
    -6.6669016941993290060853751264373e-13,
    -2.4274498505193659339263196864853e-15,
    -7.023863479386287597178379712e-18,
};

const double kK1Mid[18] = {
    0.27443134069738829695257666227266,
    0.07571989953199367817089237814929,
    -0.0014410515564754061229853116175625,
    6.6501169551257479394251385477036e-5,
    -4.3699847095201407660580845089167e-6,
    3.5402774997630526799417139008534e-7,
    -3.3111637792932920208982688245704e-8,
    3.4459775819010534532311499770992e-9,
    -3.8989323474754271048981937492758e-10,
    4.7208197504658356400947449339005e-11,
    -6.047835662875356234537359156289e-12,
    8.1284948748658747888193837985663e-13,
    -1.1386945747147891428923915951042e-13,
    1.654035840846228232597294820509e-14,
    -2.4809025677068848221516010440533e-15,
    3.8292378907024096948429227299157e-16,
    -6.0647341040012418187768210377386e-17,
    9.8324256232648616038194004650666e-18,
};

const double kK1Far[14] = {
    0.06379308343739001036600488534102,
    0.02832887813049720935835030284708,
    -2.475370673905250345414545566732e-4,
    5.771972451607248820470976625763e-6,
    -2.068939219536548302745533196552e-7,
    9.739983441381804180309213097887e-9,
    -5.585336140380624984688895511129e-10,
    3.732996634046185240221212854731e-11,
    -2.825051961023225445135065754928e-12,
    2.372019002484144173643496955486e-13,
    -2.176677387991753979268301667938e-14,
    2.157914161616032453939562689706e-15,
    -2.290196930718269275991551338154e-16,
    2.582885729823274961919939565226e-17,
};

// I1(x) for 0 <= x <= 3 (all K1 needs).
double bessel_i1_small(double x) {
    const double xsml = std::sqrt(std::numeric_limits<double>::epsilon() * 4.5);
    if (x <= xsml) return 0.5 * x;
    return x * (0.875 + chebyshev_eval(x * x / 4.5 - 1.0, kI1Series, 11));
}

}  // namespace

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: requires x > 0");
    if (x < 1e-305) throw std::range_error("bessel_k1: result overflows");
    if (x <= 2.0) {
        const double xsml = 2.0 * std::sqrt(std::numeric_limits<double>::epsilon());
        const double y = (x > xsml) ? x * x : 0.0;
        return std::log(0.5 * x) * bessel_i1_small(x) +
               (0.75 + chebyshev_eval(0.5 * y - 1.0, kK1Series, 11)) / x;
    }
    // e^x K1(x) fits, then unscale; underflows to 0 past x ~ 745.
    double scaled;
    if (x <= 8.0) {
        scaled = (1.25 + chebyshev_eval((16.0 / x - 5.0) / 3.0, kK1Mid, 18)) / std::sqrt(x);
    } else {
        scaled = (1.25 + chebyshev_eval(16.0 / x - 1.0, kK1Far, 14)) / std::sqrt(x);
    }
    return std::exp(-x) * scaled;
}

// ---------------------------------------------------------------------------
// phi kernels.
// ---------------------------------------------------------------------------

double phi1(double x) {
    if (!(x > 0.0)) throw std::domain_error("phi1: requires x > 0");
    return exp_e1_scaled(1.0 / x);
}

double phi2(double a, double b) { return phi1(a) - phi1(b); }

double phi3(double x) {
    if (!(x >= 0.0)) throw std::domain_error("phi3: requires x >= 0");
    if (x == 0.0) return 1.0;  // sqrt(x) K1(sqrt(x)) -> 1 as x -> 0
    const double s = std::sqrt(x);
    if (s > 745.0) return 0.0;  // K1 underflow region
    return s * bessel_k1(s);
}

double phi4(double a, double b, const QuadratureSettings& settings) {
    if (!(a >= 0.0) || !(b > 0.0)) throw std::domain_error("phi4: requires a >= 0, b > 0");
    auto f = [a, b](double x) {
        const double e = std::exp(-b * x);
        if (e == 0.0) return 0.0;
        return e * phi3(x) / (a * x + 1.0);
    };
    return integrate_zero_to_inf(f, settings).value;
}

double phi5(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("phi5: requires a, b > 0");
    const double psi_prime_1 = kPi * kPi / 6.0;
    return (0.5 / a) * std::log(b / a) * std::log(a * b) - psi_prime_1 / (2.0 * a) +
           kEulerGamma * std::log(b) / a + kEulerGamma * kEulerGamma / (2.0 * a);
}

double phi5_integral(double a, double b, const QuadratureSettings& settings) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("phi5_integral: requires a, b > 0");
    // The ln singularity at 0 is integrable; handle [0, eps] by the series
    // ln(y)(1 - (a+b)y + O(y^2)) and the rest by adaptive quadrature.
    const double eps = 1e-10;
    const double log_eps = std::log(eps);
    const double head = eps * (log_eps - 1.0) -
                        (a + b) * eps * eps * (2.0 * log_eps - 1.0) / 4.0;
    auto f = [a, b, eps](double t) {
        const double y = eps + t;
        const double e = std::exp(-b * y);
        if (e == 0.0) return 0.0;
        return e * std::log(y) / (a * y + 1.0);
    };
    return head + integrate_zero_to_inf(f, settings).value;
}

double mean_ln1p_y(double beta_u, const QuadratureSettings& settings) {
    if (!(beta_u > 0.0)) throw std::domain_error("mean_ln1p_y: requires beta_u > 0");
    auto f = [beta_u](double x) { return phi3(x / beta_u) / (1.0 + x); };
    return integrate_zero_to_inf(f, settings).value;
}

std::vector<Phi5Deviation> phi5_deviation_table(const QuadratureSettings& settings) {
    static const double kA[] = {1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6};
    static const double kB[] = {0.5, 1.0, 2.0};
    std::vector<Phi5Deviation> table;
    table.reserve(21);
    for (double a : kA) {
        for (double b : kB) {
            Phi5Deviation row;
            row.a = a;
            row.b = b;
            row.closed_form = phi5(a, b);
            row.integral = phi5_integral(a, b, settings);
            row.abs_dev = std::fabs(row.closed_form - row.integral);
            row.rel_dev = row.abs_dev / std::fabs(row.integral);
            table.push_back(row);
        }
    }
    return table;
}

}  // namespace pncsec

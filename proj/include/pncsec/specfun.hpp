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

#ifndef PNCSEC_SPECFUN_HPP
#define PNCSEC_SPECFUN_HPP

#include <vector>

#include "pncsec/quadrature.hpp"

namespace pncsec {

inline constexpr double kEulerGamma = 0.57721566490153286;

// Exponential integral Ei(x) for x != 0.  Series for small |x|, asymptotic
// expansion for large positive x, continued fraction for x < -1.
// Throws std::domain_error at x == 0 and std::range_error once e^x overflows.
double exp_integral_ei(double x);

// e^z * E1(z) for z > 0.  Stable where E1 alone would underflow; this is the
// form every caller in this project actually needs.
double exp_e1_scaled(double z);

// Modified Bessel function K1(x), x > 0.  Chebyshev fits, ~1e-15 relative.
double bessel_k1(double x);

// phi1(x) = -e^{1/x} Ei(-1/x) = E[ln(1 + x Z)] for Z ~ Exp(1), x > 0.
double phi1(double x);

// phi2(a, b) = phi1(a) - phi1(b).
double phi2(double a, double b);

// phi3(x) = sqrt(x) K1(sqrt(x)) for x >= 0, with phi3(0) = 1 (the limit).
double phi3(double x);

// phi4(a, b) = integral_0^inf e^{-b x} sqrt(x) K1(sqrt(x)) / (a x + 1) dx,
// a >= 0, b > 0.  Evaluated by adaptive quadrature.
double phi4(double a, double b, const QuadratureSettings& settings = {});

// phi5(a, b): closed-form large-a approximation of
// integral_0^inf e^{-b y} ln(y) / (a y + 1) dy, a > 0, b > 0.
double phi5(double a, double b);

// The defining integral behind phi5, evaluated by adaptive quadrature with
// the integrable ln-singularity at 0 handled by a series correction.  Kept
// as an independent route so the closed form can be checked against it.
double phi5_integral(double a, double b, const QuadratureSettings& settings = {});

// E[ln(1 + Y)] where Y has the product-form tail P(Y > y) = phi3(y / beta_u):
// integral_0^inf phi3(x / beta_u) / (1 + x) dx, beta_u > 0.
double mean_ln1p_y(double beta_u, const QuadratureSettings& settings = {});

// One row of the phi5 closed-form-vs-quadrature comparison.
struct Phi5Deviation {
    double a = 0.0;
    double b = 0.0;
    double closed_form = 0.0;
    double integral = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;  // abs_dev / |integral|
};

// Compares phi5 against phi5_integral over a fixed grid
// a in {1, 10, ..., 1e6} x b in {0.5, 1, 2}.  The closed form is an
// asymptotic expansion in a, so the deviation shrinks as a grows; the table
// makes that honest instead of hiding the small-a error.
std::vector<Phi5Deviation> phi5_deviation_table(const QuadratureSettings& settings = {});

}  // namespace pncsec

#endif  // PNCSEC_SPECFUN_HPP

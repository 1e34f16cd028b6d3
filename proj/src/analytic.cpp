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

#include "pncsec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "pncsec/specfun.hpp"

namespace pncsec {

namespace {

// The closed forms carry removable singularities (omega1 near 1, a_s or
// a_s_bar; omega2 near 1 or a1_t2_bar).  When a denominator magnitude drops
// below kPoleTol the term is re-evaluated at lambda_ruf * (1 +- kPoleDelta)
// and averaged, which cancels the first-order error.  lambda_ruf moves both
// omega1 and omega2 and is unconstrained from above, so it is the safe
// perturbation knob for every pole.
constexpr double kPoleTol = 1e-6;
constexpr double kPoleDelta = 1e-4;

double clamp0(double v) { return std::max(v, 0.0); }

double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

EsrTerm average_perturbed(const SystemParams& p,
                          const std::function<EsrTerm(const SystemParams&)>& eval) {
    SystemParams hi = p;
    SystemParams lo = p;
    hi.lambda_ruf *= 1.0 + kPoleDelta;
    lo.lambda_ruf *= 1.0 - kPoleDelta;
    const EsrTerm a = eval(hi);
    const EsrTerm b = eval(lo);
    EsrTerm t;
    t.legit = 0.5 * (a.legit + b.legit);
    t.eve = 0.5 * (a.eve + b.eve);
    t.esr = clamp0(t.legit - t.eve);
    t.pole_perturbed = true;
    return t;
}

EsrTerm guarded(const SystemParams& p, double min_denom,
                const std::function<EsrTerm(const SystemParams&)>& eval) {
    if (std::fabs(min_denom) >= kPoleTol) {
        EsrTerm t = eval(p);
        t.esr = clamp0(t.legit - t.eve);
        return t;
    }
    return average_perturbed(p, eval);
}

}  // namespace

EsrTerm esr_x1_term(const SystemParams& p, const DerivedCoeffs& c) {
    const double om1 = c.omega1;
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    const double rs_lsr = p.rho_s() * p.lambda_sr;
    EsrTerm t;
    t.legit = phi1(as * p.rho_s() * p.lambda_sun);
    t.eve = phi2(rs_lsr, asb * rs_lsr) / (1.0 - om1) -
            om1 * as * phi2(om1 * rs_lsr, asb * rs_lsr) / ((1.0 - om1) * (om1 - asb));
    t.esr = clamp0(t.legit - t.eve);
    return t;
}

EsrTerm esr_x2_term(const SystemParams& p, const DerivedCoeffs& c,
                    const QuadratureSettings& q) {
    const double om1 = c.omega1;
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    const double rs_lsr = p.rho_s() * p.lambda_sr;
    const double b = c.g_sq * p.lambda_ruf / 2.0;
    EsrTerm t;
    t.legit = c.beta_s * phi4(c.beta_s, b, q) - as * c.beta_s * phi4(as * c.beta_s, b, q);
    t.eve = phi2(rs_lsr, as * rs_lsr) / (1.0 - om1) -
            om1 * asb * phi2(om1 * rs_lsr, as * rs_lsr) / ((1.0 - om1) * (om1 - as));
    t.esr = clamp0(t.legit - t.eve);
    return t;
}

EsrTerm esr_x3_term(const SystemParams& p, const DerivedCoeffs& c) {
    const double om2 = c.omega2;
    const double a1 = p.a1_t2;
    const double a1b = p.a1_t2_bar();
    const double ru_lrun = p.rho_u * p.lambda_run;
    const double ru_lruf = p.rho_u * p.lambda_ruf;
    EsrTerm t;
    t.legit = phi1(a1 * p.rho_u * p.lambda_sun);
    t.eve = a1b * phi2(a1b * ru_lrun, ru_lruf) / (om2 - a1b) -
            phi2(ru_lrun, ru_lruf) / (om2 - 1.0);
    t.esr = clamp0(t.legit - t.eve);
    return t;
}

EsrTerm esr_x4_term(const SystemParams& p, const DerivedCoeffs& c,
                    const QuadratureSettings& q) {
    const double om2 = c.omega2;
    EsrTerm t;
    t.legit = c.beta_u * phi4(c.beta_u, c.g_sq * p.lambda_sr / 2.0, q);
    t.eve = om2 * phi2(p.rho_u * p.lambda_ruf, p.rho_u * p.lambda_run) / (om2 - 1.0);
    t.esr = clamp0(t.legit - t.eve);
    return t;
}

EsrTerm esr_x5_term(const SystemParams& p, const DerivedCoeffs& c,
                    const QuadratureSettings& q) {
    EsrTerm t;
    const double phi = std::log(c.a1_t3_bar() * p.rho_u * p.lambda_sun) -
                       mean_ln1p_y(c.beta_u, q) - kEulerGamma;
    t.legit = phi;  // the inner exponent; kept for AnalyticBreakdown::phi_x5
    t.eve = 0.0;
    t.esr = softplus(phi);
    return t;
}

EsrTerm esr_x1_lb(const SystemParams& p) {
    const DerivedCoeffs c = derive(p);
    const double min_denom =
        std::min(std::fabs(1.0 - c.omega1), std::fabs(c.omega1 - p.a_s_bar()));
    return guarded(p, min_denom,
                   [](const SystemParams& pp) { return esr_x1_term(pp, derive(pp)); });
}

EsrTerm esr_x2_lb(const SystemParams& p, const QuadratureSettings& q) {
    const DerivedCoeffs c = derive(p);
    const double min_denom =
        std::min(std::fabs(1.0 - c.omega1), std::fabs(c.omega1 - p.a_s));
    return guarded(p, min_denom,
                   [&q](const SystemParams& pp) { return esr_x2_term(pp, derive(pp), q); });
}

EsrTerm esr_x3_lb(const SystemParams& p) {
    const DerivedCoeffs c = derive(p);
    const double min_denom =
        std::min(std::fabs(c.omega2 - 1.0), std::fabs(c.omega2 - p.a1_t2_bar()));
    return guarded(p, min_denom,
                   [](const SystemParams& pp) { return esr_x3_term(pp, derive(pp)); });
}

EsrTerm esr_x4_lb(const SystemParams& p, const QuadratureSettings& q) {
    const DerivedCoeffs c = derive(p);
    return guarded(p, std::fabs(c.omega2 - 1.0),
                   [&q](const SystemParams& pp) { return esr_x4_term(pp, derive(pp), q); });
}

EsrTerm esr_x5_lb(const SystemParams& p, const QuadratureSettings& q) {
    // No poles; evaluate directly.
    return esr_x5_term(p, derive(p), q);
}

AnalyticBreakdown essr_lb(const SystemParams& p, const QuadratureSettings& q) {
    AnalyticBreakdown b;
    b.per_signal[0] = esr_x1_lb(p);
    b.per_signal[1] = esr_x2_lb(p, q);
    b.per_signal[2] = esr_x3_lb(p);
    b.per_signal[3] = esr_x4_lb(p, q);
    b.per_signal[4] = esr_x5_lb(p, q);
    b.phi_x5 = b.per_signal[4].legit;
    double sum = 0.0;
    static const char* names[5] = {"x1", "x2", "x3", "x4", "x5"};
    for (int j = 0; j < 5; ++j) {
        sum += b.per_signal[j].esr;
        if (b.per_signal[j].pole_perturbed) {
            b.flags.push_back(std::string("pole_") + names[j]);
        }
    }
    b.essr_lb = sum / 3.0;
    return b;
}

namespace {

struct AsyEval {
    double value = 0.0;
    bool small_log_arg = false;
};

AsyEval asy_x1_eval(const SystemParams& p, AsymptoticForm form) {
    AsyEval r;
    const double arg = p.a_s * p.nu * p.rho_u * p.lambda_sun;
    r.small_log_arg = !(arg > 1.0);
    r.value = std::log(arg);
    if (form == AsymptoticForm::pre_limit) {
        const double om1 = derive(p).omega1;
        const double as = p.a_s;
        const double asb = p.a_s_bar();
        r.value += om1 * as * std::log(om1) / ((1.0 - om1) * (om1 - asb)) -
                   asb * std::log(asb) / (om1 - asb) - kEulerGamma;
    }
    return r;
}

AsyEval asy_x3_eval(const SystemParams& p, AsymptoticForm form) {
    AsyEval r;
    const double arg = p.a1_t2 * p.rho_u * p.lambda_sun;
    r.small_log_arg = !(arg > 1.0);
    r.value = std::log(arg);
    if (form == AsymptoticForm::pre_limit) {
        const double om2 = derive(p).omega2;
        const double a1 = p.a1_t2;
        const double a1b = p.a1_t2_bar();
        r.value += om2 * a1 * std::log(om2) / ((1.0 - om2) * (om2 - a1b)) -
                   a1b * std::log(a1b) / (om2 - a1b) - kEulerGamma;
    }
    return r;
}

AsyEval asy_x4_eval(const SystemParams& p, AsymptoticForm form) {
    AsyEval r;
    const double arg = p.rho_u * p.lambda_ruf / 2.0;
    r.small_log_arg = !(arg > 1.0);
    if (form == AsymptoticForm::pre_limit) {
        const double om2 = derive(p).omega2;
        r.value = std::exp(2.0 / (p.rho_u * p.lambda_ruf)) * (std::log(arg) - kEulerGamma) -
                  om2 * std::log(om2) / (om2 - 1.0);
    } else {
        r.value = std::log(arg);
    }
    return r;
}

AsyEval asy_x2_eval(const SystemParams& p) {
    // SNR-free limit: omega1 -> lambda_ruf / (nu lambda_sr).
    AsyEval r;
    const double om1 = p.lambda_ruf / (p.nu * p.lambda_sr);
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    r.value = om1 / (om1 - as) *
              (std::log(1.0 / as) + asb * std::log(om1) / (1.0 - om1));
    return r;
}

// Smallest pole denominator of the asymptote for the given signal/form.
double asy_min_denom(SignalId signal, const SystemParams& p, AsymptoticForm form) {
    const SystemParams& pp = p;
    switch (signal) {
        case SignalId::x1: {
            if (form == AsymptoticForm::dominant) return 1.0;
            const double om1 = derive(pp).omega1;
            return std::min(std::fabs(1.0 - om1), std::fabs(om1 - pp.a_s_bar()));
        }
        case SignalId::x2: {
            const double om1 = pp.lambda_ruf / (pp.nu * pp.lambda_sr);
            return std::min(std::fabs(1.0 - om1), std::fabs(om1 - pp.a_s));
        }
        case SignalId::x3: {
            if (form == AsymptoticForm::dominant) return 1.0;
            const double om2 = derive(pp).omega2;
            return std::min(std::fabs(1.0 - om2), std::fabs(om2 - pp.a1_t2_bar()));
        }
        case SignalId::x4: {
            if (form == AsymptoticForm::dominant) return 1.0;
            return std::fabs(derive(pp).omega2 - 1.0);
        }
        case SignalId::x5: break;
    }
    return 1.0;
}

AsyEval asy_eval(SignalId signal, const SystemParams& p, AsymptoticForm form) {
    switch (signal) {
        case SignalId::x1: return asy_x1_eval(p, form);
        case SignalId::x2: return asy_x2_eval(p);
        case SignalId::x3: return asy_x3_eval(p, form);
        case SignalId::x4: return asy_x4_eval(p, form);
        case SignalId::x5: break;
    }
    throw std::invalid_argument("esr_asymptotic: x5 has no asymptote");
}

}  // namespace

AsymptoticEsr esr_asymptotic(SignalId signal, const SystemParams& p, AsymptoticForm form) {
    require_valid(p);
    AsymptoticEsr out;
    if (std::fabs(asy_min_denom(signal, p, form)) >= kPoleTol) {
        const AsyEval r = asy_eval(signal, p, form);
        out.value = r.value;
        out.small_log_arg = r.small_log_arg;
        return out;
    }
    SystemParams hi = p;
    SystemParams lo = p;
    hi.lambda_ruf *= 1.0 + kPoleDelta;
    lo.lambda_ruf *= 1.0 - kPoleDelta;
    const AsyEval a = asy_eval(signal, hi, form);
    const AsyEval b = asy_eval(signal, lo, form);
    out.value = 0.5 * (a.value + b.value);
    out.small_log_arg = a.small_log_arg || b.small_log_arg;
    out.pole_perturbed = true;
    return out;
}

AsymptoticEsr essr_asymptotic(const SystemParams& p, bool paper_literal) {
    const AsymptoticEsr x1 = esr_asymptotic(SignalId::x1, p, AsymptoticForm::dominant);
    const AsymptoticEsr x3 = esr_asymptotic(SignalId::x3, p, AsymptoticForm::dominant);
    const AsymptoticEsr x4 = esr_asymptotic(SignalId::x4, p, AsymptoticForm::dominant);
    AsymptoticEsr out;
    out.value = x1.value + x3.value + x4.value;
    if (!paper_literal) out.value /= 3.0;
    out.small_log_arg = x1.small_log_arg || x3.small_log_arg || x4.small_log_arg;
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form CDFs (proposed scheme).
// ---------------------------------------------------------------------------

double cdf_eve_x1(const SystemParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    if (x >= as / asb) return 1.0;  // SINR ceiling
    const double om1 = derive(p).omega1;
    const double num = as - asb * x;
    return 1.0 - num / (as + (om1 - asb) * x) *
                     std::exp(-x / (p.rho_s() * p.lambda_sr * num));
}

double cdf_legit_x2(const SystemParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    const double as = p.a_s;
    const double asb = p.a_s_bar();
    if (x >= asb / as) return 1.0;
    const DerivedCoeffs c = derive(p);
    const double den = asb - as * x;
    return 1.0 - std::exp(-2.0 * x / (p.rho_s() * p.lambda_sr * den)) *
                     phi3(x / (c.beta_s * den));
}

double cdf_eve_x3(const SystemParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    const double a1 = p.a1_t2;
    const double a1b = p.a1_t2_bar();
    if (x >= a1 / a1b) return 1.0;
    const double om2 = derive(p).omega2;
    const double num = a1 - a1b * x;
    return 1.0 - num / (a1 + (om2 - a1b) * x) *
                     std::exp(-x / (p.rho_u * p.lambda_run * num));
}

double cdf_eve_x4(const SystemParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    return 1.0 - p.lambda_ruf / (p.lambda_ruf + p.lambda_run * x) *
                     std::exp(-x / (p.rho_u * p.lambda_ruf));
}

double cdf_legit_x5(const SystemParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    const DerivedCoeffs c = derive(p);
    // Laplace transform of the amplified-noise product evaluated via the
    // scaled exponential integral; mu grows as x -> 0, where e^mu E1(mu)
    // decays like 1/mu and the CDF approaches 0.
    const double inv_a = c.a1_t3_bar() * p.lambda_sun / (c.g_sq * p.lambda_sr * p.lambda_ruf * x);
    const double mu = 2.0 / (p.rho_u * p.lambda_ruf) + inv_a;
    return 1.0 - inv_a * std::exp(-x / (c.a1_t3_bar() * p.rho_u * p.lambda_sun)) *
                     exp_e1_scaled(mu);
}

double cdf_y(const SystemParams& p, double y) {
    if (!(y > 0.0)) return 0.0;
    const DerivedCoeffs c = derive(p);
    return 1.0 - phi3(y / c.beta_u);
}

}  // namespace pncsec

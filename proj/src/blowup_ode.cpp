#include "blowlab/blowup_ode.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {
constexpr double kHoldTol = 1e-12;
}

double BernoulliProblem::blowup_time() const {
    return std::pow(y0, 1.0 - p) / (c * (p - 1.0));
}

void BernoulliProblem::validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("bernoulli: c must be > 0");
    if (!(p > 1.0) || !(p <= 3.0))
        throw std::invalid_argument("bernoulli: p must lie in (1, 3]");
    if (!(y0 > 0.0)) throw std::invalid_argument("bernoulli: y0 must be > 0");
}

double bernoulli_exact(const BernoulliProblem& prob, double t) {
    prob.validate();
    if (t < 0.0 || t >= prob.blowup_time())
        throw std::domain_error("bernoulli_exact: t must lie in [0, T*)");
    const double base = std::pow(prob.y0, 1.0 - prob.p) - prob.c * (prob.p - 1.0) * t;
    return std::pow(base, -1.0 / (prob.p - 1.0));
}

LemmaCheck lemma_bound_check(double t_star_time, double m, int n, double t) {
    if (!(t_star_time > 0.0)) throw std::invalid_argument("lemma: T* must be > 0");
    if (!(m > 0.0) || m * t_star_time < 1.0 - kHoldTol)
        throw std::invalid_argument("lemma: need m > 0 with m*T* >= 1");
    if (n < 1) throw std::invalid_argument("lemma: n must be >= 1");
    if (t < 0.0 || t > t_star_time - 1.0 / m + kHoldTol)
        throw std::domain_error("lemma: t must lie in [0, T* - 1/m]");
    LemmaCheck chk;
    chk.lhs = t_star_time - t;
    chk.rhs = std::pow(m, n) * std::pow(t_star_time - t, n + 1);
    chk.holds = chk.lhs <= chk.rhs + kHoldTol;
    return chk;
}

namespace {

void check_certificate_params(double c, double m, int n, double beta, double t_blowup) {
    if (!(c > 0.0)) throw std::invalid_argument("certificate: c must be > 0");
    if (!(m >= 1.0)) throw std::invalid_argument("certificate: m must be >= 1");
    if (m * t_blowup < 1.0 - 1e-12)
        throw std::invalid_argument("certificate: need m * t_blowup >= 1");
    if (n < 1) throw std::invalid_argument("certificate: n must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("certificate: beta must be > 0");
}

}  // namespace

BlowupCertificate trig_certificate_sine(double c, double m, int n, double beta,
                                        double t_blowup) {
    check_certificate_params(c, m, n, beta, t_blowup);
    BlowupCertificate cert;
    cert.flavor = "sine";
    cert.c = c;
    cert.m = m;
    cert.n = n;
    cert.beta = beta;
    cert.trig_argument = 1.0 / (beta + 1.0);
    cert.alpha = beta * std::sin(cert.trig_argument);
    cert.eta = std::sqrt(cert.alpha / (c * std::pow(m, n)));
    cert.t_blowup = t_blowup;
    cert.t_star = t_blowup - 1.0 / m;
    cert.exponent = (n + 1) / 2.0;
    return cert;
}

BlowupCertificate trig_certificate_halfangle(double c, double m, int n, double beta,
                                             double t_blowup, HalfangleVariant variant) {
    check_certificate_params(c, m, n, beta, t_blowup);
    BlowupCertificate cert;
    cert.flavor = "halfangle";
    cert.variant = variant == HalfangleVariant::h32 ? "h32" : "h1";
    cert.c = c;
    cert.m = m;
    cert.n = n;
    cert.beta = beta;
    cert.trig_argument = variant == HalfangleVariant::h32 ? 1.0 / (2.0 * beta + 2.0)
                                                          : 1.0 / (beta + 1.0);
    const double root = beta * std::sin(cert.trig_argument);
    cert.alpha = root * root;
    cert.eta = std::pow(cert.alpha / (c * std::pow(m, n)), 0.25);
    cert.t_blowup = t_blowup;
    cert.t_star = t_blowup - 1.0 / m;
    cert.exponent = (n + 1) / 4.0;
    return cert;
}

CertificateReport verify_certificate(const BlowupCertificate& cert,
                                     const BernoulliProblem& prob, int samples) {
    if (samples < 1) throw std::invalid_argument("verify: samples must be >= 1");
    CertificateReport rep;
    rep.cert = cert;
    rep.samples = samples;
    const double t_star_ode = prob.blowup_time();
    const double cmn = cert.c * std::pow(cert.m, cert.n);
    const bool sine = cert.flavor == "sine";

    double worst_a = std::numeric_limits<double>::infinity();
    double worst_b = worst_a;
    double worst_c = worst_a;
    double t_worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t =
            samples == 1 ? 0.0
                         : cert.t_star * static_cast<double>(i) / (samples - 1);
        const double z = bernoulli_exact(prob, t);
        const double remain = t_star_ode - t;
        const double angle = 1.0 / (z + 1.0);
        const double amplified = cmn * std::pow(remain, cert.n + 1);

        const double a = cert.c * remain - std::sin(angle);
        // 1 - cos(theta) written as 2 sin^2(theta/2) to keep small angles
        // fully accurate.
        const double trig_lhs =
            sine ? std::sin(angle) : 2.0 * std::pow(std::sin(angle / 2.0), 2);
        const double b = amplified - trig_lhs;
        const double zq = sine ? z : z * z;
        const double cmargin = zq - cert.alpha / amplified;

        worst_a = std::min(worst_a, a);
        worst_b = std::min(worst_b, b);
        if (cmargin < worst_c) {
            worst_c = cmargin;
            t_worst = t;
        }
    }
    rep.margin_integrated = worst_a;
    rep.margin_amplified = worst_b;
    rep.margin_final = worst_c;
    rep.t_worst_final = t_worst;
    rep.holds = worst_a >= -kHoldTol && worst_b >= -kHoldTol && worst_c >= -kHoldTol;
    return rep;
}

double classical_lower_bound(double c, double p, double t_blowup, double t) {
    if (!(p > 1.0)) throw std::invalid_argument("classical bound: p must be > 1");
    if (!(c > 0.0)) throw std::invalid_argument("classical bound: c must be > 0");
    if (!(t < t_blowup)) throw std::domain_error("classical bound: t must be < T*");
    return std::pow((p - 1.0) * c * (t_blowup - t), -1.0 / (p - 1.0));
}

nlohmann::ordered_json certificate_report_json(const CertificateReport& rep) {
    nlohmann::ordered_json j;
    j["flavor"] = rep.cert.flavor;
    if (!rep.cert.variant.empty()) j["variant"] = rep.cert.variant;
    j["m"] = rep.cert.m;
    j["n"] = rep.cert.n;
    j["beta"] = rep.cert.beta;
    j["alpha"] = rep.cert.alpha;
    j["eta"] = rep.cert.eta;
    j["c"] = rep.cert.c;
    j["t_blowup"] = rep.cert.t_blowup;
    j["t_star"] = rep.cert.t_star;
    j["exponent"] = rep.cert.exponent;
    j["trig_argument"] = rep.cert.trig_argument;
    j["samples"] = rep.samples;
    j["worst_margin_eq17"] = rep.margin_integrated;
    j["worst_margin_eq18"] = rep.margin_amplified;
    j["worst_margin_eq22"] = rep.margin_final;
    j["t_of_worst_margin"] = rep.t_worst_final;
    j["holds"] = rep.holds;
    return j;
}

}  // namespace blowlab

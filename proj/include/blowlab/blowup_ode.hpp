#pragma once

#include <string>

#include <json.hpp>

namespace blowlab {

/// y' = c y^p with p > 1: every positive solution blows up at the finite
/// time T* = y0^{1-p} / (c (p-1)).
struct BernoulliProblem {
    double c = 1.0;
    double p = 2.0;
    double y0 = 1.0;

    double blowup_time() const;
    void validate() const;  // c > 0, p in (1, 3], y0 > 0
};

/// Closed form y(t) = [y0^{1-p} - c(p-1)t]^{-1/(p-1)} for 0 <= t < T*.
double bernoulli_exact(const BernoulliProblem& prob, double t);

struct LemmaCheck {
    double lhs = 0.0;  // T* - t
    double rhs = 0.0;  // m^n (T* - t)^(n+1)
    bool holds = false;
};

/// The amplification inequality (T*-t) <= m^n (T*-t)^{n+1}, valid on
/// [0, T* - 1/m] whenever m*T* >= 1. Rejects t outside that window, where
/// nothing is claimed.
LemmaCheck lemma_bound_check(double t_star_time, double m, int n, double t);

enum class HalfangleVariant { h32, h1 };

/// Constants of a trigonometric lower-bound construction. z denotes the
/// blow-up quantity the bound speaks about (a squared norm in the intended
/// application, the ODE solution y in this laboratory).
struct BlowupCertificate {
    std::string flavor;   // "sine" | "halfangle"
    std::string variant;  // "" for sine, else "h32" | "h1"
    double c = 1.0;       // constant of the differential inequality z' <= c z^p
    double m = 1.0;       // window parameter, horizon t_star = t_blowup - 1/m
    int n = 1;            // amplification power
    double beta = 0.0;    // floor: beta <= min z over [0, t_star]
    double alpha = 0.0;   // trig constant derived from beta
    double eta = 0.0;     // bound constant: z-bound eta^2 (sine) / eta^4 (halfangle)
    double t_blowup = 0.0;
    double t_star = 0.0;
    double exponent = 0.0;       // claimed norm rate: (n+1)/2 or (n+1)/4
    double trig_argument = 0.0;  // angle inside alpha's sine
};

/// alpha = beta sin(1/(beta+1)), eta = sqrt(alpha/(c m^n)),
/// final bound z >= alpha / (c m^n (T*-t)^{n+1}).
BlowupCertificate trig_certificate_sine(double c, double m, int n, double beta,
                                        double t_blowup);

/// alpha = (beta sin(theta))^2 with theta = 1/(2 beta + 2) for the h32
/// variant and theta = 1/(beta + 1) for the h1 variant (the two variants
/// genuinely use different angles; both are supported),
/// eta = (alpha/(c m^n))^{1/4}, final bound z^2 >= alpha / (c m^n (T*-t)^{n+1}).
BlowupCertificate trig_certificate_halfangle(double c, double m, int n, double beta,
                                             double t_blowup, HalfangleVariant variant);

/// Margins are (rhs - lhs) of each checked inequality, minimised over the
/// sample grid; a check passes when its margin is >= -1e-12.
struct CertificateReport {
    BlowupCertificate cert;
    int samples = 0;
    double margin_integrated = 0.0;  // c(T*-t) - sin(1/(z+1))
    double margin_amplified = 0.0;   // c m^n (T*-t)^{n+1} minus the flavor's trig term
    double margin_final = 0.0;       // z (sine) or z^2 (halfangle) minus alpha/(c m^n (T*-t)^{n+1})
    double t_worst_final = 0.0;      // grid time attaining margin_final
    bool holds = false;
};

/// Checks the certificate against the exact Bernoulli solution on a uniform
/// grid of `samples` points in [0, t_star]. Violations are reported in the
/// margins, never thrown.
CertificateReport verify_certificate(const BlowupCertificate& cert,
                                     const BernoulliProblem& prob, int samples);

/// ((p-1) c (T*-t))^{-1/(p-1)} — the bound obtained by integrating
/// y' <= c y^p from t to T*; exact solutions saturate it.
double classical_lower_bound(double c, double p, double t_blowup, double t);

/// Stable JSON rendering of a report (fixed key order, 17-digit numbers).
nlohmann::ordered_json certificate_report_json(const CertificateReport& rep);

}  // namespace blowlab

#pragma once

#include <cmath>
#include <cstdint>

#include <json.hpp>

#include "tornpaper/params.hpp"

namespace tornpaper {

// Numeric evaluators for the bound formulas. Base-q logarithms throughout.
// Asymptotic o(1)/O(1) terms are never folded into the finite part: they are
// returned (and serialized) as separate annotated components.

inline double log_q(unsigned q, double x) { return std::log(x) / std::log(double(q)); }

struct Lemma1Bound {
    double main;    // n k (1/a - a log_q(k)/n)
    double o_term;  // log log(nk) / log(nk), coefficient unknown (O-term)
};

inline Lemma1Bound lemma1_lower(unsigned q, double n, double k, double a) {
    Lemma1Bound b;
    b.main = n * k * (1.0 / a - a * (k > 1 ? log_q(q, k) : 0.0) / n);
    const double lognk = log_q(q, n * k);
    b.o_term = log_q(q, lognk) / lognk;
    return b;
}

// The pre-simplification counting expression of the same lower bound:
// (n - log k) k - log C(k ceil(n/Lmin) + q^Lmin, q^Lmin), exact via lgamma.
// Test-scale n only (q^Lmin as a double).
inline double lemma1_lower_exact(unsigned q, std::size_t n, std::size_t k, std::size_t Lmin) {
    const double u = static_cast<double>(k) * std::ceil(double(n) / double(Lmin));
    const double v = std::pow(double(q), double(Lmin));
    const double log_binom =
        (std::lgamma(u + v + 1.0) - std::lgamma(u + 1.0) - std::lgamma(v + 1.0)) /
        std::log(double(q));
    return (double(n) - log_q(q, double(k))) * double(k) - log_binom;
}

inline double cor1_rate_cap(double a) { return 1.0 - 1.0 / a; }

// (n/a)(1 + f/log(n) + 1/f); the (1+o(1)) factor on the bracket is dropped
// and reported as an annotation by bound_report.
inline double thm2_upper(unsigned q, double n, double a, double f) {
    return n / a * (1.0 + f / log_q(q, n) + 1.0 / f);
}

// Exact redundancy via the decomposition k((n mod Lmin) + Lmin + K(Lmin-m));
// codec::code_redundancy computes nk - kKm independently.
inline std::int64_t implementation_red(const CodeParams& p) {
    return static_cast<std::int64_t>(p.k) *
           (static_cast<std::int64_t>(p.n % p.Lmin) + static_cast<std::int64_t>(p.Lmin) +
            static_cast<std::int64_t>(p.K) *
                (static_cast<std::int64_t>(p.Lmin) - static_cast<std::int64_t>(p.m)));
}

struct PilotRate {
    double rate_lower;       // finite part of the rate lower bound
    std::size_t s;           // prescribed de Bruijn order
    double acceptance_lower; // 1 - (n/m)^2 q^-s (proof bound; lemma-5 only)
};

// s = ceil((2+delta) log(n/m)); rate >= 1 - 1/m - (m-1)(n/m)^-d / (n(1-(n/m)^-d)).
inline PilotRate pilot_rate_lemma5(unsigned q, double n, double m, double delta) {
    PilotRate r;
    const double L = n / m;
    r.s = static_cast<std::size_t>(std::ceil((2.0 + delta) * log_q(q, L)));
    const double drop = std::pow(L, -delta);
    r.rate_lower = 1.0 - 1.0 / m - (m - 1.0) * drop / (n * (1.0 - drop));
    r.acceptance_lower = 1.0 - L * L * std::pow(double(q), -double(r.s));
    return r;
}

// s = ceil(log(n/m) + log log(n/m) + log(3e)); rate >= (1-1/m)(1 - log_q(e)/(2s)),
// the O(1/log n) slack reported by annotation.
inline PilotRate pilot_rate_lemma6(unsigned q, double n, double m) {
    PilotRate r;
    const double L = n / m;
    r.s = static_cast<std::size_t>(
        std::ceil(log_q(q, L) + log_q(q, log_q(q, L)) + log_q(q, 3.0 * std::exp(1.0))));
    const double logq_e = 1.0 / std::log(double(q));
    r.rate_lower = (1.0 - 1.0 / m) * (1.0 - logq_e / (2.0 * double(r.s)));
    r.acceptance_lower = 1.0 - L * L * std::pow(double(q), -double(r.s));
    return r;
}

// Full report for one configuration; every entry carries an exactness tag.
inline nlohmann::json bound_report(const CodeParams& p, double pilot_m = 4.0,
                                   double pilot_delta = 1.0) {
    const double a = asymptotic_a(p);
    const auto l1 = lemma1_lower(p.q, double(p.n), double(p.k), a);
    const std::int64_t red = implementation_red(p);
    const double rate = 1.0 - double(red) / (double(p.n) * double(p.k));
    const auto p5 = pilot_rate_lemma5(p.q, double(p.n), pilot_m, pilot_delta);
    const auto p6 = pilot_rate_lemma6(p.q, double(p.n), pilot_m);
    return nlohmann::json{
        {"schema", 1},
        {"config", to_json(p)},
        {"a", a},
        {"lemma1_lower",
         {{"value", l1.main}, {"kind", "asymptotic-dropped-o1"}, {"o_term", l1.o_term}}},
        {"cor1_rate_cap", {{"value", cor1_rate_cap(a)}, {"kind", "asymptotic-dropped-o1"}}},
        {"thm2_upper",
         {{"value", thm2_upper(p.q, double(p.n), a, double(p.f))},
          {"kind", "asymptotic-dropped-o1"}}},
        {"implementation_red", {{"value", red}, {"kind", "exact"}}},
        {"implementation_rate", {{"value", rate}, {"kind", "exact"}}},
        {"pilot_lemma5",
         {{"rate_lower", p5.rate_lower},
          {"s", p5.s},
          {"acceptance_lower", p5.acceptance_lower},
          {"kind", "asymptotic-dropped-o1"}}},
        {"pilot_lemma6",
         {{"rate_lower", p6.rate_lower}, {"s", p6.s}, {"kind", "asymptotic-dropped-o1"}}}};
}

}  // namespace tornpaper

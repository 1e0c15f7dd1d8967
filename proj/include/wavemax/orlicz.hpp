#pragma once
// The piecewise-cubic Orlicz function Psi, its derivative and explicit
// inverse, the gauge norm N_Psi (the lambda with int Psi(|f|/lambda) = 1),
// and the pairing <f, Psi'(f)>.
//
//   Psi(y)  = alpha y^2 - y^3/3                      for 0 <= y < alpha
//           = (2/3) alpha^3 + alpha^2 (y - alpha) + (y - alpha)^3  otherwise
//
// Psi is even in y, strictly increasing and convex on [0, inf), and satisfies
// the Delta_2 bound Psi(2y) <= 8 Psi(y) (cubic growth).  The height at which
// 2 Psi(y) = y Psi'(y) is B = (4/sqrt 3) cos(5 pi/18) * alpha; the ratio is
// the positive root of u^3 - 4u + 8/3 in (1, 2).

#include <cmath>
#include <stdexcept>

#include "wavemax/grid.hpp"

namespace wavemax {

// B/alpha = (4/sqrt 3) cos(5 pi/18) = 1.4844543979371183...
inline double orlicz_height_ratio() {
    return 4.0 / std::sqrt(3.0) * std::cos(5.0 * M_PI / 18.0);
}

struct OrliczParams {
    double alpha = 0;
    double B = 0;  // unique positive solution of 2 Psi(y) = y Psi'(y)
};

inline OrliczParams make_orlicz(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("make_orlicz: alpha must be positive");
    return {alpha, orlicz_height_ratio() * alpha};
}

inline double psi(double y, const OrliczParams& p) {
    y = std::abs(y);
    double a = p.alpha;
    if (y < a) return a * y * y - y * y * y / 3.0;
    double t = y - a;
    return 2.0 / 3.0 * a * a * a + a * a * t + t * t * t;
}

inline double psi_prime(double y, const OrliczParams& p) {
    y = std::abs(y);
    double a = p.alpha;
    if (y < a) return 2.0 * a * y - y * y;
    double t = y - a;
    return a * a + 3.0 * t * t;
}

// Exact inverse of psi_prime on [0, inf).
inline double psi_prime_inv(double g, const OrliczParams& p) {
    if (g < 0.0) g = 0.0;
    double a = p.alpha;
    if (g <= a * a) return a - std::sqrt(std::max(a * a - g, 0.0));
    return a + std::sqrt((g - a * a) / 3.0);
}

namespace detail {

// int Psi(|f|/lambda) - 1, the strictly decreasing function whose root is
// the gauge norm.
inline double gauge_defect(const GridFunction& f, const OrliczParams& p,
                           double lambda) {
    double s = 0.0;
    for (double t : f.v) s += psi(std::abs(t) / lambda, p);
    return f.grid->dx * s - 1.0;
}

inline double gauge_defect_slope(const GridFunction& f, const OrliczParams& p,
                                 double lambda) {
    // d/dlambda int Psi(|f|/lambda) = -int Psi'(|f|/lambda) |f| / lambda^2
    double s = 0.0;
    for (double t : f.v) {
        double y = std::abs(t);
        s += psi_prime(y / lambda, p) * y;
    }
    return -f.grid->dx * s / (lambda * lambda);
}

}  // namespace detail

// N_Psi(f): the unique lambda > 0 with int Psi(|f|/lambda) dx = 1.
// Bracketed Newton (bisection fallback) to 1e-14 relative; `hint` warm-starts
// the bracket when a previous value for a nearby f is known.
inline double gauge_norm(const GridFunction& f, const OrliczParams& p,
                         double hint = 0.0) {
    double sup = sup_norm(f);
    if (!(sup > 0.0))
        throw std::invalid_argument("gauge_norm: zero function has no gauge");
    if (!std::isfinite(sup))
        throw std::invalid_argument("gauge_norm: non-finite values");
    double lo, hi;
    if (hint > 0.0 && std::isfinite(hint)) {
        lo = hint * 0.5;
        hi = hint * 2.0;
    } else {
        lo = sup / (10.0 * p.alpha);
        hi = 10.0 * (l2_norm(f) + l3_norm(f)) * (1.0 + 1.0 / p.alpha);
        if (hi <= lo) hi = 2.0 * lo;
    }
    // defect is decreasing in lambda: defect(lo) > 0 > defect(hi) at a root.
    while (detail::gauge_defect(f, p, lo) < 0.0 && lo > 1e-280) lo /= 8.0;
    while (detail::gauge_defect(f, p, hi) > 0.0 && hi < 1e280) hi *= 8.0;
    double lam = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double G = detail::gauge_defect(f, p, lam);
        if (G > 0.0) lo = lam; else hi = lam;
        double dG = detail::gauge_defect_slope(f, p, lam);
        double next = lam - G / dG;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect
        if (std::abs(next - lam) <= 1e-14 * lam) return next;
        lam = next;
    }
    return lam;
}

inline double pairing(const GridFunction& f, const OrliczParams& p) {
    double s = 0.0;
    for (double t : f.v) s += t * psi_prime(t, p);
    return f.grid->dx * s;
}

// Closed form of <f, Psi'(f)> valid when N_Psi(f) = 1:
//   2 - (1/3) int_{f<alpha} f^3
//     + int_{f>=alpha} [ alpha^2 (2 alpha/3 - f) + (f-alpha)^3
//                        + 3 alpha (f-alpha)^2 ].
inline double pairing_closed_form(const GridFunction& f,
                                  const OrliczParams& p) {
    double a = p.alpha;
    double below = 0.0, above = 0.0;
    for (double t : f.v) {
        double y = std::abs(t);
        if (y < a) {
            below += y * y * y;
        } else {
            double u = y - a;
            above += a * a * (2.0 * a / 3.0 - y) + u * u * u +
                     3.0 * a * u * u;
        }
    }
    return 2.0 - f.grid->dx * below / 3.0 + f.grid->dx * above;
}

// Derivative of N_Psi at a gauge-normalized f0 in direction h:
// <h, Psi'(f0)> / <f0, Psi'(f0)>.
inline double gateaux_derivative(const GridFunction& f0, const GridFunction& h,
                                 const OrliczParams& p) {
    require_same_grid(f0, h, "gateaux_derivative");
    double g = gauge_norm(f0, p);
    if (std::abs(g - 1.0) > 1e-10)
        throw std::invalid_argument(
            "gateaux_derivative: f0 must be gauge-normalized (N_Psi = 1)");
    double num = 0.0;
    for (int j = 0; j < f0.n(); ++j) num += h.v[j] * psi_prime(f0.v[j], p);
    num *= f0.grid->dx;
    return num / pairing(f0, p);
}

}  // namespace wavemax

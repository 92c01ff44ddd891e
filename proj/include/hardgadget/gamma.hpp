#pragma once

// Standard normal CDF/quantile and the quadrant probability
//   Gamma_rho(a, b) = Pr[x <= Phi^-1(a) and y <= Phi^-1(b)]
// for standard Gaussians (x, y) with correlation rho in [-1, 0].

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardgadget {

inline double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double phi_density(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

/// Inverse standard normal CDF: Acklam's rational approximation refined by Newton steps.
inline double phi_inv(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("phi_inv argument outside [0, 1]");
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    if (a == 1.0) return std::numeric_limits<double>::infinity();

    static constexpr std::array<double, 6> ca{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                              1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> cb{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                              6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr std::array<double, 6> cc{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                              -2.549671010229583e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> cd{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                              3.754408661907416e+00};
    constexpr double low = 0.02425;

    double x;
    if (a < low) {
        const double q = std::sqrt(-2.0 * std::log(a));
        x = (((((cc[0] * q + cc[1]) * q + cc[2]) * q + cc[3]) * q + cc[4]) * q + cc[5]) /
            ((((cd[0] * q + cd[1]) * q + cd[2]) * q + cd[3]) * q + 1.0);
    } else if (a <= 1.0 - low) {
        const double q = a - 0.5;
        const double r = q * q;
        x = (((((ca[0] * r + ca[1]) * r + ca[2]) * r + ca[3]) * r + ca[4]) * r + ca[5]) * q /
            (((((cb[0] * r + cb[1]) * r + cb[2]) * r + cb[3]) * r + cb[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-a));
        x = -(((((cc[0] * q + cc[1]) * q + cc[2]) * q + cc[3]) * q + cc[4]) * q + cc[5]) /
            ((((cd[0] * q + cd[1]) * q + cd[2]) * q + cd[3]) * q + 1.0);
    }
    // Newton on the tail that keeps precision; the approximation is good to ~1e-9, so a
    // couple of steps reach double precision
    for (int step = 0; step < 3; ++step) {
        const double dx = a <= 0.5 ? (phi(x) - a) / phi_density(x)
                                   : ((1.0 - a) - 0.5 * std::erfc(x / std::numbers::sqrt2)) / phi_density(x);
        x -= dx;
        if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

namespace detail {

struct QuadratureSegment {
    double lo, hi, value, error;
    bool operator<(const QuadratureSegment& o) const { return error < o.error; }
};

template <class F>
QuadratureSegment gauss_kronrod15(const F& f, double lo, double hi) {
    static constexpr std::array<double, 8> xk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                              0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                              0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                              0.207784955007898467600689403773245, 0.0};
    static constexpr std::array<double, 8> wk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                              0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                              0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                              0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const double fc = f(c);
    double kron = wk[7] * fc, gauss = wg[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double sum = f(c - h * xk[i]) + f(c + h * xk[i]);
        kron += wk[i] * sum;
        if (i % 2 == 1) gauss += wg[i / 2] * sum;
    }
    return {lo, hi, kron * h, std::abs((kron - gauss) * h)};
}

/// Globally adaptive 15-point Gauss-Kronrod: bisect the worst segment until the summed
/// error estimate falls below tol.
template <class F>
double integrate(const F& f, double lo, double hi, double tol, int max_segments = 4000) {
    if (!(hi > lo)) return 0.0;
    std::priority_queue<QuadratureSegment> heap;
    auto first = gauss_kronrod15(f, lo, hi);
    double total = first.value, err = first.error;
    heap.push(first);
    int segments = 1;
    while (err > tol && segments < max_segments) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        auto left = gauss_kronrod15(f, worst.lo, mid);
        auto right = gauss_kronrod15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    // re-sum from the segments to shed accumulated cancellation
    total = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        heap.pop();
    }
    return total;
}

}  // namespace detail

struct GammaQuery {
    double rho = -0.7;
    double a = 0.5;
    double b = 0.5;
    double tolerance = 1e-10;

    void validate() const {
        if (!(rho >= -1.0 && rho <= 0.0)) throw std::domain_error("rho must lie in [-1, 0]");
        if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) throw std::domain_error("a and b must lie in [0, 1]");
        if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
    }
};

inline constexpr double gamma_lower_limit = -8.5;

/// Gamma_rho(a, b) to absolute error q.tolerance.
inline double gamma(const GammaQuery& q) {
    q.validate();
    const double a = q.a, b = q.b, rho = q.rho;
    if (a == 0.0 || b == 0.0) return 0.0;
    if (a == 1.0) return b;
    if (b == 1.0) return a;
    if (rho == 0.0) return a * b;
    if (rho == -1.0) return std::max(0.0, a + b - 1.0);

    const double ha = phi_inv(a), hb = phi_inv(b);
    if (ha <= gamma_lower_limit) return 0.0;
    const double s = std::sqrt(1.0 - rho * rho);
    auto integrand = [&](double x) { return phi_density(x) * phi((hb - rho * x) / s); };
    double v = detail::integrate(integrand, gamma_lower_limit, ha, 0.1 * q.tolerance);
    return std::clamp(v, 0.0, std::min(a, b));
}

inline double gamma(double rho, double a, double b, double tolerance = 1e-10) {
    return gamma(GammaQuery{rho, a, b, tolerance});
}

/// (arccos(rho) / pi) / ((1 - rho) / 2)
inline double gw_curve(double rho) {
    if (!(rho >= -1.0 && rho <= 0.0)) throw std::domain_error("rho must lie in [-1, 0]");
    return (std::acos(rho) / std::numbers::pi) / ((1.0 - rho) / 2.0);
}

struct CurveMinimum {
    double rho = 0.0;
    double value = 0.0;
};

/// Minimiser of gw_curve on [-1, 0]: grid of `step`, then golden-section refinement.
inline CurveMinimum gw_argmin(double step = 1e-3, double tol = 1e-9) {
    double best = -1.0, best_value = gw_curve(-1.0);
    const int n = static_cast<int>(std::lround(1.0 / step));
    for (int i = 1; i <= n; ++i) {
        const double r = -1.0 + i * step;
        const double v = gw_curve(std::min(r, 0.0));
        if (v < best_value) {
            best_value = v;
            best = std::min(r, 0.0);
        }
    }
    double lo = std::max(-1.0, best - step), hi = std::min(0.0, best + step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = gw_curve(x1), f2 = gw_curve(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = gw_curve(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = gw_curve(x2);
        }
    }
    const double r = 0.5 * (lo + hi);
    return {r, gw_curve(r)};
}

}  // namespace hardgadget

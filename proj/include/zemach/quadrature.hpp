#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <vector>

#include "zemach/errors.hpp"

namespace zemach {

struct quadrature_result {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Thrown when the integrand itself misbehaves (NaN/Inf at an abscissa).
// Running out of the evaluation budget is not exceptional at this layer:
// it comes back as a result with converged = false carrying the partial
// value; consuming operations decide whether that is fatal.
struct quadrature_failure : error {
    quadrature_failure(const std::string& msg, double x)
        : error(msg), abscissa(x) {}
    double abscissa;
};

struct quad_options {
    double epsrel = 1e-10;
    double epsabs = 0.0;
    long max_evaluations = 1'000'000;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1,1] (Kronrod points xgk;
// the embedded 7-point Gauss rule sits on xgk[1],xgk[3],xgk[5],xgk[7]).
inline constexpr double xgk15[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double wgk15[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double wg7[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct interval_estimate {
    double a, b;
    double value;
    double err;
};

// One GK15 application on [a,b] with the QUADPACK dqk15 error model.
template <class F>
interval_estimate gk15(F&& f, double a, double b, long& evaluations) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double dh = std::fabs(h);

    auto eval = [&](double x) {
        const double v = f(x);
        ++evaluations;
        if (!std::isfinite(v)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "integrand returned a non-finite value at x = %.17g",
                          x);
            throw quadrature_failure(buf, x);
        }
        return v;
    };

    double fv1[7], fv2[7];
    const double fc = eval(c);
    double resk = wgk15[7] * fc;
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk15[j];
        fv1[j] = eval(c - dx);
        fv2[j] = eval(c + dx);
        resk += wgk15[j] * (fv1[j] + fv2[j]);
        resabs += wgk15[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    }
    double resg = wg7[3] * fc;
    for (int j = 0; j < 3; ++j)
        resg += wg7[j] * (fv1[2 * j + 1] + fv2[2 * j + 1]);

    const double reskh = resk * 0.5;
    double resasc = wgk15[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk15[j] * (std::fabs(fv1[j] - reskh) +
                              std::fabs(fv2[j] - reskh));

    const double value = resk * h;
    resabs *= dh;
    resasc *= dh;

    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps))
        err = std::max(eps * 50.0 * resabs, err);

    return {a, b, value, err};
}

struct worse_first {
    bool operator()(const interval_estimate& x,
                    const interval_estimate& y) const {
        // top() must be the interval with the largest error estimate;
        // ties broken by the left endpoint so refinement order is
        // deterministic.
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    }
};

} // namespace detail

// Adaptive bisection on Gauss-Kronrod 7/15. Deterministic: fixed node
// tables, worst-interval-first refinement with a total order on ties,
// no randomized abscissae.
template <class F>
quadrature_result integrate_finite(F&& f, double a, double b,
                                   const quad_options& opt = {}) {
    if (!(a < b)) throw error("integrate_finite: requires a < b");
    if (!(opt.epsrel > 0.0) && !(opt.epsabs > 0.0))
        throw error("integrate_finite: tolerance must be positive");

    long evaluations = 0;
    std::priority_queue<detail::interval_estimate,
                        std::vector<detail::interval_estimate>,
                        detail::worse_first>
        queue;
    std::vector<detail::interval_estimate> frozen; // intervals at width limit

    auto first = detail::gk15(f, a, b, evaluations);
    double total_value = first.value;
    double total_err = first.err;
    queue.push(first);

    const double eps = std::numeric_limits<double>::epsilon();
    auto tolerance = [&] {
        return std::max(opt.epsabs, opt.epsrel * std::fabs(total_value));
    };

    while (total_err > tolerance() && !queue.empty() &&
           evaluations + 30 <= opt.max_evaluations) {
        const auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b ||
            (worst.b - worst.a) <
                100.0 * eps * std::max(std::fabs(worst.a), std::fabs(worst.b))) {
            // cannot be refined further in double precision
            frozen.push_back(worst);
            continue;
        }
        const auto left = detail::gk15(f, worst.a, mid, evaluations);
        const auto right = detail::gk15(f, mid, worst.b, evaluations);
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    quadrature_result out;
    out.value = total_value;
    out.error_estimate = total_err;
    out.evaluations = evaluations;
    out.converged = total_err <= tolerance();
    return out;
}

// Maps [0,inf) onto [0,1) through x = t/(1-t) (Jacobian 1/(1-t)^2) and
// integrates the transformed function; all quadrature nodes are interior,
// so neither x = 0 nor x = inf is ever evaluated directly.
template <class F>
quadrature_result integrate_semi_infinite(F&& f, const quad_options& opt = {}) {
    auto g = [&f](double t) {
        const double om = 1.0 - t;
        const double x = t / om;
        return f(x) / (om * om);
    };
    return integrate_finite(g, 0.0, 1.0, opt);
}

} // namespace zemach

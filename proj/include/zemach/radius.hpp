#pragma once

#include <cmath>
#include <string>

#include "zemach/constants.hpp"
#include "zemach/errors.hpp"
#include "zemach/formfactors.hpp"
#include "zemach/measurement.hpp"
#include "zemach/quadrature.hpp"

namespace zemach {

enum class zemach_method { momentum, coordinate, analytic };

inline std::string method_name(zemach_method m) {
    switch (m) {
        case zemach_method::momentum:   return "momentum";
        case zemach_method::coordinate: return "coordinate";
        case zemach_method::analytic:   return "analytic";
    }
    return "?";
}

struct zemach_result {
    measurement radius;      // fm; sigma carries the quadrature error
    zemach_method method;
    double quadrature_error; // fm
    std::string model_id;
    bool beyond_validity_reached = false; // hybrid tail was dropped
};

namespace detail {

struct radius_failure_message {
    static std::string make(const char* op, const quadrature_result& r) {
        char buf[220];
        std::snprintf(buf, sizeof(buf),
                      "%s: quadrature did not converge within the evaluation "
                      "budget (partial value %.12g, error estimate %.3g, "
                      "%ld evaluations)",
                      op, r.value, r.error_estimate, r.evaluations);
        return buf;
    }
};

} // namespace detail

// R_p = -(4/pi) * hbar_c * int_0^inf dk/k^2 [G_E(-k^2) G_M(-k^2)/mu_p - 1],
// the angular-reduced, alpha -> 0 form of the Zemach correction integral
// (k in GeV, converted to fm through hbar_c; derivation in docs/theory.md).
// The k -> 0 endpoint is regular because the bracket is O(k^2).
// A positive k_max truncates the integral there and appends the closed-form
// point-like remainder int_{k_max}^inf (-1/k^2) dk = -1/k_max (the form
// factors are treated as zero beyond the cutoff); used by truncation-
// robustness tests.
inline zemach_result zemach_radius_momentum(const form_factor_model& model,
                                            const constant_set& set,
                                            double tol = 1e-10,
                                            std::string model_id = {},
                                            double k_max = 0.0) {
    validate_model(model);
    if (!(tol > 0.0))
        throw error("zemach_radius_momentum: tolerance must be positive");
    const double hbar_c_gev_fm = set.value("hbar_c") * 1e-3;

    bool beyond = false;
    auto integrand = [&](double k) {
        const double k2 = k * k;
        return (zemach_product(model, k2, set, &beyond) - 1.0) / k2;
    };

    quad_options opt;
    opt.epsrel = tol;
    quadrature_result q =
        k_max > 0.0 ? integrate_finite(integrand, 0.0, k_max, opt)
                    : integrate_semi_infinite(integrand, opt);
    if (!q.converged)
        throw error(detail::radius_failure_message::make(
            "zemach_radius_momentum", q));
    if (k_max > 0.0) q.value -= 1.0 / k_max; // point-like tail

    const double scale = -(4.0 / detail::pi) * hbar_c_gev_fm;
    const double r = scale * q.value;
    const double err = std::fabs(scale) * q.error_estimate;
    zemach_result out{measurement(r, err, unit::fm), zemach_method::momentum,
                      err, std::move(model_id)};
    out.beyond_validity_reached = beyond;
    return out;
}

// Angular kernel of the convolution first moment: integrating |u - v| over
// relative orientations of two radial shells gives
// K(u,v) = max(u,v) + min(u,v)^2 / (3 max(u,v)), so that
// R_p = int du int dv [4 pi u^2 rho_E(u)] [4 pi v^2 rho_M(v)] K(u,v).
inline double zemach_kernel(double u, double v) {
    const double hi = std::max(u, v);
    const double lo = std::min(u, v);
    if (hi == 0.0) return 0.0;
    return hi + lo * lo / (3.0 * hi);
}

// Coordinate-space evaluation from two radial densities; the independent
// oracle for the momentum-space path. The inner integral is split at the
// kernel's kink (v = u) so each piece is smooth.
inline zemach_result
zemach_radius_coordinate_densities(const density_profile& rho_e,
                                   const density_profile& rho_m,
                                   double tol = 1e-10,
                                   std::string model_id = {}) {
    if (!(tol > 0.0))
        throw error("zemach_radius_coordinate: tolerance must be positive");
    const double rmax =
        std::max(rho_e.truncation_radius, rho_m.truncation_radius);
    constexpr double four_pi = 4.0 * detail::pi;

    quad_options inner_opt;
    inner_opt.epsrel = tol;
    inner_opt.epsabs = tol; // inner values can legitimately be ~0 at large u
    quad_options outer_opt;
    outer_opt.epsrel = tol;

    double inner_error = 0.0; // worst relative inner error seen
    auto outer_integrand = [&](double u) {
        auto inner = [&](double v) {
            return four_pi * v * v * rho_m.rho(v) * zemach_kernel(u, v);
        };
        quadrature_result lo{};
        if (u > 0.0) {
            lo = integrate_finite(inner, 0.0, u, inner_opt);
            if (!lo.converged)
                throw error(detail::radius_failure_message::make(
                    "zemach_radius_coordinate (inner)", lo));
        }
        const quadrature_result hi =
            u < rmax ? integrate_finite(inner, u, rmax, inner_opt)
                     : quadrature_result{0.0, 0.0, 1, true};
        if (!hi.converged)
            throw error(detail::radius_failure_message::make(
                "zemach_radius_coordinate (inner)", hi));
        const double val = lo.value + hi.value;
        if (val != 0.0)
            inner_error = std::max(
                inner_error,
                (lo.error_estimate + hi.error_estimate) / std::fabs(val));
        return four_pi * u * u * rho_e.rho(u) * val;
    };

    const quadrature_result q =
        integrate_finite(outer_integrand, 0.0, rmax, outer_opt);
    if (!q.converged)
        throw error(detail::radius_failure_message::make(
            "zemach_radius_coordinate (outer)", q));

    const double err =
        q.error_estimate + inner_error * std::fabs(q.value);
    return {measurement(q.value, err, unit::fm), zemach_method::coordinate,
            err, std::move(model_id)};
}

inline zemach_result zemach_radius_coordinate(const form_factor_model& model,
                                              const constant_set& set,
                                              double tol = 1e-10,
                                              std::string model_id = {}) {
    validate_model(model);
    const density_profile rho_e = density(model, ff_side::electric, set);
    const density_profile rho_m = density(model, ff_side::magnetic, set);
    return zemach_radius_coordinate_densities(rho_e, rho_m, tol,
                                              std::move(model_id));
}

// Closed form for the self-convolution of two identical exponential
// densities: R_p = (35/8) * hbar_c / Lambda (derivation in docs/theory.md).
inline zemach_result zemach_radius_dipole_analytic(double lambda2,
                                                   const constant_set& set,
                                                   std::string model_id = {}) {
    if (!(lambda2 > 0.0))
        throw model_error("zemach_radius_dipole_analytic: lambda2 must be positive");
    const double hbar_c_gev_fm = set.value("hbar_c") * 1e-3;
    const double r = (35.0 / 8.0) * hbar_c_gev_fm / std::sqrt(lambda2);
    return {measurement(r, 0.0, unit::fm), zemach_method::analytic, 0.0,
            std::move(model_id)};
}

// delta^Zemach = -2 alpha m_lp R_p, with the reduced mass expressed in
// fm^-1 through hbar_c. Uncertainty propagated from R_p alone (linear).
inline measurement delta_zemach(const measurement& r_p, const atom_spec& atom,
                                const constant_set& set) {
    if (r_p.u != unit::fm)
        throw unit_error("delta_zemach: R_p must carry the fm unit tag");
    if (r_p.value < 0.0)
        throw error("delta_zemach: R_p must be non-negative");
    const double coupling = 2.0 * set.value("alpha") *
                            atom.reduced_mass.value / set.value("hbar_c");
    return {-coupling * r_p.value, coupling * r_p.sigma, unit::dimensionless};
}

// The fm^-1 coupling 2 alpha m_lp appearing in both delta_zemach and the
// extraction formula, with its (tiny) constants-driven uncertainty.
inline measurement zemach_coupling(const atom_spec& atom,
                                   const constant_set& set) {
    const measurement alpha = set.meas("alpha");
    const double hbar_c = set.value("hbar_c");
    const double c = 2.0 * alpha.value * atom.reduced_mass.value / hbar_c;
    const double rel = std::hypot(alpha.relative_sigma(),
                                  atom.reduced_mass.relative_sigma());
    return {c, c * rel, unit::inverse_fm};
}

} // namespace zemach

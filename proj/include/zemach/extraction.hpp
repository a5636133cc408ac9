#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "zemach/budget.hpp"
#include "zemach/constants.hpp"
#include "zemach/errors.hpp"
#include "zemach/measurement.hpp"
#include "zemach/radius.hpp"

namespace zemach {

// Everything needed to invert the budget for R_p: the measured splitting
// and the four non-zemach corrections (zemach is the unknown).
struct extraction_input {
    atom_spec atom;
    measurement exp_hfs; // any energy unit
    std::vector<correction_term> corrections; // qed, recoil, pol, hvp

    extraction_input(atom_spec a, measurement e,
                     std::vector<correction_term> c)
        : atom(std::move(a)), exp_hfs(e), corrections(std::move(c)) {
        if (!is_energy(exp_hfs.u))
            throw unit_error("extraction_input: exp_hfs must be an energy");
        std::array<int, 5> count{};
        for (const auto& t : corrections)
            ++count[static_cast<size_t>(t.name)];
        if (count[static_cast<size_t>(term_name::zemach)] != 0)
            throw extraction_error(
                "extraction_input: the zemach term is the unknown and must "
                "not be supplied");
        for (term_name n : {term_name::qed, term_name::recoil, term_name::pol,
                            term_name::hvp})
            if (count[static_cast<size_t>(n)] != 1)
                throw extraction_error(
                    "extraction_input: exactly one \"" +
                    std::string(term_label(n)) + "\" term is required");
    }

    const correction_term& term(term_name n) const {
        for (const auto& t : corrections)
            if (t.name == n) return t;
        throw extraction_error("extraction_input: missing term");
    }
};

// Relative uncertainty of E^F coming from the constants alone.
inline double fermi_relative_sigma(const atom_spec& atom,
                                   const constant_set& set) {
    const measurement f = fermi_energy(atom, set);
    return f.relative_sigma();
}

struct uncertainty_component {
    std::string source;
    double sigma_fm;
    double ppm; // contribution expressed as ppm of E^F
};

struct extraction_result {
    measurement radius;      // fm
    double delta_zemach;     // the extracted dimensionless correction
    double ratio_minus_one;  // exp/E^F - 1
    measurement fermi;       // E^F in the experiment's unit family
    measurement coupling;    // 2 alpha m_lp in fm^-1
    std::vector<uncertainty_component> breakdown;
};

// R_p = -(exp/E^F - 1 - d_qed - d_recoil - d_pol - d_hvp) / (2 alpha m_lp),
// uncertainty by linear propagation over the experiment, the constants in
// E^F, the four correction terms, and the coupling (all independent).
inline extraction_result extract_zemach_radius(const extraction_input& input,
                                               const constant_set& set) {
    const measurement fermi_native = fermi_energy(input.atom, set);
    const measurement exp_local = convert(input.exp_hfs, fermi_native.u, set);
    const measurement coupling = zemach_coupling(input.atom, set);
    const double c = coupling.value;

    const double ratio = exp_local.value / fermi_native.value;
    const double d_qed = input.term(term_name::qed).value.value;
    const double d_rec = input.term(term_name::recoil).value.value;
    const double d_pol = input.term(term_name::pol).value.value;
    const double d_hvp = input.term(term_name::hvp).value.value;

    const double delta_z = ratio - 1.0 - d_qed - d_rec - d_pol - d_hvp;
    const double r_p = -delta_z / c;

    if (r_p < 0.0) {
        char buf[360];
        std::snprintf(buf, sizeof(buf),
                      "extract_zemach_radius: negative radius %.6g fm from "
                      "exp/E^F-1 = %.12g, qed = %.12g, recoil = %.12g, "
                      "pol = %.12g, hvp = %.12g (residual delta_zemach = "
                      "%.12g must be negative)",
                      r_p, ratio - 1.0, d_qed, d_rec, d_pol, d_hvp, delta_z);
        throw extraction_error(buf);
    }

    // per-source sigmas in fm
    std::vector<uncertainty_component> parts;
    auto add = [&](std::string name, double sigma_dimensionless) {
        parts.push_back({std::move(name), sigma_dimensionless / c,
                         sigma_dimensionless * 1e6});
    };
    add("exp_hfs", exp_local.sigma / fermi_native.value);
    add("fermi_constants", ratio * fermi_native.relative_sigma());
    add("qed", input.term(term_name::qed).value.sigma);
    add("recoil", input.term(term_name::recoil).value.sigma);
    add("pol", input.term(term_name::pol).value.sigma);
    add("hvp", input.term(term_name::hvp).value.sigma);
    parts.push_back({"coupling", std::fabs(r_p) * coupling.relative_sigma(),
                     std::fabs(delta_z) * coupling.relative_sigma() * 1e6});

    double var = 0.0;
    for (const auto& p : parts) var += p.sigma_fm * p.sigma_fm;

    extraction_result out{measurement(r_p, std::sqrt(var), unit::fm),
                          delta_z,
                          ratio - 1.0,
                          fermi_native,
                          coupling,
                          std::move(parts)};
    return out;
}

namespace detail {

// Deterministic standard-normal stream: mt19937_64 bits mapped to (0,1)
// doubles by (x >> 11) * 2^-53, fed through the Box-Muller transform.
// Documented algorithm identifier: "mt19937_64/box-muller/v1".
class normal_stream {
  public:
    explicit normal_stream(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double m = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi * u2;
        spare_ = m * std::sin(a);
        have_spare_ = true;
        return m * std::cos(a);
    }

  private:
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace detail

struct monte_carlo_result {
    measurement radius;       // sample mean and standard deviation, fm
    long samples = 0;
    long failed_draws = 0;    // draws yielding a negative radius
    double sigma_standard_error = 0.0; // MC error of the sigma estimate
    std::vector<double> draws; // per-sample radii, in draw order
};

// Draws every uncertain input from an independent normal distribution,
// evaluates the extraction formula per draw, and returns the sample mean
// and standard deviation. Same seed + same sample count => same result.
inline monte_carlo_result propagate_monte_carlo(const extraction_input& input,
                                                const constant_set& set,
                                                long samples,
                                                std::uint64_t seed) {
    if (samples < 1000)
        throw extraction_error(
            "propagate_monte_carlo: at least 1000 samples are required");

    const measurement fermi_native = fermi_energy(input.atom, set);
    const measurement exp_local = convert(input.exp_hfs, fermi_native.u, set);
    const measurement coupling = zemach_coupling(input.atom, set);

    const double f_rel = fermi_native.relative_sigma();
    const double c_rel = coupling.relative_sigma();
    const double d_qed = input.term(term_name::qed).value.value;
    const double s_qed = input.term(term_name::qed).value.sigma;
    const double d_rec = input.term(term_name::recoil).value.value;
    const double s_rec = input.term(term_name::recoil).value.sigma;
    const double d_pol = input.term(term_name::pol).value.value;
    const double s_pol = input.term(term_name::pol).value.sigma;
    const double d_hvp = input.term(term_name::hvp).value.value;
    const double s_hvp = input.term(term_name::hvp).value.sigma;

    detail::normal_stream rng(seed);
    std::vector<double> draws;
    draws.reserve(static_cast<size_t>(samples));
    long failed = 0;

    for (long i = 0; i < samples; ++i) {
        const double exp_v = exp_local.value + exp_local.sigma * rng.next();
        const double f_v = fermi_native.value * (1.0 + f_rel * rng.next());
        const double c_v = coupling.value * (1.0 + c_rel * rng.next());
        const double qed_v = d_qed + s_qed * rng.next();
        const double rec_v = d_rec + s_rec * rng.next();
        const double pol_v = d_pol + s_pol * rng.next();
        const double hvp_v = d_hvp + s_hvp * rng.next();
        const double delta_z =
            exp_v / f_v - 1.0 - qed_v - rec_v - pol_v - hvp_v;
        const double r = -delta_z / c_v;
        if (r < 0.0) ++failed;
        draws.push_back(r);
    }

    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (double d : draws) var += (d - mean) * (d - mean);
    var /= static_cast<double>(samples - 1);
    const double sd = std::sqrt(var);

    monte_carlo_result out;
    out.radius = measurement(mean, sd, unit::fm);
    out.samples = samples;
    out.failed_draws = failed;
    out.sigma_standard_error =
        sd / std::sqrt(2.0 * static_cast<double>(samples - 1));
    out.draws = std::move(draws);
    return out;
}

struct precision_plan {
    double target_relative_rp = 0.0;
    double required_exp_error_ppm = 0.0; // allowed experimental error
    double required_pol_uncertainty = 0.0; // pol sigma for any experiment to work
    bool feasible = false;
    double theory_only_sigma_fm = 0.0; // radius sigma with a perfect experiment
};

// Default "other theory" uncertainties (qed, recoil, hvp) per atom.
inline std::array<double, 3> planner_theory_sigmas(const atom_spec& atom) {
    if (atom.l == lepton::electron) return {1e-9, 1e-8, 1e-9};
    return {1e-6, 1e-6, 2e-6};
}

// Inverts the linear propagation: the experimental error allowance is what
// remains of the target radius budget after the theory terms are spent.
inline precision_plan plan_precision(const atom_spec& atom,
                                     double target_relative_rp,
                                     double pol_uncertainty,
                                     const constant_set& set,
                                     const measurement& r_p_assumed) {
    if (!(target_relative_rp > 0.0))
        throw extraction_error("plan_precision: target must be positive");
    if (r_p_assumed.u != unit::fm || !(r_p_assumed.value > 0.0))
        throw extraction_error("plan_precision: R_p_assumed must be positive "
                               "and in fm");

    const double c = zemach_coupling(atom, set).value;
    const auto others = planner_theory_sigmas(atom);
    double others2 = 0.0;
    for (double s : others) others2 += s * s;

    precision_plan plan;
    plan.target_relative_rp = target_relative_rp;

    if (std::isinf(target_relative_rp)) {
        plan.feasible = true;
        plan.required_exp_error_ppm =
            std::numeric_limits<double>::infinity();
        plan.required_pol_uncertainty =
            std::numeric_limits<double>::infinity();
        return plan;
    }

    const double budget = target_relative_rp * r_p_assumed.value * c;
    const double budget2 = budget * budget;
    plan.required_pol_uncertainty =
        std::sqrt(std::max(0.0, budget2 - others2));
    plan.theory_only_sigma_fm =
        std::sqrt(others2 + pol_uncertainty * pol_uncertainty) / c;

    const double exp2 = budget2 - others2 - pol_uncertainty * pol_uncertainty;
    if (exp2 > 0.0) {
        plan.feasible = true;
        plan.required_exp_error_ppm = std::sqrt(exp2) * 1e6;
    } else {
        plan.feasible = false;
        plan.required_exp_error_ppm = 0.0;
    }
    return plan;
}

} // namespace zemach

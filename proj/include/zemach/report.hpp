#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "zemach/budget.hpp"
#include "zemach/constants.hpp"
#include "zemach/extraction.hpp"
#include "zemach/formfactors.hpp"
#include "zemach/radius.hpp"

namespace zemach {

using ordered_json = nlohmann::ordered_json;

namespace detail {

template <class... Args>
std::string strf(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return std::string(buf);
}

inline ordered_json measurement_json(const measurement& m) {
    return ordered_json{{"value", m.value},
                        {"sigma", m.sigma},
                        {"unit", unit_name(m.u)}};
}

} // namespace detail

// ---------------------------------------------------------------- budget

inline ordered_json budget_json(const hfs_budget& b, const constant_set& set) {
    ordered_json j;
    j["schema"] = "hfs-budget/1";
    j["constants"] = set.version();
    j["atom"] = atom_name(b.atom.l);
    j["fermi_energy"] = detail::measurement_json(b.fermi);
    ordered_json terms = ordered_json::array();
    double sum = 0.0;
    for (const auto& t : b.terms) {
        sum += t.value.value;
        terms.push_back(ordered_json{{"name", term_label(t.name)},
                                     {"value", t.value.value},
                                     {"sigma", t.value.sigma},
                                     {"provenance", provenance_label(t.prov)},
                                     {"citation", t.citation}});
    }
    j["terms"] = std::move(terms);
    j["sum_of_corrections"] = sum;
    j["uncertainty_mode"] =
        b.linear_sum_uncertainty ? "linear-sum" : "quadrature";
    j["total"] = detail::measurement_json(b.total);
    ordered_json eq;
    const measurement ev = convert(b.total, unit::eV, set);
    eq["eV"] = ev.value;
    if (b.atom.l == lepton::electron) {
        eq["MHz"] = convert(b.total, unit::MHz, set).value;
    } else {
        eq["Hz"] = convert(b.total, unit::Hz, set).value;
        eq["wavelength_um"] = convert(b.total, unit::micrometre, set).value;
    }
    j["equivalent"] = std::move(eq);
    return j;
}

inline std::string budget_table(const hfs_budget& b, const constant_set& set) {
    using detail::strf;
    std::string out;
    out += strf("HFS budget for %s  (constants: %s)\n",
                atom_name(b.atom.l).c_str(), set.version().c_str());
    out += strf("  Fermi energy  %.12g +- %.3g %s\n", b.fermi.value,
                b.fermi.sigma, unit_name(b.fermi.u).c_str());
    out += "\n";
    out += strf("  %-8s %16s %12s %-12s %s\n", "term", "value", "sigma",
                "provenance", "citation");
    for (const auto& t : b.terms)
        out += strf("  %-8s %16.9e %12.3e %-12s %s\n",
                    std::string(term_label(t.name)).c_str(), t.value.value,
                    t.value.sigma, provenance_label(t.prov).c_str(),
                    t.citation.c_str());
    out += "\n";
    out += strf("  total         %.12g +- %.3g %s  (%s uncertainty)\n",
                b.total.value, b.total.sigma,
                unit_name(b.total.u).c_str(),
                b.linear_sum_uncertainty ? "linear-sum" : "quadrature");
    const measurement ev = convert(b.total, unit::eV, set);
    if (b.atom.l == lepton::electron) {
        const measurement mhz = convert(b.total, unit::MHz, set);
        out += strf("  equivalent    %.10g MHz, %.10g eV\n", mhz.value,
                    ev.value);
    } else {
        const measurement hz = convert(b.total, unit::Hz, set);
        const measurement um = convert(b.total, unit::micrometre, set);
        out += strf("  equivalent    %.10g Hz, %.10g eV, wavelength %.6g um\n",
                    hz.value, ev.value, um.value);
    }
    return out;
}

// ---------------------------------------------------------------- radius

inline ordered_json radius_json(const std::vector<zemach_result>& results,
                                const loaded_model& model,
                                const constant_set& set) {
    ordered_json j;
    j["schema"] = "zemach-radius/1";
    j["constants"] = set.version();
    j["model"] = ordered_json{{"id", model.id}, {"citation", model.citation}};
    ordered_json arr = ordered_json::array();
    for (const auto& r : results)
        arr.push_back(ordered_json{
            {"method", method_name(r.method)},
            {"radius_fm", r.radius.value},
            {"quadrature_error", r.quadrature_error},
            {"beyond_validity_reached", r.beyond_validity_reached}});
    j["results"] = std::move(arr);
    return j;
}

inline std::string radius_table(const std::vector<zemach_result>& results,
                                const loaded_model& model,
                                const constant_set& set) {
    using detail::strf;
    std::string out;
    out += strf("Zemach radius, model \"%s\"  (constants: %s)\n",
                model.id.c_str(), set.version().c_str());
    if (!model.citation.empty())
        out += strf("  citation: %s\n", model.citation.c_str());
    out += strf("  %-12s %14s %14s\n", "method", "radius [fm]",
                "quad. error");
    for (const auto& r : results) {
        out += strf("  %-12s %14.10f %14.3e%s\n",
                    method_name(r.method).c_str(), r.radius.value,
                    r.quadrature_error,
                    r.beyond_validity_reached
                        ? "  (ratio floor reached; tail dropped)"
                        : "");
    }
    return out;
}

// ------------------------------------------------------------- extraction

inline ordered_json extraction_json(const extraction_result& r,
                                    const extraction_input& input,
                                    const constant_set& set,
                                    const monte_carlo_result* mc = nullptr) {
    ordered_json j;
    j["schema"] = "hfs-extraction/1";
    j["constants"] = set.version();
    j["atom"] = atom_name(input.atom.l);
    j["exp_hfs"] = detail::measurement_json(input.exp_hfs);
    ordered_json corr = ordered_json::array();
    for (const auto& t : input.corrections)
        corr.push_back(ordered_json{{"name", term_label(t.name)},
                                    {"value", t.value.value},
                                    {"sigma", t.value.sigma},
                                    {"provenance", provenance_label(t.prov)},
                                    {"citation", t.citation}});
    j["corrections"] = std::move(corr);
    j["fermi_energy"] = detail::measurement_json(r.fermi);
    j["coupling"] = detail::measurement_json(r.coupling);
    j["ratio_minus_one"] = r.ratio_minus_one;
    j["delta_zemach"] = r.delta_zemach;
    j["radius"] = detail::measurement_json(r.radius);
    ordered_json parts = ordered_json::array();
    for (const auto& p : r.breakdown)
        parts.push_back(ordered_json{{"source", p.source},
                                     {"sigma_fm", p.sigma_fm},
                                     {"ppm_of_fermi", p.ppm}});
    j["uncertainty_breakdown"] = std::move(parts);
    if (mc) {
        j["monte_carlo"] =
            ordered_json{{"samples", mc->samples},
                         {"mean_fm", mc->radius.value},
                         {"sigma_fm", mc->radius.sigma},
                         {"sigma_standard_error", mc->sigma_standard_error},
                         {"negative_radius_draws", mc->failed_draws}};
    }
    return j;
}

inline std::string extraction_table(const extraction_result& r,
                                    const extraction_input& input,
                                    const constant_set& set,
                                    const monte_carlo_result* mc = nullptr) {
    using detail::strf;
    std::string out;
    out += strf("Zemach radius extraction for %s  (constants: %s)\n",
                atom_name(input.atom.l).c_str(), set.version().c_str());
    out += strf("  experimental HFS   %.12g +- %.3g %s\n",
                input.exp_hfs.value, input.exp_hfs.sigma,
                unit_name(input.exp_hfs.u).c_str());
    out += strf("  Fermi energy       %.12g %s\n", r.fermi.value,
                unit_name(r.fermi.u).c_str());
    out += strf("  exp/E^F - 1        %.12g\n", r.ratio_minus_one);
    for (const auto& t : input.corrections)
        out += strf("  delta_%-8s     %14.6e +- %.3e  (%s)\n",
                    std::string(term_label(t.name)).c_str(), t.value.value,
                    t.value.sigma, provenance_label(t.prov).c_str());
    out += strf("  delta_zemach       %14.6e  (extracted)\n", r.delta_zemach);
    out += strf("  coupling 2*a*m_lp  %.10g %s\n", r.coupling.value,
                unit_name(r.coupling.u).c_str());
    out += "\n";
    out += strf("  R_p = %.8f +- %.8f fm\n", r.radius.value, r.radius.sigma);
    out += "\n";
    out += strf("  %-18s %12s %14s\n", "uncertainty source", "sigma [fm]",
                "ppm of E^F");
    for (const auto& p : r.breakdown)
        out += strf("  %-18s %12.6f %14.6f\n", p.source.c_str(), p.sigma_fm,
                    p.ppm);
    if (mc) {
        out += "\n";
        out += strf("  Monte Carlo (%ld samples): R_p = %.8f +- %.8f fm "
                    "(sigma SE %.2e, %ld negative draws)\n",
                    mc->samples, mc->radius.value, mc->radius.sigma,
                    mc->sigma_standard_error, mc->failed_draws);
    }
    return out;
}

// -------------------------------------------------------------- planning

inline ordered_json plan_json(const precision_plan& p, const atom_spec& atom,
                              const measurement& rp_assumed, double pol_sigma,
                              const constant_set& set) {
    const auto others = planner_theory_sigmas(atom);
    ordered_json j;
    j["schema"] = "precision-plan/1";
    j["constants"] = set.version();
    j["atom"] = atom_name(atom.l);
    j["assumed_rp_fm"] = rp_assumed.value;
    j["target_relative_rp"] = p.target_relative_rp;
    j["pol_sigma"] = pol_sigma;
    j["theory_sigmas"] = ordered_json{
        {"qed", others[0]}, {"recoil", others[1]}, {"hvp", others[2]}};
    j["feasible"] = p.feasible;
    j["required_exp_error_ppm"] = p.required_exp_error_ppm;
    j["required_pol_uncertainty"] = p.required_pol_uncertainty;
    j["theory_only_sigma_fm"] = p.theory_only_sigma_fm;
    return j;
}

inline std::string plan_table(const precision_plan& p, const atom_spec& atom,
                              const measurement& rp_assumed, double pol_sigma,
                              const constant_set& set) {
    using detail::strf;
    std::string out;
    out += strf("Precision plan for %s  (constants: %s)\n",
                atom_name(atom.l).c_str(), set.version().c_str());
    out += strf("  assumed R_p             %.6g fm\n", rp_assumed.value);
    out += strf("  target sigma(R_p)/R_p   %.6g\n", p.target_relative_rp);
    out += strf("  polarizability sigma    %.6g\n", pol_sigma);
    out += strf("  theory-only sigma(R_p)  %.6g fm\n", p.theory_only_sigma_fm);
    if (p.feasible) {
        out += strf("  FEASIBLE: experimental error allowance %.6g ppm of "
                    "E^F\n",
                    p.required_exp_error_ppm);
    } else {
        out += strf("  NOT FEASIBLE at this polarizability uncertainty; a "
                    "polarizability sigma below %.6g is required before any "
                    "experiment can reach the target\n",
                    p.required_pol_uncertainty);
    }
    return out;
}

// ------------------------------------------------------------------ CSV

inline std::string monte_carlo_csv(const monte_carlo_result& mc) {
    std::string out = "index,radius_fm\n";
    for (size_t i = 0; i < mc.draws.size(); ++i)
        out += detail::strf("%zu,%.17g\n", i, mc.draws[i]);
    return out;
}

} // namespace zemach

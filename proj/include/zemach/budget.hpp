#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zemach/constants.hpp"
#include "zemach/errors.hpp"
#include "zemach/measurement.hpp"
#include "zemach/radius.hpp"

namespace zemach {

enum class term_name { qed, zemach, recoil, pol, hvp };

inline std::string term_label(term_name t) {
    switch (t) {
        case term_name::qed:    return "qed";
        case term_name::zemach: return "zemach";
        case term_name::recoil: return "recoil";
        case term_name::pol:    return "pol";
        case term_name::hvp:    return "hvp";
    }
    return "?";
}

inline term_name parse_term_name(std::string_view s) {
    if (s == "qed")    return term_name::qed;
    if (s == "zemach") return term_name::zemach;
    if (s == "recoil") return term_name::recoil;
    if (s == "pol")    return term_name::pol;
    if (s == "hvp")    return term_name::hvp;
    throw error("unknown correction term \"" + std::string(s) +
                "\" (known: qed, zemach, recoil, pol, hvp)");
}

enum class provenance { computed, paper_datum, estimate, user_input };

inline std::string provenance_label(provenance p) {
    switch (p) {
        case provenance::computed:    return "computed";
        case provenance::paper_datum: return "paper-datum";
        case provenance::estimate:    return "estimate";
        case provenance::user_input:  return "user-input";
    }
    return "?";
}

// One relative correction delta to the hyperfine splitting.
struct correction_term {
    term_name name;
    measurement value; // dimensionless, signed
    provenance prov;
    std::string citation;

    correction_term(term_name n, measurement v, provenance p, std::string cite)
        : name(n), value(v), prov(p), citation(std::move(cite)) {
        if (v.u != unit::dimensionless)
            throw unit_error("correction_term: value must be dimensionless");
        if (p == provenance::computed &&
            !(n == term_name::qed || n == term_name::zemach))
            throw error("correction_term: only qed and zemach are computed "
                        "by this library");
    }
};

// E^F = (8/3) alpha^4 mu_p m_l^2 m_p^2 / (m_l + m_p)^3, everything in MeV;
// returned in Hz for hydrogen and meV for muonic hydrogen. Constant
// uncertainties are propagated linearly through the log-derivatives.
inline measurement fermi_energy(const atom_spec& atom,
                                const constant_set& set) {
    const measurement alpha = set.meas("alpha");
    const measurement mu_p = set.meas("mu_p");
    const measurement mp = set.meas("m_p");
    const measurement& ml = atom.lepton_mass;

    const double s = ml.value + mp.value;
    const double e_mev = (8.0 / 3.0) * std::pow(alpha.value, 4) * mu_p.value *
                         ml.value * ml.value * mp.value * mp.value /
                         (s * s * s);

    // dlnE/dln(ml) = 2 - 3 ml/s, dlnE/dln(mp) = 2 - 3 mp/s
    const double dml = 2.0 - 3.0 * ml.value / s;
    const double dmp = 2.0 - 3.0 * mp.value / s;
    const double rel =
        std::hypot(std::hypot(4.0 * alpha.relative_sigma(),
                              mu_p.relative_sigma()),
                   std::hypot(dml * ml.relative_sigma(),
                              dmp * mp.relative_sigma()));

    const measurement e(e_mev, e_mev * rel, unit::MeV);
    return convert(e, atom.l == lepton::electron ? unit::Hz : unit::meV, set);
}

// The point-proton QED series with the lepton's anomaly:
//   a_l + (3/2) alpha^2 + alpha^2 (ln 2 - 5/2)
//   - (8 alpha^3 / 3 pi) ln(alpha) (ln(alpha) - ln 4 + 281/480)
//   + 18.984 alpha^3 / pi
struct qed_terms {
    double anomaly;
    double breit;      // (3/2) alpha^2
    double binding;    // alpha^2 (ln 2 - 5/2)
    double log2_term;  // the alpha^3 ln^2-containing piece
    double numeric;    // 18.984 alpha^3 / pi
    double total() const {
        return anomaly + breit + binding + log2_term + numeric;
    }
};

inline qed_terms delta_qed_terms(const atom_spec& atom,
                                 const constant_set& set) {
    const double a = set.value("alpha");
    const double al = atom.lepton_anomaly.value;
    const double a2 = a * a;
    const double a3 = a2 * a;
    const double ln_a = std::log(a);
    qed_terms t;
    t.anomaly = al;
    t.breit = 1.5 * a2;
    t.binding = a2 * (std::log(2.0) - 2.5);
    t.log2_term = -(8.0 * a3 / (3.0 * detail::pi)) * ln_a *
                  (ln_a - std::log(4.0) + 281.0 / 480.0);
    t.numeric = 18.984 * a3 / detail::pi;
    return t;
}

inline correction_term delta_qed(const atom_spec& atom,
                                 const constant_set& set) {
    const qed_terms t = delta_qed_terms(atom, set);
    const bool muonic = atom.l == lepton::muon;
    // stated uncertainty bound: 1e-9 for hydrogen, 1e-6 for muonic hydrogen
    const double sigma = muonic ? 1e-6 : 1e-9;
    return correction_term(
        term_name::qed, measurement(t.total(), sigma, unit::dimensionless),
        muonic ? provenance::estimate : provenance::computed,
        muonic ? "point-proton QED series reused with a_mu in place of a_e "
                 "(no published explicit muonic expression)"
               : "point-proton QED series through order alpha^3");
}

// Hydrogen: input datum 5.68 ppm. Muonic: the leading-log estimate
// (3 alpha/pi) (m_mu/m_p) ln(m_p/m_mu), evaluated from the pinned masses.
inline correction_term recoil_correction(const atom_spec& atom,
                                         const constant_set& set) {
    if (atom.l == lepton::electron)
        return correction_term(
            term_name::recoil, measurement(5.68e-6, 1e-8, unit::dimensionless),
            provenance::paper_datum,
            "hydrogen recoil correction, 5.68 ppm");
    const double a = set.value("alpha");
    const double x = atom.lepton_mass.value / set.value("m_p");
    const double v = -(3.0 * a / detail::pi) * x * std::log(x); // ln x < 0
    return correction_term(term_name::recoil,
                           measurement(v, 1e-6, unit::dimensionless),
                           provenance::estimate,
                           "leading-log recoil estimate "
                           "(3 alpha/pi)(m_mu/m_p) ln(m_p/m_mu)");
}

enum class pol_preset { text, table1 };

// Polarizability and hadronic-vacuum-polarization input data.
inline std::vector<correction_term>
default_corrections(const atom_spec& atom, pol_preset preset = pol_preset::text) {
    std::vector<correction_term> out;
    if (atom.l == lepton::electron) {
        const double pol = preset == pol_preset::table1 ? 1.4e-6 : 1.6e-6;
        out.emplace_back(term_name::pol,
                         measurement(pol, 0.6e-6, unit::dimensionless),
                         provenance::paper_datum,
                         "hydrogen proton-polarizability correction, "
                         "1.6(6) ppm from polarized structure functions");
        out.emplace_back(term_name::hvp,
                         measurement(1e-8, 1e-9, unit::dimensionless),
                         provenance::paper_datum,
                         "hydrogen hadronic vacuum polarization");
    } else {
        out.emplace_back(term_name::pol,
                         measurement(4.6e-4, 0.8e-4, unit::dimensionless),
                         provenance::paper_datum,
                         "muonic-hydrogen proton-polarizability correction, "
                         "(4.6 +- 0.8) x 10^-4");
        out.emplace_back(term_name::hvp,
                         measurement(2.0e-5, 2e-6, unit::dimensionless),
                         provenance::paper_datum,
                         "muonic-hydrogen hadronic vacuum polarization, "
                         "approximately 20 ppm");
    }
    return out;
}

// The four non-zemach terms (qed, recoil, pol, hvp) used by extraction.
inline std::vector<correction_term>
standard_corrections(const atom_spec& atom, const constant_set& set,
                     pol_preset preset = pol_preset::text) {
    std::vector<correction_term> out;
    out.push_back(delta_qed(atom, set));
    out.push_back(recoil_correction(atom, set));
    for (auto& t : default_corrections(atom, preset)) out.push_back(std::move(t));
    return out;
}

// Full per-atom error budget: E^F, the five correction terms, the total.
struct hfs_budget {
    atom_spec atom;
    measurement fermi;                  // Hz (hydrogen) or meV (muonic)
    std::vector<correction_term> terms; // qed, zemach, recoil, pol, hvp
    measurement total;                  // same unit as fermi
    bool linear_sum_uncertainty = false;

    // total = fermi * (1 + sum of terms), recomputed from the stored parts.
    measurement recompute_total() const {
        double s = 0.0;
        for (const auto& t : terms) s += t.value.value;
        const double v = fermi.value * (1.0 + s);
        double sigma;
        if (linear_sum_uncertainty) {
            double terms_sigma = 0.0;
            for (const auto& t : terms) terms_sigma += t.value.sigma;
            sigma = std::fabs(1.0 + s) * fermi.sigma +
                    std::fabs(fermi.value) * terms_sigma;
        } else {
            double q = std::fabs(1.0 + s) * fermi.sigma;
            q = q * q;
            for (const auto& t : terms) {
                const double c = fermi.value * t.value.sigma;
                q += c * c;
            }
            sigma = std::sqrt(q);
        }
        return {v, sigma, fermi.u};
    }
};

struct budget_override {
    term_name name;
    measurement value; // dimensionless
};

// Assembles the Eq.-6-style budget: computed qed and zemach terms, default
// recoil/pol/hvp, user overrides applied last (provenance = user_input).
inline hfs_budget assemble_budget(const atom_spec& atom,
                                  const measurement& r_p,
                                  const std::vector<budget_override>& overrides,
                                  const constant_set& set,
                                  pol_preset preset = pol_preset::text,
                                  bool linear_sum_uncertainty = false) {
    if (r_p.u != unit::fm)
        throw unit_error("assemble_budget: R_p must carry the fm unit tag");
    if (r_p.value < 0.0)
        throw error("assemble_budget: R_p must be non-negative");

    std::vector<correction_term> terms;
    terms.push_back(delta_qed(atom, set));
    terms.emplace_back(term_name::zemach, delta_zemach(r_p, atom, set),
                       provenance::computed,
                       "delta_zemach = -2 alpha m_lp R_p");
    terms.push_back(recoil_correction(atom, set));
    for (auto& t : default_corrections(atom, preset)) terms.push_back(std::move(t));

    // apply overrides; duplicates rejected
    std::vector<bool> seen(5, false);
    for (const auto& o : overrides) {
        const auto idx = static_cast<size_t>(o.name);
        if (seen[idx])
            throw error("assemble_budget: duplicate override for term \"" +
                        std::string(term_label(o.name)) + "\"");
        seen[idx] = true;
        if (o.value.u != unit::dimensionless)
            throw unit_error("assemble_budget: overrides must be dimensionless");
        if (!(o.value.sigma >= 0.0))
            throw error("assemble_budget: negative uncertainty in override");
        for (auto& t : terms)
            if (t.name == o.name) {
                t.value = o.value;
                t.prov = provenance::user_input;
                t.citation = "user override";
            }
    }

    hfs_budget b{atom, fermi_energy(atom, set), std::move(terms),
                 measurement(), false};
    b.linear_sum_uncertainty = linear_sum_uncertainty;
    b.total = b.recompute_total();
    return b;
}

} // namespace zemach
